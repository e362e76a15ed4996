"""Cosine-effect limits of RF/laser Doppler speed detectors.

A detector aimed at angle theta off the direction of motion measures only
the radial velocity component, V_m = V_a * cos(theta). On a curved road
the geometry generalizes to

    V_m = V_a * sin(pi/2 - beta + atan2(d_o + r_c*(1 - cos(beta)),
                                        r_o + r_c*sin(beta))),

which collapses to V_a * cos(beta/2) when the detector sits exactly at the
curve end. These ideal, noiseless limits are the comparison curves for the
accuracy sweeps; baseline accuracy is 100 * V_m / V_a percent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "RadarGeometry",
    "radar_measured_straight",
    "radar_measured_curved",
    "radar_accuracy_straight",
    "radar_accuracy_curved",
]


@dataclass(frozen=True)
class RadarGeometry:
    """Detector aiming geometry; straight roads use theta only.

    Curved roads use beta/r_c plus the detector offsets d_o (lateral) and
    r0 (longitudinal) from the curve end.
    """

    theta: float = 0.0
    beta: float | None = None
    r_c: float | None = None
    d_o: float = 0.0
    r0: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= 0.5 * math.pi:
            raise DomainError(f"theta must lie in [0, pi/2], got {self.theta}")
        if self.beta is not None:
            if not 0.0 < self.beta <= math.pi:
                raise DomainError(f"beta must lie in (0, pi], got {self.beta}")
            if self.r_c is None or not self.r_c > 0:
                raise DomainError("curved geometry needs r_c > 0")


def radar_measured_straight(v_a: float, theta: float) -> float:
    """Measured speed v_a*cos(theta) for a straight-road geometry."""
    if not 0.0 <= theta <= 0.5 * math.pi:
        raise DomainError(f"theta must lie in [0, pi/2], got {theta}")
    return v_a * math.cos(theta)


def radar_measured_curved(v_a: float, g: RadarGeometry) -> float:
    """Measured speed on a curved road.

    The arctangent is evaluated with atan2, so a vanishing longitudinal
    term (r0 + r_c*sin(beta) = 0) needs no special casing.
    """
    if g.beta is None or g.r_c is None:
        raise DomainError("curved measurement needs beta and r_c")
    lateral = g.d_o + g.r_c * (1.0 - math.cos(g.beta))
    along = g.r0 + g.r_c * math.sin(g.beta)
    return v_a * math.sin(0.5 * math.pi - g.beta + math.atan2(lateral, along))


def radar_accuracy_straight(theta: float) -> float:
    """Ideal-detector accuracy 100*cos(theta) percent; independent of speed."""
    return 100.0 * radar_measured_straight(1.0, theta)


def radar_accuracy_curved(g: RadarGeometry) -> float:
    """Ideal-detector accuracy 100*V_m/V_a percent on a curved road."""
    return 100.0 * radar_measured_curved(1.0, g)
