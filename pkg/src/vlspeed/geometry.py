"""Closed-form road kinematics for the two deployment layouts.

Maps time to vehicle pose (true distance D, along-road range R, incidence
angle theta, and arc angle beta on curved roads) for a detector placed at
the roadside. All angles are radians; degrees appear only at CLI
boundaries. Poses are pure functions of their inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, OutOfSegmentError

__all__ = [
    "StraightScenario",
    "CurvedScenario",
    "Pose",
    "straight_pose",
    "curved_pose",
    "segment_end",
]


@dataclass(frozen=True)
class StraightScenario:
    """Constant-speed approach along a straight road.

    d :  perpendicular offset between detector and the line of motion [m]
    r0:  range (along-road distance) when measurement starts [m]
    v :  vehicle speed [m/s]
    """

    d: float
    r0: float
    v: float

    def __post_init__(self):
        if not self.d > 0:
            raise DomainError(f"perpendicular offset d must be > 0, got {self.d}")
        if not self.r0 > 0:
            raise DomainError(f"initial range r0 must be > 0, got {self.r0}")
        if not self.v > 0:
            raise DomainError(f"speed v must be > 0, got {self.v}")


@dataclass(frozen=True)
class CurvedScenario:
    """Constant-angular-speed approach along a circular arc.

    r_c  : curvature radius of the road [m]
    w    : angular speed of the vehicle, v = w * r_c [rad/s]
    beta0: arc angle at measurement start, in (0, pi] [rad]
    r0   : longitudinal offset of the detector from the curve end [m]
    d0   : lateral offset of the detector from the curve end [m]
    """

    r_c: float
    w: float
    beta0: float
    r0: float = 0.0
    d0: float = 0.0

    def __post_init__(self):
        if not self.r_c > 0:
            raise DomainError(f"curvature radius r_c must be > 0, got {self.r_c}")
        if not self.w > 0:
            raise DomainError(f"angular speed w must be > 0, got {self.w}")
        if not 0 < self.beta0 <= math.pi:
            raise DomainError(f"beta0 must lie in (0, pi], got {self.beta0}")
        if self.r0 < 0 or self.d0 < 0:
            raise DomainError("detector offsets r0, d0 must be >= 0")

    @property
    def v(self) -> float:
        """Tangential vehicle speed [m/s]."""
        return self.w * self.r_c


@dataclass(frozen=True)
class Pose:
    """Vehicle pose as seen from the detector at time t.

    D is the true transmitter-detector distance, R the along-road range
    projection, theta the incidence angle between sight line and direction
    of motion. beta is the arc angle (curved roads only, else None).
    """

    t: float
    D: float
    R: float
    theta: float
    beta: float | None = None


def straight_pose(s: StraightScenario, t: float) -> Pose:
    """Pose on a straight road: R = r0 - v*t, D = hypot(d, R).

    Valid for 0 <= t <= r0/v (the vehicle has not passed the detector).
    """
    t_pass = s.r0 / s.v
    if not 0.0 <= t <= t_pass:
        raise OutOfSegmentError(
            f"t={t} s outside road segment [0, {t_pass}] s (vehicle passes detector)"
        )
    r = s.r0 - s.v * t
    if r < 0.0:  # only by rounding at t == t_pass
        r = 0.0
    d_total = math.hypot(s.d, r)
    theta = math.atan2(s.d, r)
    return Pose(t=t, D=d_total, R=r, theta=theta)


def curved_pose(s: CurvedScenario, t: float) -> Pose:
    """Pose on a curved road at arc angle beta = beta0 - w*t.

    R = r_c*sin(beta), lateral advance d_c = r_c*(1 - cos(beta)), and
    D = hypot(d_c + d0, R + r0). With zero detector offsets this reduces
    to the chord D = 2*r_c*sin(beta/2) and theta = beta/2. The lateral
    term is evaluated as 2*r_c*sin(beta/2)^2 so those identities hold to
    machine precision at small angles.
    """
    beta = s.beta0 - s.w * t
    if not 0.0 < beta <= math.pi:
        raise OutOfSegmentError(
            f"arc angle beta={beta} rad at t={t} s outside (0, pi] (vehicle past curve end)"
        )
    half_sin = math.sin(0.5 * beta)
    half_cos = math.cos(0.5 * beta)
    r = 2.0 * s.r_c * half_sin * half_cos  # r_c * sin(beta)
    d_c = 2.0 * s.r_c * half_sin * half_sin  # r_c * (1 - cos(beta))
    lateral = d_c + s.d0
    along = r + s.r0
    d_total = math.hypot(lateral, along)
    theta = math.atan2(lateral, along)
    return Pose(t=t, D=d_total, R=r, theta=theta, beta=beta)


def segment_end(s: StraightScenario | CurvedScenario) -> float:
    """Last valid pose time: detector crossing (straight) or curve end."""
    if isinstance(s, StraightScenario):
        return s.r0 / s.v
    if isinstance(s, CurvedScenario):
        return s.beta0 / s.w
    raise DomainError(f"unknown scenario type {type(s).__name__}")
