"""Optical channel models: received power vs pose, ray-trace ingestion, fits.

Two power-distance models are provided. The Lambertian closed form weights
an inverse power law by the emitter's angular pattern,

    P(D, theta) = C * D**(-gamma) * cos(theta)**(n + 1),
    C = (n + 1) * A_R * P_t / (2*pi),

with the Lambertian order n fixed by the half-power semi-angle. The
log-distance form drops the angular factor entirely,

    P(D) = K * D**(-gamma),    P_dB = K_dB - 10*gamma*log10(D),

with (K_dB, gamma) fitted from ray-traced path-loss samples. Path loss is
stored as a positive dB number: loss = -10*log10(gain), gain = sum of
per-ray detected power fractions.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DomainError,
    EmptyInputError,
    EnergyError,
    TraceFormatError,
    UnderdeterminedError,
)
from .geometry import Pose

__all__ = [
    "SPEED_OF_LIGHT",
    "ModelValidityWarning",
    "LambertianParams",
    "LogDistanceParams",
    "RayRecord",
    "PathLossSample",
    "lambertian_order",
    "lambertian_power",
    "log_distance_power",
    "log_distance_path_loss_db",
    "curved_power",
    "integrate_cir",
    "fit_log_distance",
    "read_ray_file",
    "read_manifest",
    "path_loss_samples",
    "SIMULATED_CHANNEL_FIT",
    "LAMBERTIAN_CHANNEL_FIT",
]

SPEED_OF_LIGHT = 2.998e8  # m/s, used for per-ray propagation delays


class ModelValidityWarning(UserWarning):
    """Emitted when the log-distance model is evaluated below 1 m."""


def lambertian_order(phi_half: float) -> float:
    """Order n = -ln(2) / ln(cos(phi_half)) of the emission pattern.

    phi_half is the half-power semi-angle in radians, 0 < phi_half < pi/2.
    """
    if not 0.0 < phi_half < 0.5 * math.pi:
        raise DomainError(f"phi_half must lie in (0, pi/2), got {phi_half}")
    return -math.log(2.0) / math.log(math.cos(phi_half))


@dataclass(frozen=True)
class LambertianParams:
    """Lambertian emitter/detector parameters.

    phi_half: half-power semi-angle [rad]; n is derived from it.
    a_r     : detector aperture area [m^2]
    p_t     : transmitted optical power [W]
    gamma   : path-loss exponent
    fov     : receiver field of view [rad]; no light outside it
    """

    phi_half: float
    a_r: float
    p_t: float
    gamma: float
    fov: float
    n: float = field(init=False)
    c_factor: float = field(init=False)

    def __post_init__(self):
        n = lambertian_order(self.phi_half)  # validates phi_half
        if not self.a_r > 0:
            raise DomainError(f"aperture area a_r must be > 0, got {self.a_r}")
        if not self.p_t > 0:
            raise DomainError(f"transmit power p_t must be > 0, got {self.p_t}")
        if not self.gamma > 0:
            raise DomainError(f"path-loss exponent gamma must be > 0, got {self.gamma}")
        if not 0.0 < self.fov <= 0.5 * math.pi:
            raise DomainError(f"fov must lie in (0, pi/2], got {self.fov}")
        object.__setattr__(self, "n", n)
        object.__setattr__(
            self, "c_factor", (n + 1.0) * self.a_r * self.p_t / (2.0 * math.pi)
        )

    @classmethod
    def from_gain_db(
        cls,
        k_db: float,
        phi_half: float,
        gamma: float,
        fov: float,
        p_t: float = 1.0,
    ) -> "LambertianParams":
        """Build params whose on-axis constant C equals 10**(k_db/10).

        Used when the multiplicative constant is known only as a fitted
        gain; the aperture area is back-solved from it.
        """
        n = lambertian_order(phi_half)
        a_r = 2.0 * math.pi * 10.0 ** (k_db / 10.0) / ((n + 1.0) * p_t)
        return cls(phi_half=phi_half, a_r=a_r, p_t=p_t, gamma=gamma, fov=fov)


@dataclass(frozen=True)
class LogDistanceParams:
    """Log-distance power-law channel: P(D) = k_linear * D**(-gamma).

    k_db is the gain constant in dB; k_linear is its linear-scale twin and
    is the value actually used in computation. Construct via from_linear
    when an exact linear gain must be preserved.
    """

    k_db: float
    gamma: float
    k_linear: float | None = None

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError(f"path-loss exponent gamma must be > 0, got {self.gamma}")
        if self.k_linear is None:
            object.__setattr__(self, "k_linear", 10.0 ** (self.k_db / 10.0))
        elif not self.k_linear > 0:
            raise DomainError(f"k_linear must be > 0, got {self.k_linear}")

    @classmethod
    def from_linear(cls, k_linear: float, gamma: float) -> "LogDistanceParams":
        if not k_linear > 0:
            raise DomainError(f"k_linear must be > 0, got {k_linear}")
        return cls(k_db=10.0 * math.log10(k_linear), gamma=gamma, k_linear=k_linear)


# Bundled fit constants for the packaged reference road scene (gain dB, exponent).
SIMULATED_CHANNEL_FIT = LogDistanceParams(k_db=-49.32, gamma=1.21)
LAMBERTIAN_CHANNEL_FIT = LogDistanceParams(k_db=-41.39, gamma=1.673)


def lambertian_power(p: LambertianParams, pose: Pose) -> float:
    """Received power [W] at the given pose under the Lambertian model.

    Returns 0 when the incidence angle is outside the field of view.
    Transmitter and receiver are assumed at equal heights, so the
    irradiance angle equals the incidence angle.
    """
    if pose.D <= 0.0:
        raise DomainError(f"distance D must be > 0, got {pose.D} (singular at 0)")
    if pose.theta > p.fov:
        return 0.0
    return p.c_factor * pose.D ** (-p.gamma) * math.cos(pose.theta) ** (p.n + 1.0)


def log_distance_power(p: LogDistanceParams, distance):
    """Received power [W] at the given distance(s) under the power law.

    Accepts a scalar or array. Valid for distances >= 1 m; smaller
    distances are still evaluated but flagged with ModelValidityWarning.
    """
    d = np.asarray(distance, dtype=float)
    if np.any(d <= 0.0):
        raise DomainError("distance must be > 0 for the log-distance model")
    if np.any(d < 1.0):
        warnings.warn(
            "log-distance model evaluated below its 1 m validity bound",
            ModelValidityWarning,
            stacklevel=2,
        )
    out = p.k_linear * d ** (-p.gamma)
    return out if out.ndim else float(out)


def log_distance_path_loss_db(p: LogDistanceParams, distance) -> float:
    """Positive path loss in dB: -k_db + 10*gamma*log10(D)."""
    d = np.asarray(distance, dtype=float)
    if np.any(d <= 0.0):
        raise DomainError("distance must be > 0")
    out = -p.k_db + 10.0 * p.gamma * np.log10(d)
    return out if out.ndim else float(out)


def curved_power(lam: LambertianParams, k: LogDistanceParams, r_c: float, beta):
    """Received power [W] on a curved road with the detector at the curve end.

    P(beta) = K * cos(beta/2)**(n+1) / (2*r_c*sin(beta/2))**gamma, with
    K the linear gain of `k`, n from `lam`, strictly decreasing in beta.
    Accepts a scalar or array beta in (0, pi].
    """
    if not r_c > 0:
        raise DomainError(f"curvature radius r_c must be > 0, got {r_c}")
    b = np.asarray(beta, dtype=float)
    if np.any(b <= 0.0) or np.any(b > math.pi):
        raise DomainError("beta must lie in (0, pi] (distance collapses at 0)")
    half = 0.5 * b
    out = k.k_linear * np.cos(half) ** (lam.n + 1.0) / (2.0 * r_c * np.sin(half)) ** k.gamma
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class RayRecord:
    """One ray arriving at the detector: detected power and path length."""

    power: float
    path_length: float

    def __post_init__(self):
        if self.power < 0:
            raise DomainError(f"ray power must be >= 0, got {self.power}")
        if not self.path_length > 0:
            raise DomainError(f"ray path length must be > 0, got {self.path_length}")

    @property
    def delay_s(self) -> float:
        """Propagation delay of this ray [s]."""
        return self.path_length / SPEED_OF_LIGHT


@dataclass(frozen=True)
class PathLossSample:
    """One (distance, positive path loss dB) point for curve fitting."""

    distance: float
    pl_db: float

    def __post_init__(self):
        if not self.distance > 0:
            raise DomainError(f"distance must be > 0, got {self.distance}")


def integrate_cir(rays: Sequence[RayRecord]) -> float:
    """Total channel gain: sum of per-ray detected power fractions.

    For unit transmit power the gain is the detected fraction; the loss in
    dB is -10*log10(gain). Per-ray delays are preserved on the records but
    do not enter the integral.
    """
    if len(rays) == 0:
        raise EmptyInputError("cannot integrate an empty ray set")
    gain = float(sum(r.power for r in rays))
    if gain > 1.0 + 1e-12:
        raise EnergyError(
            f"ray powers sum to {gain}, exceeding unit transmit power"
        )
    return gain


def fit_log_distance(samples: Iterable[PathLossSample]) -> LogDistanceParams:
    """Least-squares fit of (k_db, gamma) to path-loss samples.

    Ordinary least squares of pl_db against log10(distance): the slope is
    10*gamma and the intercept is -k_db. Exact (to rounding) on noiseless
    inputs. Needs at least two distinct distances.
    """
    pts = list(samples)
    distances = np.array([s.distance for s in pts], dtype=float)
    losses = np.array([s.pl_db for s in pts], dtype=float)
    if len(set(distances.tolist())) < 2:
        raise UnderdeterminedError(
            f"need >= 2 distinct distances to fit, got {len(set(distances.tolist()))}"
        )
    slope, intercept = np.polyfit(np.log10(distances), losses, 1)
    return LogDistanceParams(k_db=-float(intercept), gamma=float(slope) / 10.0)


def read_ray_file(path: str | Path) -> list[RayRecord]:
    """Parse one per-distance ray file: CSV `ray_id,power_w,path_length_m`.

    Malformed rows abort with the file name and 1-based line number.
    """
    path = Path(path)
    records: list[RayRecord] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["ray_id", "power_w", "path_length_m"]:
            raise TraceFormatError(
                f"{path}:1: expected header 'ray_id,power_w,path_length_m', got {header}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise TraceFormatError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            try:
                power = float(row[1])
                length = float(row[2])
            except ValueError:
                raise TraceFormatError(
                    f"{path}:{lineno}: power_w/path_length_m not numeric: {row[1]!r},{row[2]!r}"
                ) from None
            try:
                records.append(RayRecord(power=power, path_length=length))
            except DomainError as exc:
                raise TraceFormatError(f"{path}:{lineno}: {exc}") from None
    return records


def read_manifest(path: str | Path) -> list[tuple[float, Path]]:
    """Parse a fit manifest: CSV `distance_m,file`, one ray file per row.

    File paths are resolved relative to the manifest's directory.
    """
    path = Path(path)
    entries: list[tuple[float, Path]] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["distance_m", "file"]:
            raise TraceFormatError(
                f"{path}:1: expected header 'distance_m,file', got {header}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise TraceFormatError(f"{path}:{lineno}: expected 2 fields, got {len(row)}")
            try:
                distance = float(row[0])
            except ValueError:
                raise TraceFormatError(
                    f"{path}:{lineno}: distance_m is not a number: {row[0]!r}"
                ) from None
            if distance <= 0:
                raise TraceFormatError(f"{path}:{lineno}: distance_m must be > 0")
            entries.append((distance, path.parent / row[1].strip()))
    return entries


def path_loss_samples(manifest_path: str | Path) -> list[PathLossSample]:
    """Integrate every ray file listed in a manifest into path-loss points."""
    entries = read_manifest(manifest_path)
    samples = []
    for distance, ray_path in entries:
        gain = integrate_cir(read_ray_file(ray_path))
        if gain <= 0.0:
            raise DomainError(f"{ray_path}: zero total gain, loss undefined")
        samples.append(PathLossSample(distance=distance, pl_db=-10.0 * math.log10(gain)))
    return samples
