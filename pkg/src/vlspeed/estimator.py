"""Speed recovery from power traces.

Straight road, log-distance channel: each power sample inverts to a range
sample through

    y = sqrt(max((P/K)**(-2/gamma) - d**2, 0)),

which is linear in time (y = r0 - v*t), so speed drops out of an ordinary
least-squares line fit. The Lambertian channel adds a cos**(n+1) factor
with no algebraic inverse; `exact` mode bisects the monotone far branch of
the power-range curve per sample, `shortcut` mode ignores the cosine
factor and reuses the log-distance transform.

Curved road: each sample inverts to an arc angle by bisecting the strictly
decreasing arc-angle power law, then the angular speed comes from the same
line fit (beta = beta0 - w*t) and v = w*r_c.

Out-of-range samples are clamped rather than dropped, so the time base
stays intact; clamp counts are surfaced on the estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .channel import LambertianParams, LogDistanceParams
from .errors import (
    DegenerateWindowError,
    DomainError,
    NoSolutionError,
    SingularFitError,
)
from .trace import PowerTrace

__all__ = [
    "BETA_MIN",
    "SpeedEstimate",
    "LinearFit",
    "RangeTransform",
    "invert_log_distance",
    "range_transform",
    "fit_linear_ls",
    "estimate_straight",
    "invert_lambertian_range",
    "estimate_straight_lambertian",
    "estimate_beta",
    "estimate_curved",
]

# Lower end of the arc-angle search interval; estimates clamp here when the
# measured power exceeds the model's value at BETA_MIN.
BETA_MIN = 1e-6

_RANGE_TOL = 1e-9  # bisection tolerance on range [m]
_BETA_TOL = 1e-10  # bisection tolerance on arc angle [rad]


@dataclass(frozen=True)
class SpeedEstimate:
    """Recovered speed plus fit diagnostics.

    v_hat is in m/s. intercept_hat is the range at window start (straight)
    or the arc angle at window start (curved). w_hat is the angular speed
    (curved only). rms_residual is in the regression ordinate's units.
    """

    v_hat: float
    intercept_hat: float
    rms_residual: float
    samples_used: int
    w_hat: float | None = None
    clamped_count: int = 0

    def __post_init__(self):
        if self.samples_used < 2:
            raise DomainError(f"estimate needs >= 2 samples, got {self.samples_used}")
        if self.rms_residual < 0:
            raise DomainError("rms_residual must be >= 0")


class LinearFit(NamedTuple):
    slope: float
    intercept: float
    rms_residual: float


class RangeTransform(NamedTuple):
    t: np.ndarray
    y: np.ndarray
    clamped: int


def invert_log_distance(p_w: float, k: LogDistanceParams) -> float:
    """Distance D = (P/K)**(-1/gamma) from a received power sample."""
    if not p_w > 0:
        raise DomainError(f"power must be > 0, got {p_w}")
    return float((p_w / k.k_linear) ** (-1.0 / k.gamma))


def range_transform(trace: PowerTrace, k: LogDistanceParams, d: float) -> RangeTransform:
    """Per-sample range estimates under the log-distance model.

    y_i = sqrt(max((P_i/K)**(-2/gamma) - d^2, 0)); samples whose implied
    distance falls below the lateral offset clamp to 0 and are counted.
    Raises DomainError naming the first non-positive power sample.
    """
    p = trace.power
    bad = np.where(p <= 0.0)[0]
    if bad.size:
        raise DomainError(f"power must be > 0; sample {int(bad[0])} is {p[bad[0]]}")
    d2 = (p / k.k_linear) ** (-2.0 / k.gamma) - d * d
    clamped = int(np.count_nonzero(d2 < 0.0))
    y = np.sqrt(np.maximum(d2, 0.0))
    return RangeTransform(t=trace.t, y=y, clamped=clamped)


def fit_linear_ls(points: Iterable[tuple[float, float]]) -> LinearFit:
    """Ordinary least-squares line through (x, y) points.

    Solves the 2x2 normal equations in closed form via centered sums,
    which is stable for this fixed-size system. Needs >= 2 points with at
    least 2 distinct x values.
    """
    arr = np.asarray(list(points) if not isinstance(points, np.ndarray) else points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 2:
        raise SingularFitError(f"need >= 2 (x, y) points, got shape {arr.shape}")
    x, y = arr[:, 0], arr[:, 1]
    return _fit_xy(x, y)


def _fit_xy(x: np.ndarray, y: np.ndarray) -> LinearFit:
    xm = x.mean()
    ym = y.mean()
    dx = x - xm
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise SingularFitError("all abscissae identical; line fit is singular")
    slope = float(dx @ (y - ym)) / sxx
    intercept = ym - slope * xm
    resid = y - (slope * x + intercept)
    return LinearFit(slope=slope, intercept=float(intercept), rms_residual=float(np.sqrt(np.mean(resid**2))))


def estimate_straight(trace: PowerTrace, k: LogDistanceParams, d: float) -> SpeedEstimate:
    """Straight-road speed from a log-distance trace.

    Sample times are rebased so the window's first sample is x = 0;
    the intercept is then the range at window start.
    """
    tr = range_transform(trace, k, d)
    x = tr.t - tr.t[0]
    fit = _fit_xy(x, tr.y)
    return SpeedEstimate(
        v_hat=-fit.slope,
        intercept_hat=fit.intercept,
        rms_residual=fit.rms_residual,
        samples_used=len(tr.y),
        clamped_count=tr.clamped,
    )


def _lambertian_power_of_range(r, constant: float, n: float, gamma: float, d: float):
    """Power at range r for lateral offset d: C*r^(n+1)/(r^2+d^2)^((g+n+1)/2)."""
    return constant * r ** (n + 1.0) / (r * r + d * d) ** (0.5 * (gamma + n + 1.0))


def _lambertian_range_array(
    p: np.ndarray, lam: LambertianParams, constant: float, d: float, clamp: bool
) -> tuple[np.ndarray, int]:
    """Vectorized far-branch inversion of the Lambertian power-range curve.

    The curve rises from 0 to its maximum at r* = d*sqrt((n+1)/gamma) and
    decays like r^-gamma beyond it; the approach regime lives on the far
    branch r >= r*, where power strictly decreases with distance. Powers
    above the modal maximum either raise NoSolutionError or (clamp=True)
    pin the sample to r* and count it.
    """
    n, gamma = lam.n, lam.gamma
    if d == 0.0:
        # on-axis degenerate case: pure power law with exponent gamma
        return (p / constant) ** (-1.0 / gamma), 0
    r_star = d * math.sqrt((n + 1.0) / gamma)
    p_max = _lambertian_power_of_range(r_star, constant, n, gamma, d)
    over = p > p_max  # equality still has the solution r_star
    n_over = int(np.count_nonzero(over))
    if n_over and not clamp:
        idx = int(np.where(over)[0][0])
        raise NoSolutionError(
            f"power {p[idx]} at sample {idx} exceeds the model maximum {p_max} (attained at range {r_star})"
        )
    p_solve = np.where(over, p_max, p)
    hi = max(2.0 * r_star, d, 1.0)
    while _lambertian_power_of_range(hi, constant, n, gamma, d) >= p_solve.min():
        hi *= 2.0
        if hi > 1e12:
            raise NoSolutionError("failed to bracket the range inversion")
    lo = np.full_like(p_solve, r_star)
    hi_arr = np.full_like(p_solve, hi)
    # power decreases with range on [r_star, hi]; classic bisection
    while float(np.max(hi_arr - lo)) > _RANGE_TOL:
        mid = 0.5 * (lo + hi_arr)
        too_strong = _lambertian_power_of_range(mid, constant, n, gamma, d) > p_solve
        lo = np.where(too_strong, mid, lo)
        hi_arr = np.where(too_strong, hi_arr, mid)
    r = 0.5 * (lo + hi_arr)
    r = np.where(over, r_star, r)
    return r, n_over


def invert_lambertian_range(
    p_w: float, lam: LambertianParams, constant: float, d: float
) -> float:
    """Range solving P = C*R^(n+1)/(R^2+d^2)^((gamma+n+1)/2), far branch.

    `constant` is the multiplicative factor C (or a fitted gain) in watts
    scale. Bisection to 1e-9 m. Raises NoSolutionError when the power
    exceeds the model's attainable maximum.
    """
    if not p_w > 0:
        raise DomainError(f"power must be > 0, got {p_w}")
    r, _ = _lambertian_range_array(np.array([p_w]), lam, constant, d, clamp=False)
    return float(r[0])


def estimate_straight_lambertian(
    trace: PowerTrace,
    lam: LambertianParams,
    d: float,
    constant: float | None = None,
    mode: str = "exact",
) -> SpeedEstimate:
    """Straight-road speed from a Lambertian-channel trace.

    exact    -- bisect the full power-range curve per sample.
    shortcut -- treat cos(theta) as 1 so the trace inverts like a pure
                power law (cheaper, biased near the detector).
    """
    if constant is None:
        constant = lam.c_factor
    if mode == "shortcut":
        k_eff = LogDistanceParams.from_linear(constant, lam.gamma)
        return estimate_straight(trace, k_eff, d)
    if mode != "exact":
        raise DomainError(f"mode must be 'exact' or 'shortcut', got {mode!r}")
    p = trace.power
    bad = np.where(p <= 0.0)[0]
    if bad.size:
        raise DomainError(f"power must be > 0; sample {int(bad[0])} is {p[bad[0]]}")
    r, clamped = _lambertian_range_array(p, lam, constant, d, clamp=True)
    x = trace.t - trace.t[0]
    fit = _fit_xy(x, r)
    return SpeedEstimate(
        v_hat=-fit.slope,
        intercept_hat=fit.intercept,
        rms_residual=fit.rms_residual,
        samples_used=len(r),
        clamped_count=clamped,
    )


def _curved_power_of_beta(beta, k_linear: float, n: float, gamma: float, r_c: float):
    half = 0.5 * beta
    return k_linear * np.cos(half) ** (n + 1.0) / (2.0 * r_c * np.sin(half)) ** gamma


def _beta_array(
    p: np.ndarray, lam: LambertianParams, k: LogDistanceParams, r_c: float
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized inversion of the arc-angle power law on [BETA_MIN, pi].

    Returns (beta, clamped_mask). The power law strictly decreases in
    beta, so the cost-function minimum is found by bisection; powers
    outside the attainable interval clamp to the nearest endpoint.
    """
    n, gamma, k_lin = lam.n, k.gamma, k.k_linear
    p_hi = _curved_power_of_beta(BETA_MIN, k_lin, n, gamma, r_c)  # strongest
    clamp_lo = p >= p_hi  # too strong -> beta pinned at BETA_MIN
    lo = np.full_like(p, BETA_MIN)
    hi = np.full_like(p, math.pi)
    while float(np.max(hi - lo)) > _BETA_TOL:
        mid = 0.5 * (lo + hi)
        too_strong = _curved_power_of_beta(mid, k_lin, n, gamma, r_c) > p
        lo = np.where(too_strong, mid, lo)
        hi = np.where(too_strong, hi, mid)
    beta = 0.5 * (lo + hi)
    beta = np.where(clamp_lo, BETA_MIN, beta)
    # power -> 0 as beta -> pi, so p > 0 never clamps high; keep the mask
    # anyway in case of future model changes
    clamped = clamp_lo
    return beta, clamped


def estimate_beta(p_w: float, lam: LambertianParams, k: LogDistanceParams, r_c: float) -> float:
    """Arc angle whose model power best matches one measured sample.

    Bisection of the strictly decreasing arc-angle power law to 1e-10 rad;
    the result clamps to BETA_MIN when the sample is stronger than the
    model can produce, and is always within [BETA_MIN, pi].
    """
    if not p_w > 0:
        raise DomainError(f"power must be > 0, got {p_w}")
    if not r_c > 0:
        raise DomainError(f"curvature radius r_c must be > 0, got {r_c}")
    beta, _ = _beta_array(np.array([p_w]), lam, k, r_c)
    return float(beta[0])


def estimate_curved(
    trace: PowerTrace, lam: LambertianParams, k: LogDistanceParams, r_c: float
) -> SpeedEstimate:
    """Curved-road speed: per-sample arc angles, then a line fit.

    beta_i = beta0 - w*t, so w is minus the fitted slope and v = w*r_c.
    Raises DegenerateWindowError when at least half the samples clamped.
    """
    if not r_c > 0:
        raise DomainError(f"curvature radius r_c must be > 0, got {r_c}")
    p = trace.power
    bad = np.where(p <= 0.0)[0]
    if bad.size:
        raise DomainError(f"power must be > 0; sample {int(bad[0])} is {p[bad[0]]}")
    beta, clamped_mask = _beta_array(p, lam, k, r_c)
    n_clamped = int(np.count_nonzero(clamped_mask))
    if n_clamped * 2 >= len(beta):
        raise DegenerateWindowError(
            f"{n_clamped} of {len(beta)} arc-angle samples clamped; window is degenerate"
        )
    x = trace.t - trace.t[0]
    fit = _fit_xy(x, beta)
    w_hat = -fit.slope
    return SpeedEstimate(
        v_hat=w_hat * r_c,
        intercept_hat=fit.intercept,
        rms_residual=fit.rms_residual,
        samples_used=len(beta),
        w_hat=w_hat,
        clamped_count=n_clamped,
    )
