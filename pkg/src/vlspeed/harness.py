"""Monte Carlo accuracy sweeps and the bundled figure presets.

A sweep runs seeded trials at each point of a one-dimensional parameter
grid (window-start angle, window-start time, initial SNR, window duration,
vehicle speed, or half-power angle). Every trial synthesizes the full road
segment once, injects noise calibrated at the segment's first (farthest,
weakest) sample, slices the estimation window out of it, and scores the
estimate with

    accuracy = 100 * max(0, 1 - |v_hat - v| / v)  [percent].

Windows are labeled by the incidence angle at the window's first sample
(switchable to the midpoint) and truncate at the segment end. Trial seeds
derive from a splitmix64 mix of the base seed and the (point, trial)
index, so reruns are bit-identical and paired sweeps (e.g. two SNR levels
with the same base seed) see matched noise draws.

Figure presets fig6..fig13 bundle the default experiment grids; see
`reproduce_figure` for the dataset each one emits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .baseline import RadarGeometry, radar_accuracy_curved, radar_accuracy_straight
from .channel import LambertianParams, LogDistanceParams, LAMBERTIAN_CHANNEL_FIT, SIMULATED_CHANNEL_FIT
from .errors import DomainError, SweepError, VlspeedError
from .estimator import estimate_curved, estimate_straight, estimate_straight_lambertian
from .geometry import CurvedScenario, StraightScenario, segment_end
from .trace import NoiseSpec, PowerTrace, SamplingSpec, add_noise, synthesize_trace

__all__ = [
    "SEED_GAMMA",
    "mix_seed",
    "accuracy",
    "ExperimentConfig",
    "AccuracyCurve",
    "run_accuracy_sweep",
    "FigureResult",
    "reproduce_figure",
    "write_figure",
    "FIGURE_IDS",
    "DEFAULT_STRAIGHT",
    "DEFAULT_CURVED",
    "DEFAULT_PHI_HALF",
    "DEFAULT_FOV",
]

# splitmix64 constants (Steele et al. sequence mix); the golden-gamma
# increment keeps per-index seeds decorrelated.
SEED_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1

DEFAULT_STRAIGHT = StraightScenario(d=0.5, r0=15.0, v=20.0)
DEFAULT_CURVED = CurvedScenario(r_c=40.0, w=1.0, beta0=math.pi / 2)
DEFAULT_PHI_HALF = math.radians(40.0)
DEFAULT_FOV = math.radians(70.0)

_ANGLE_GRID_DEG = (2.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0, 55.0, 60.0, 65.0)
_TIME_GRID_S = tuple(round(0.1 * i, 1) for i in range(13))  # 0.0 .. 1.2
_DURATIONS_S = (0.1, 0.2, 0.3)

FIGURE_IDS = tuple(range(6, 14))


def mix_seed(base_seed: int, index: int) -> int:
    """Deterministic 64-bit trial seed: splitmix64(base + index*gamma)."""
    x = (base_seed + index * SEED_GAMMA) & _MASK
    x = ((x ^ (x >> 30)) * _MIX1) & _MASK
    x = ((x ^ (x >> 27)) * _MIX2) & _MASK
    return x ^ (x >> 31)


def accuracy(v_hat: float, v_a: float) -> float:
    """Estimation accuracy in percent, clamped to [0, 100]."""
    if not v_a > 0:
        raise DomainError(f"actual speed must be > 0, got {v_a}")
    return 100.0 * max(0.0, 1.0 - abs(v_hat - v_a) / v_a)


@dataclass(frozen=True)
class ExperimentConfig:
    """One accuracy sweep: scenario, channel constants, grid, and trials.

    channel selects which constants row drives synthesis and estimation:
    'simulated' uses the pure power law on straight roads, 'lambertian'
    the angle-weighted form (estimated in `mode`). Curved roads always
    use the arc-angle law built from the selected row plus phi_half.
    sweep_axis is one of start_angle | start_time | snr0 | duration |
    speed | phi_half; sweep_values must be non-empty and ascending.
    """

    scenario: StraightScenario | CurvedScenario
    sweep_axis: str
    sweep_values: tuple[float, ...]
    channel: str = "simulated"
    k: LogDistanceParams = SIMULATED_CHANNEL_FIT
    phi_half: float = DEFAULT_PHI_HALF
    fov: float = DEFAULT_FOV
    trials: int = 500
    base_seed: int = 0
    dt: float = 1e-3
    duration: float = 0.3
    snr0_db: float = 30.0
    t_start: float = 0.0
    mode: str = "exact"
    label: str = "start"

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        values = tuple(float(v) for v in self.sweep_values)
        if not values:
            raise DomainError("sweep_values must be non-empty")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise DomainError("sweep_values must be strictly ascending")
        object.__setattr__(self, "sweep_values", values)
        if self.sweep_axis not in ("start_angle", "start_time", "snr0", "duration", "speed", "phi_half"):
            raise DomainError(f"unknown sweep axis {self.sweep_axis!r}")
        if self.channel not in ("simulated", "lambertian"):
            raise DomainError(f"channel must be 'simulated' or 'lambertian', got {self.channel!r}")
        if self.label not in ("start", "midpoint"):
            raise DomainError(f"label must be 'start' or 'midpoint', got {self.label!r}")


@dataclass(frozen=True)
class AccuracyCurve:
    """Aggregate accuracy at one sweep point."""

    sweep_value: float
    mean_accuracy_pct: float
    std_accuracy_pct: float
    trials: int
    clamp_rate: float

    def __post_init__(self):
        if not 0.0 <= self.mean_accuracy_pct <= 100.0:
            raise DomainError("mean accuracy must lie in [0, 100]")


def _lambertian_for(cfg: ExperimentConfig, phi_half: float) -> LambertianParams:
    return LambertianParams.from_gain_db(
        k_db=cfg.k.k_db, phi_half=phi_half, gamma=cfg.k.gamma, fov=cfg.fov
    )


def _full_trace_cap(cfg: ExperimentConfig, scenario, lam: LambertianParams | None) -> float:
    """Latest sample time the synthesizer may touch for this setup."""
    t_cap = segment_end(scenario)
    if isinstance(scenario, StraightScenario):
        if cfg.channel == "lambertian":
            # keep the incidence angle inside the field of view
            r_fov = scenario.d / math.tan(cfg.fov)
            t_cap = min(t_cap, (scenario.r0 - r_fov) / scenario.v)
    else:
        # stay strictly before the curve end, where beta -> 0 diverges
        t_cap = t_cap - cfg.dt
    return t_cap


def _angle_to_start_time(scenario, value: float, cfg: ExperimentConfig) -> float:
    """Window anchor time whose incidence angle equals the sweep value."""
    if isinstance(scenario, StraightScenario):
        if not 0.0 <= value < cfg.fov:
            raise SweepError(f"window-start angle {value} rad outside [0, fov)")
        if value <= math.atan2(scenario.d, scenario.r0):
            return 0.0
        r_target = scenario.d / math.tan(value)
        return (scenario.r0 - r_target) / scenario.v
    # curved: sweep value is the arc angle at the anchor
    if not 0.0 < value <= scenario.beta0:
        raise SweepError(f"window-start arc angle {value} rad outside (0, beta0]")
    return (scenario.beta0 - value) / scenario.w


def _resolve_point(cfg: ExperimentConfig, value: float):
    """Per-sweep-point scenario, channel, window, and noise level."""
    scenario = cfg.scenario
    phi_half = cfg.phi_half
    snr = cfg.snr0_db
    duration = cfg.duration
    t_anchor = cfg.t_start
    if cfg.sweep_axis == "speed":
        if not isinstance(scenario, StraightScenario):
            raise SweepError("speed sweeps are defined for the straight scenario")
        scenario = replace(scenario, v=value)
    elif cfg.sweep_axis == "snr0":
        snr = value
    elif cfg.sweep_axis == "duration":
        duration = value
    elif cfg.sweep_axis == "phi_half":
        phi_half = value
    elif cfg.sweep_axis == "start_time":
        t_anchor = value
    elif cfg.sweep_axis == "start_angle":
        t_anchor = _angle_to_start_time(scenario, value, cfg)
    t0 = t_anchor if cfg.label == "start" else max(0.0, t_anchor - 0.5 * duration)
    return scenario, phi_half, snr, duration, t0


def _estimate(cfg: ExperimentConfig, window: PowerTrace, scenario, lam: LambertianParams):
    if isinstance(scenario, CurvedScenario):
        return estimate_curved(window, lam, cfg.k, scenario.r_c)
    if cfg.channel == "simulated":
        return estimate_straight(window, cfg.k, scenario.d)
    return estimate_straight_lambertian(window, lam, scenario.d, mode=cfg.mode)


def run_accuracy_sweep(cfg: ExperimentConfig) -> list[AccuracyCurve]:
    """Run the configured sweep; deterministic for a given base seed.

    Any scenario or estimation error aborts the whole sweep with a
    SweepError naming the (sweep value, trial) coordinates.
    """
    curves: list[AccuracyCurve] = []
    clean_cache: dict[tuple, PowerTrace] = {}
    for sweep_idx, value in enumerate(cfg.sweep_values):
        scenario, phi_half, snr, duration, t0 = _resolve_point(cfg, value)
        lam = _lambertian_for(cfg, phi_half)
        v_true = scenario.v
        cache_key = (scenario, phi_half)
        clean = clean_cache.get(cache_key)
        if clean is None:
            t_cap = _full_trace_cap(cfg, scenario, lam)
            n_full = int(math.floor(t_cap / cfg.dt + 1e-9)) + 1
            while (n_full - 1) * cfg.dt > t_cap:
                n_full -= 1
            sampling = SamplingSpec(dt=cfg.dt, t_start=0.0, duration=n_full * cfg.dt)
            if isinstance(scenario, CurvedScenario):
                clean = synthesize_trace(scenario, cfg.k, sampling, lambertian=lam)
            elif cfg.channel == "lambertian":
                clean = synthesize_trace(scenario, lam, sampling)
            else:
                clean = synthesize_trace(scenario, cfg.k, sampling)
            clean_cache[cache_key] = clean
        acc_sum = 0.0
        acc_sumsq = 0.0
        clamped_total = 0
        samples_total = 0
        for trial in range(cfg.trials):
            seed = mix_seed(cfg.base_seed, sweep_idx * cfg.trials + trial)
            try:
                noisy = add_noise(clean, NoiseSpec(snr0_db=snr, seed=seed))
                window = noisy.window(t0, duration)
                est = _estimate(cfg, window, scenario, lam)
                acc = accuracy(est.v_hat, v_true)
            except VlspeedError as exc:
                raise SweepError(
                    f"sweep value {value} (index {sweep_idx}), trial {trial}: {exc}"
                ) from exc
            acc_sum += acc
            acc_sumsq += acc * acc
            clamped_total += est.clamped_count
            samples_total += est.samples_used
        mean = acc_sum / cfg.trials
        var = max(acc_sumsq / cfg.trials - mean * mean, 0.0)
        curves.append(
            AccuracyCurve(
                sweep_value=value,
                mean_accuracy_pct=mean,
                std_accuracy_pct=math.sqrt(var),
                trials=cfg.trials,
                clamp_rate=clamped_total / samples_total if samples_total else 0.0,
            )
        )
    return curves


# ---------------------------------------------------------------------------
# figure presets


@dataclass(frozen=True)
class FigureResult:
    """Tabular dataset for one figure preset."""

    fig_id: int
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    meta: dict[str, Any] = field(hash=False)


def _scenario_meta(s) -> dict[str, Any]:
    from .trace import scenario_to_dict

    return scenario_to_dict(s)


def _common_meta(fig_id: int, trials: int, base_seed: int, cfg_extra: dict[str, Any]) -> dict[str, Any]:
    return {
        "figure": f"fig{fig_id}",
        "artifact_version": __version__,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "trials": trials,
        "base_seed": base_seed,
        "config": cfg_extra,
    }


def reproduce_figure(
    fig_id: int,
    trials: int = 500,
    base_seed: int = 0,
    snr0_db: float | None = None,
    label: str = "start",
) -> FigureResult:
    """Build the dataset behind one bundled figure preset (ids 6..13).

    6  straight kinematics table: incidence angle and range vs time.
    7  straight accuracy vs window-start angle, one series per window
       duration, plus the cosine-limit baseline.
    8  straight accuracy vs window-start angle at 20 and 30 dB initial SNR.
    9  straight accuracy vs vehicle speed, one series per window duration.
    10 straight accuracy vs window-start angle for three half-power
       angles (angle-weighted channel, shortcut estimator).
    11 straight accuracy vs window duration for the two channel models.
    12 curved accuracy vs window-start time (arc angle also emitted), one
       series per duration, plus the cosine-limit baseline.
    13 curved accuracy vs window-start time at 20 and 30 dB initial SNR.

    Datasets are deterministic given (trials, base_seed).
    """
    if fig_id not in FIGURE_IDS:
        raise DomainError(f"unknown figure id {fig_id}; valid ids are {FIGURE_IDS}")
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    snr = 30.0 if snr0_db is None else float(snr0_db)
    builder = {
        6: _fig6,
        7: _fig7,
        8: _fig8,
        9: _fig9,
        10: _fig10,
        11: _fig11,
        12: _fig12,
        13: _fig13,
    }[fig_id]
    return builder(trials, base_seed, snr, label)


def _sweep_series(cfg: ExperimentConfig) -> list[float]:
    return [c.mean_accuracy_pct for c in run_accuracy_sweep(cfg)]


def _fig6(trials, base_seed, snr, label):
    from .geometry import straight_pose

    s = DEFAULT_STRAIGHT
    dt = 1e-3
    n = int(round(segment_end(s) / dt)) + 1
    rows = []
    for i in range(n):
        t = min(i * dt, segment_end(s))
        pose = straight_pose(s, t)
        rows.append((t, math.degrees(pose.theta), pose.R))
    meta = _common_meta(6, trials=1, base_seed=base_seed, cfg_extra={
        "scenario": _scenario_meta(s), "dt": dt, "deterministic": True,
    })
    return FigureResult(6, ("t_s", "theta_deg", "range_m"), tuple(rows), meta)


def _angle_sweep_cfg(base_seed, trials, snr, label, **kw) -> ExperimentConfig:
    return ExperimentConfig(
        scenario=DEFAULT_STRAIGHT,
        sweep_axis="start_angle",
        sweep_values=tuple(math.radians(a) for a in _ANGLE_GRID_DEG),
        trials=trials,
        base_seed=base_seed,
        snr0_db=snr,
        label=label,
        **kw,
    )


def _fig7(trials, base_seed, snr, label):
    series = {}
    for dur in _DURATIONS_S:
        cfg = _angle_sweep_cfg(base_seed, trials, snr, label, duration=dur)
        series[dur] = _sweep_series(cfg)
    rows = []
    for i, deg in enumerate(_ANGLE_GRID_DEG):
        theta = math.radians(deg)
        t0 = _angle_to_start_time(DEFAULT_STRAIGHT, theta, _angle_sweep_cfg(base_seed, 1, snr, label))
        rows.append(
            (deg, t0)
            + tuple(series[dur][i] for dur in _DURATIONS_S)
            + (radar_accuracy_straight(theta),)
        )
    cols = ("theta_start_deg", "t_start_s") + tuple(
        f"acc_dur{d}_pct" for d in _DURATIONS_S
    ) + ("radar_pct",)
    meta = _common_meta(7, trials, base_seed, {
        "scenario": _scenario_meta(DEFAULT_STRAIGHT),
        "channel": "simulated", "k_db": SIMULATED_CHANNEL_FIT.k_db,
        "gamma": SIMULATED_CHANNEL_FIT.gamma, "snr0_db": snr,
        "durations_s": list(_DURATIONS_S), "angle_grid_deg": list(_ANGLE_GRID_DEG),
        "window_label": label,
    })
    return FigureResult(7, cols, tuple(rows), meta)


def _fig8(trials, base_seed, snr, label):
    snrs = (20.0, 30.0)
    series = {}
    for level in snrs:
        cfg = _angle_sweep_cfg(base_seed, trials, level, label)
        series[level] = _sweep_series(cfg)
    rows = []
    for i, deg in enumerate(_ANGLE_GRID_DEG):
        theta = math.radians(deg)
        t0 = _angle_to_start_time(DEFAULT_STRAIGHT, theta, _angle_sweep_cfg(base_seed, 1, snr, label))
        rows.append((deg, t0) + tuple(series[level][i] for level in snrs))
    cols = ("theta_start_deg", "t_start_s") + tuple(f"acc_snr{int(s)}_pct" for s in snrs)
    meta = _common_meta(8, trials, base_seed, {
        "scenario": _scenario_meta(DEFAULT_STRAIGHT), "channel": "simulated",
        "snr0_db_levels": list(snrs), "duration_s": 0.3,
        "angle_grid_deg": list(_ANGLE_GRID_DEG), "window_label": label,
    })
    return FigureResult(8, cols, tuple(rows), meta)


def _fig9(trials, base_seed, snr, label):
    speeds = (5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0)
    series = {}
    for dur in _DURATIONS_S:
        cfg = ExperimentConfig(
            scenario=DEFAULT_STRAIGHT,
            sweep_axis="speed",
            sweep_values=speeds,
            trials=trials,
            base_seed=base_seed,
            snr0_db=snr,
            duration=dur,
            label=label,
        )
        series[dur] = _sweep_series(cfg)
    rows = [
        (v,) + tuple(series[dur][i] for dur in _DURATIONS_S) for i, v in enumerate(speeds)
    ]
    cols = ("speed_mps",) + tuple(f"acc_dur{d}_pct" for d in _DURATIONS_S)
    meta = _common_meta(9, trials, base_seed, {
        "scenario": _scenario_meta(DEFAULT_STRAIGHT), "channel": "simulated",
        "snr0_db": snr, "speeds_mps": list(speeds), "durations_s": list(_DURATIONS_S),
    })
    return FigureResult(9, cols, tuple(rows), meta)


def _fig10(trials, base_seed, snr, label):
    phis_deg = (20.0, 40.0, 60.0)
    series = {}
    for phi_deg in phis_deg:
        cfg = _angle_sweep_cfg(
            base_seed, trials, snr, label,
            channel="lambertian", k=LAMBERTIAN_CHANNEL_FIT,
            phi_half=math.radians(phi_deg), mode="shortcut",
        )
        series[phi_deg] = _sweep_series(cfg)
    rows = []
    for i, deg in enumerate(_ANGLE_GRID_DEG):
        theta = math.radians(deg)
        t0 = _angle_to_start_time(DEFAULT_STRAIGHT, theta, _angle_sweep_cfg(base_seed, 1, snr, label))
        rows.append((deg, t0) + tuple(series[p][i] for p in phis_deg))
    cols = ("theta_start_deg", "t_start_s") + tuple(f"acc_phi{int(p)}_pct" for p in phis_deg)
    meta = _common_meta(10, trials, base_seed, {
        "scenario": _scenario_meta(DEFAULT_STRAIGHT), "channel": "lambertian",
        "estimator_mode": "shortcut", "k_db": LAMBERTIAN_CHANNEL_FIT.k_db,
        "gamma": LAMBERTIAN_CHANNEL_FIT.gamma, "snr0_db": snr,
        "phi_half_deg": list(phis_deg), "angle_grid_deg": list(_ANGLE_GRID_DEG),
        "window_label": label,
    })
    return FigureResult(10, cols, tuple(rows), meta)


def _fig11(trials, base_seed, snr, label):
    durations = (0.05, 0.1, 0.15, 0.2, 0.25, 0.3)
    chans = (("lambertian", LAMBERTIAN_CHANNEL_FIT), ("simulated", SIMULATED_CHANNEL_FIT))
    series = {}
    for name, k in chans:
        cfg = ExperimentConfig(
            scenario=DEFAULT_STRAIGHT,
            sweep_axis="duration",
            sweep_values=durations,
            channel=name,
            k=k,
            trials=trials,
            base_seed=base_seed,
            snr0_db=snr,
            label=label,
        )
        series[name] = _sweep_series(cfg)
    rows = [
        (d, series["lambertian"][i], series["simulated"][i]) for i, d in enumerate(durations)
    ]
    cols = ("duration_s", "acc_lambertian_pct", "acc_simulated_pct")
    meta = _common_meta(11, trials, base_seed, {
        "scenario": _scenario_meta(DEFAULT_STRAIGHT), "snr0_db": snr,
        "durations_s": list(durations), "estimator_mode": "exact",
    })
    return FigureResult(11, cols, tuple(rows), meta)


def _curved_time_cfg(base_seed, trials, snr, label, **kw) -> ExperimentConfig:
    return ExperimentConfig(
        scenario=DEFAULT_CURVED,
        sweep_axis="start_time",
        sweep_values=_TIME_GRID_S,
        trials=trials,
        base_seed=base_seed,
        snr0_db=snr,
        label=label,
        **kw,
    )


def _fig12(trials, base_seed, snr, label):
    series = {}
    for dur in _DURATIONS_S:
        series[dur] = _sweep_series(_curved_time_cfg(base_seed, trials, snr, label, duration=dur))
    s = DEFAULT_CURVED
    rows = []
    for i, t0 in enumerate(_TIME_GRID_S):
        beta0 = s.beta0 - s.w * t0
        radar = radar_accuracy_curved(RadarGeometry(beta=beta0, r_c=s.r_c, d_o=s.d0, r0=s.r0))
        rows.append((t0, beta0) + tuple(series[dur][i] for dur in _DURATIONS_S) + (radar,))
    cols = ("t_start_s", "beta_start_rad") + tuple(
        f"acc_dur{d}_pct" for d in _DURATIONS_S
    ) + ("radar_pct",)
    meta = _common_meta(12, trials, base_seed, {
        "scenario": _scenario_meta(s), "channel": "simulated", "snr0_db": snr,
        "durations_s": list(_DURATIONS_S), "time_grid_s": list(_TIME_GRID_S),
        "window_label": label,
    })
    return FigureResult(12, cols, tuple(rows), meta)


def _fig13(trials, base_seed, snr, label):
    snrs = (20.0, 30.0)
    series = {}
    for level in snrs:
        series[level] = _sweep_series(_curved_time_cfg(base_seed, trials, level, label))
    s = DEFAULT_CURVED
    rows = []
    for i, t0 in enumerate(_TIME_GRID_S):
        beta0 = s.beta0 - s.w * t0
        rows.append((t0, beta0) + tuple(series[level][i] for level in snrs))
    cols = ("t_start_s", "beta_start_rad") + tuple(f"acc_snr{int(v)}_pct" for v in snrs)
    meta = _common_meta(13, trials, base_seed, {
        "scenario": _scenario_meta(s), "channel": "simulated",
        "snr0_db_levels": list(snrs), "duration_s": 0.3,
        "time_grid_s": list(_TIME_GRID_S), "window_label": label,
    })
    return FigureResult(13, cols, tuple(rows), meta)


def write_figure(result: FigureResult, out_dir: str | Path, svg: bool = False) -> list[Path]:
    """Write fig{N}.csv plus fig{N}.meta.json (and optionally fig{N}.svg).

    The CSV is byte-deterministic for a fixed dataset; only the sidecar's
    generated_at field varies between runs.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = f"fig{result.fig_id}"
    csv_path = out_dir / f"{stem}.csv"
    with open(csv_path, "w", newline="\n") as fh:
        fh.write(",".join(result.columns) + "\n")
        for row in result.rows:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")
    meta_path = out_dir / f"{stem}.meta.json"
    with open(meta_path, "w") as fh:
        json.dump(result.meta, fh, indent=2)
        fh.write("\n")
    paths = [csv_path, meta_path]
    if svg:
        paths.append(_render_svg(result, out_dir / f"{stem}.svg"))
    return paths


def _render_svg(result: FigureResult, path: Path) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    data = np.asarray(result.rows, dtype=float)
    x = data[:, 0]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for j, name in enumerate(result.columns[1:], start=1):
        ax.plot(x, data[:, j], marker="o", markersize=3, label=name)
    ax.set_xlabel(result.columns[0])
    ax.set_ylabel("value")
    ax.set_title(f"fig{result.fig_id}")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path
