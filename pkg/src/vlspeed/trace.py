"""Sampled received-power traces: synthesis, noise injection, file round trip.

A trace is the detector's uniformly sampled power time series. Synthesis is
noiseless; noise is injected separately so the same clean trace can be
reused across Monte Carlo trials. Noise is zero-mean additive white
Gaussian on the optical power with a fixed variance over the window,

    sigma = P0 * 10**(-snr0_db / 20),

anchored at the window's first (farthest, weakest) sample P0. Samples that
land at or below zero are clamped to sigma*1e-3 and counted, keeping the
window length stable for the estimator's design matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numpy as np

from . import geometry
from .channel import LambertianParams, LogDistanceParams, curved_power, lambertian_power, log_distance_power
from .errors import DomainError, NoiseStateError, OutOfSegmentError, TraceFormatError
from .geometry import CurvedScenario, StraightScenario

__all__ = [
    "SamplingSpec",
    "NoiseSpec",
    "PowerTrace",
    "synthesize_trace",
    "snr_to_sigma",
    "add_noise",
    "save_trace",
    "load_trace",
    "scenario_to_dict",
    "scenario_from_dict",
    "channel_to_dict",
    "channel_from_dict",
]


@dataclass(frozen=True)
class SamplingSpec:
    """Uniform sampling window: n = round(duration/dt) samples from t_start.

    Samples cover the half-open interval [t_start, t_start + duration).
    """

    dt: float
    t_start: float = 0.0
    duration: float = 0.3

    def __post_init__(self):
        if not self.dt > 0:
            raise DomainError(f"sample interval dt must be > 0, got {self.dt}")
        if self.t_start < 0:
            raise DomainError(f"t_start must be >= 0, got {self.t_start}")
        if self.duration < 2.0 * self.dt:
            raise DomainError(
                f"duration must cover at least two samples (>= {2 * self.dt}), got {self.duration}"
            )

    @property
    def n_samples(self) -> int:
        return int(round(self.duration / self.dt))

    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.n_samples)


@dataclass(frozen=True)
class NoiseSpec:
    """Noise level as an initial SNR in dB plus the RNG seed."""

    snr0_db: float
    seed: int = 0

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass(frozen=True)
class PowerTrace:
    """Timestamped received-power samples plus noise metadata.

    t and power are equal-length arrays; t is strictly increasing with
    uniform spacing. noise_sigma is 0 for a noiseless trace. Treat
    instances as immutable; derive new traces instead of mutating.
    """

    t: np.ndarray
    power: np.ndarray
    noise_sigma: float = 0.0
    clipped_count: int = 0

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        p = np.asarray(self.power, dtype=float)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "power", p)
        if t.shape != p.shape or t.ndim != 1:
            raise DomainError("t and power must be 1-D arrays of equal length")
        if len(t) >= 2:
            steps = np.diff(t)
            dt = steps[0]
            if not np.all(steps > 0) or not np.allclose(steps, dt, rtol=1e-9, atol=0):
                raise DomainError("sample times must be strictly increasing with uniform spacing")
        if self.noise_sigma < 0:
            raise DomainError(f"noise_sigma must be >= 0, got {self.noise_sigma}")

    def __len__(self) -> int:
        return len(self.t)

    @property
    def dt(self) -> float:
        if len(self.t) < 2:
            raise DomainError("trace has fewer than two samples, dt undefined")
        return float(self.t[1] - self.t[0])

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.t.tolist(), self.power.tolist()))

    def window(self, t_start: float, duration: float) -> "PowerTrace":
        """Slice of this trace covering [t_start, t_start + duration).

        The slice is truncated at the trace end; it must keep >= 2 samples.
        """
        dt = self.dt
        i0 = int(np.searchsorted(self.t, t_start - 0.5 * dt))
        i1 = min(i0 + int(round(duration / dt)), len(self.t))
        if i1 - i0 < 2:
            raise OutOfSegmentError(
                f"window [{t_start}, {t_start + duration}) keeps fewer than 2 samples"
            )
        return PowerTrace(
            t=self.t[i0:i1].copy(),
            power=self.power[i0:i1].copy(),
            noise_sigma=self.noise_sigma,
            clipped_count=self.clipped_count,
        )


def synthesize_trace(
    scenario: StraightScenario | CurvedScenario,
    channel: LogDistanceParams | LambertianParams,
    sampling: SamplingSpec,
    lambertian: LambertianParams | None = None,
) -> PowerTrace:
    """Noiseless received-power trace for a scenario/channel pair.

    Straight roads pair with either channel form. Curved roads use the
    arc-angle power law, which needs a Lambertian order: pass a
    LambertianParams channel, or a LogDistanceParams channel plus the
    `lambertian` argument supplying the order. Sample times outside the
    road segment raise OutOfSegmentError naming the offending time.
    """
    times = sampling.times()
    if isinstance(scenario, StraightScenario):
        poses = [geometry.straight_pose(scenario, float(t)) for t in times]
        if isinstance(channel, LogDistanceParams):
            power = log_distance_power(channel, np.array([p.D for p in poses]))
        elif isinstance(channel, LambertianParams):
            power = np.array([lambertian_power(channel, p) for p in poses])
        else:
            raise DomainError(f"unsupported channel type {type(channel).__name__}")
    elif isinstance(scenario, CurvedScenario):
        betas = np.array(
            [geometry.curved_pose(scenario, float(t)).beta for t in times]
        )
        if isinstance(channel, LambertianParams):
            k = LogDistanceParams.from_linear(channel.c_factor, channel.gamma)
            power = curved_power(channel, k, scenario.r_c, betas)
        elif isinstance(channel, LogDistanceParams):
            if lambertian is None:
                raise DomainError(
                    "curved synthesis with a log-distance channel needs `lambertian` for the emission order"
                )
            power = curved_power(lambertian, channel, scenario.r_c, betas)
        else:
            raise DomainError(f"unsupported channel type {type(channel).__name__}")
    else:
        raise DomainError(f"unknown scenario type {type(scenario).__name__}")
    return PowerTrace(t=times, power=np.asarray(power, dtype=float))


def snr_to_sigma(p0: float, snr0_db: float) -> float:
    """Noise standard deviation from the anchor power and initial SNR.

    snr0_db = 20*log10(p0/sigma), so sigma = p0 * 10**(-snr0_db/20).
    """
    if not p0 > 0:
        raise DomainError(f"anchor power p0 must be > 0, got {p0}")
    return p0 * 10.0 ** (-snr0_db / 20.0)


def add_noise(trace: PowerTrace, noise: NoiseSpec) -> PowerTrace:
    """Additive white Gaussian noise calibrated to the first sample.

    Deterministic for a given seed. Samples pushed to <= 0 are clamped to
    sigma*1e-3 and counted in clipped_count.
    """
    if trace.noise_sigma != 0.0:
        raise NoiseStateError("trace already carries noise; refusing to add more")
    p0 = float(trace.power[0])
    sigma = snr_to_sigma(p0, noise.snr0_db)
    rng = np.random.default_rng(int(noise.seed))
    noisy = trace.power + sigma * rng.standard_normal(len(trace))
    clipped = noisy <= 0.0
    noisy = np.where(clipped, sigma * 1e-3, noisy)
    return PowerTrace(
        t=trace.t.copy(),
        power=noisy,
        noise_sigma=sigma,
        clipped_count=int(clipped.sum()),
    )


# ---------------------------------------------------------------------------
# serialization helpers (shared by the file round trip and the CLI)

def scenario_to_dict(s: StraightScenario | CurvedScenario) -> dict[str, Any]:
    if isinstance(s, StraightScenario):
        return {"kind": "straight", "d": s.d, "r0": s.r0, "v": s.v}
    if isinstance(s, CurvedScenario):
        return {
            "kind": "curved",
            "r_c": s.r_c,
            "w": s.w,
            "beta0": s.beta0,
            "r0": s.r0,
            "d0": s.d0,
        }
    raise DomainError(f"unknown scenario type {type(s).__name__}")


def scenario_from_dict(d: dict[str, Any]) -> StraightScenario | CurvedScenario:
    kind = d.get("kind")
    if kind == "straight":
        return StraightScenario(d=d["d"], r0=d["r0"], v=d["v"])
    if kind == "curved":
        return CurvedScenario(
            r_c=d["r_c"], w=d["w"], beta0=d["beta0"], r0=d.get("r0", 0.0), d0=d.get("d0", 0.0)
        )
    raise DomainError(f"unknown scenario kind {kind!r}")


def channel_to_dict(c: LogDistanceParams | LambertianParams) -> dict[str, Any]:
    if isinstance(c, LogDistanceParams):
        return {
            "form": "log_distance",
            "k_db": c.k_db,
            "gamma": c.gamma,
            "k_linear": c.k_linear,
        }
    if isinstance(c, LambertianParams):
        return {
            "form": "lambertian",
            "phi_half": c.phi_half,
            "a_r": c.a_r,
            "p_t": c.p_t,
            "gamma": c.gamma,
            "fov": c.fov,
        }
    raise DomainError(f"unknown channel type {type(c).__name__}")


def channel_from_dict(d: dict[str, Any]) -> LogDistanceParams | LambertianParams:
    form = d.get("form")
    if form == "log_distance":
        return LogDistanceParams(k_db=d["k_db"], gamma=d["gamma"], k_linear=d.get("k_linear"))
    if form == "lambertian":
        return LambertianParams(
            phi_half=d["phi_half"], a_r=d["a_r"], p_t=d["p_t"], gamma=d["gamma"], fov=d["fov"]
        )
    raise DomainError(f"unknown channel form {form!r}")


def save_trace(
    trace: PowerTrace,
    csv_path: str | Path,
    scenario: StraightScenario | CurvedScenario | None = None,
    channel: LogDistanceParams | LambertianParams | None = None,
    sampling: SamplingSpec | None = None,
    noise: NoiseSpec | None = None,
) -> Path:
    """Write `t_s,power_w` CSV plus a JSON metadata sidecar.

    The sidecar carries scenario, channel constants, sampling and noise
    spec with full float precision: enough to regenerate the trace
    bit-exactly. Returns the sidecar path (csv_path + '.meta.json').
    """
    csv_path = Path(csv_path)
    with open(csv_path, "w", newline="\n") as fh:
        fh.write("t_s,power_w\n")
        # tolist() yields Python floats whose repr is shortest-roundtrip
        for t, p in zip(trace.t.tolist(), trace.power.tolist()):
            fh.write(f"{t!r},{p!r}\n")
    meta = {
        "artifact_version": "0.1.0",
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "scenario": scenario_to_dict(scenario) if scenario is not None else None,
        "channel": channel_to_dict(channel) if channel is not None else None,
        "sampling": (
            {"dt": sampling.dt, "t_start": sampling.t_start, "duration": sampling.duration}
            if sampling is not None
            else None
        ),
        "noise": (
            {"snr0_db": noise.snr0_db, "seed": int(noise.seed)} if noise is not None else None
        ),
        "noise_sigma": trace.noise_sigma,
        "clipped_count": trace.clipped_count,
    }
    meta_path = csv_path.with_name(csv_path.name + ".meta.json")
    with open(meta_path, "w") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
    return meta_path


def load_trace(csv_path: str | Path) -> tuple[PowerTrace, dict[str, Any] | None]:
    """Read a trace CSV (and its sidecar when present) back into memory.

    Malformed rows raise TraceFormatError naming the 1-based line number.
    """
    csv_path = Path(csv_path)
    ts: list[float] = []
    ps: list[float] = []
    with open(csv_path, newline="") as fh:
        header = fh.readline().strip()
        if header != "t_s,power_w":
            raise TraceFormatError(f"{csv_path}:1: expected header 't_s,power_w', got {header!r}")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise TraceFormatError(f"{csv_path}:{lineno}: expected 2 fields, got {len(parts)}")
            try:
                ts.append(float(parts[0]))
                ps.append(float(parts[1]))
            except ValueError:
                raise TraceFormatError(f"{csv_path}:{lineno}: non-numeric row {line!r}") from None
    if len(ts) < 2:
        raise TraceFormatError(f"{csv_path}: trace needs at least 2 samples, got {len(ts)}")
    meta_path = csv_path.with_name(csv_path.name + ".meta.json")
    meta = None
    if meta_path.exists():
        with open(meta_path) as fh:
            meta = json.load(fh)
    sigma = float(meta["noise_sigma"]) if meta and meta.get("noise_sigma") is not None else 0.0
    clipped = int(meta["clipped_count"]) if meta and meta.get("clipped_count") is not None else 0
    return (
        PowerTrace(t=np.array(ts), power=np.array(ps), noise_sigma=sigma, clipped_count=clipped),
        meta,
    )
