"""Command-line front end.

Subcommands: simulate (config -> trace CSV + sidecar), estimate (trace ->
speed JSON on stdout), fit (ray-file manifest -> channel constants JSON),
figure (bundled experiment presets -> dataset CSV + sidecar, optional SVG).

Config files are JSON validated against CONFIG_SCHEMA. At this boundary
angles are degrees and speeds carry an explicit unit suffix ("20 m/s" or
"72 km/h"); everything is converted to radians / m/s on entry.

Exit codes: 0 success, 2 input/validation error, 3 domain/estimation
error, 4 I/O error. Machine-readable results go to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any

from . import __version__
from .channel import (
    LambertianParams,
    LogDistanceParams,
    fit_log_distance,
    path_loss_samples,
)
from .errors import (
    DegenerateWindowError,
    DomainError,
    EmptyInputError,
    EnergyError,
    NoSolutionError,
    OutOfSegmentError,
    SingularFitError,
    SweepError,
    TraceFormatError,
    UnderdeterminedError,
)
from .estimator import estimate_curved, estimate_straight, estimate_straight_lambertian
from .geometry import CurvedScenario, StraightScenario
from .harness import reproduce_figure, write_figure
from .trace import (
    NoiseSpec,
    SamplingSpec,
    add_noise,
    load_trace,
    save_trace,
    synthesize_trace,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ESTIMATION = 3
EXIT_IO = 4

_INPUT_ERRORS = (TraceFormatError, EnergyError, EmptyInputError)
_ESTIMATION_ERRORS = (
    OutOfSegmentError,
    DomainError,
    SingularFitError,
    UnderdeterminedError,
    NoSolutionError,
    DegenerateWindowError,
    SweepError,
)

CONFIG_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "vlspeed simulation config",
    "type": "object",
    "required": ["scenario", "channel", "sampling"],
    "additionalProperties": False,
    "properties": {
        "scenario": {
            "type": "object",
            "oneOf": [
                {
                    "type": "object",
                    "properties": {
                        "kind": {"const": "straight"},
                        "d": {"type": "number", "exclusiveMinimum": 0,
                              "description": "perpendicular detector offset [m]"},
                        "r0": {"type": "number", "exclusiveMinimum": 0,
                               "description": "range at measurement start [m]"},
                        "speed": {"type": "string",
                                  "description": "vehicle speed with unit suffix, e.g. '20 m/s' or '72 km/h'"},
                    },
                    "required": ["kind", "d", "r0", "speed"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {
                        "kind": {"const": "curved"},
                        "r_c": {"type": "number", "exclusiveMinimum": 0,
                                "description": "curvature radius [m]"},
                        "w": {"type": "number", "exclusiveMinimum": 0,
                              "description": "angular speed [rad/s]"},
                        "beta0_deg": {"type": "number", "exclusiveMinimum": 0, "maximum": 180,
                                      "description": "arc angle at measurement start [deg]"},
                        "r0": {"type": "number", "minimum": 0,
                               "description": "longitudinal detector offset from curve end [m]"},
                        "d0": {"type": "number", "minimum": 0,
                               "description": "lateral detector offset from curve end [m]"},
                    },
                    "required": ["kind", "r_c", "w", "beta0_deg"],
                    "additionalProperties": False,
                },
            ],
        },
        "channel": {
            "type": "object",
            "properties": {
                "model": {"enum": ["simulated", "lambertian"]},
                "k_db": {"type": "number", "description": "gain constant [dB]"},
                "gamma": {"type": "number", "exclusiveMinimum": 0,
                          "description": "path-loss exponent"},
                "phi_half_deg": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 90,
                                 "description": "half-power semi-angle [deg]"},
                "fov_deg": {"type": "number", "exclusiveMinimum": 0, "maximum": 90,
                            "description": "receiver field of view [deg]"},
            },
            "required": ["model", "k_db", "gamma"],
            "additionalProperties": False,
        },
        "sampling": {
            "type": "object",
            "properties": {
                "dt": {"type": "number", "exclusiveMinimum": 0, "description": "sample interval [s]"},
                "t_start": {"type": "number", "minimum": 0, "description": "window start [s]"},
                "duration": {"type": "number", "exclusiveMinimum": 0, "description": "window length [s]"},
            },
            "required": ["dt", "duration"],
            "additionalProperties": False,
        },
        "noise": {
            "type": "object",
            "properties": {
                "snr0_db": {"type": "number", "description": "SNR at the window's first sample [dB]"},
                "seed": {"type": "integer", "minimum": 0,
                         "description": "64-bit seed for the noise stream"},
            },
            "required": ["snr0_db"],
            "additionalProperties": False,
        },
    },
}


def _parse_speed(text: str) -> float:
    """Parse '20 m/s' or '72 km/h' into m/s; the suffix is mandatory."""
    parts = text.strip().split()
    if len(parts) != 2 or parts[1] not in ("m/s", "km/h"):
        raise TraceFormatError(
            f"speed must look like '20 m/s' or '72 km/h', got {text!r}"
        )
    try:
        value = float(parts[0])
    except ValueError:
        raise TraceFormatError(f"speed value is not a number: {parts[0]!r}") from None
    return value / 3.6 if parts[1] == "km/h" else value


def _validate_config(cfg: dict[str, Any]) -> None:
    """Schema-check a config dict; raises TraceFormatError naming the field.

    The scenario branch is selected by its `kind` up front so validation
    errors point into the branch the user actually wrote.
    """
    import jsonschema

    scenario = cfg.get("scenario") if isinstance(cfg, dict) else None
    kind = scenario.get("kind") if isinstance(scenario, dict) else None
    if kind not in ("straight", "curved"):
        raise TraceFormatError("config field scenario.kind: must be 'straight' or 'curved'")
    schema = json.loads(json.dumps(CONFIG_SCHEMA))
    branch = 0 if kind == "straight" else 1
    schema["properties"]["scenario"] = schema["properties"]["scenario"]["oneOf"][branch]
    validator = jsonschema.Draft202012Validator(schema)
    err = jsonschema.exceptions.best_match(validator.iter_errors(cfg))
    if err is None:
        return
    path = ".".join(str(p) for p in err.absolute_path)
    if err.validator == "required":
        missing = err.message.split("'")[1]
        path = f"{path}.{missing}" if path else missing
    raise TraceFormatError(f"config field {path or '$'}: {err.message}")


def _scenario_from_config(d: dict[str, Any]) -> StraightScenario | CurvedScenario:
    if d["kind"] == "straight":
        return StraightScenario(d=d["d"], r0=d["r0"], v=_parse_speed(d["speed"]))
    return CurvedScenario(
        r_c=d["r_c"],
        w=d["w"],
        beta0=math.radians(d["beta0_deg"]),
        r0=d.get("r0", 0.0),
        d0=d.get("d0", 0.0),
    )


def _channel_from_config(d: dict[str, Any]):
    """Returns (params used for synthesis, constants row, lambertian-or-None)."""
    k = LogDistanceParams(k_db=d["k_db"], gamma=d["gamma"])
    if d["model"] == "simulated":
        return k, k, None
    lam = LambertianParams.from_gain_db(
        k_db=d["k_db"],
        phi_half=math.radians(d.get("phi_half_deg", 40.0)),
        gamma=d["gamma"],
        fov=math.radians(d.get("fov_deg", 70.0)),
    )
    return lam, k, lam


def cmd_simulate(args: argparse.Namespace) -> int:
    with open(args.config) as fh:
        cfg = json.load(fh)
    _validate_config(cfg)
    scenario = _scenario_from_config(cfg["scenario"])
    channel, _, lam = _channel_from_config(cfg["channel"])
    samp = cfg["sampling"]
    sampling = SamplingSpec(dt=samp["dt"], t_start=samp.get("t_start", 0.0), duration=samp["duration"])
    if isinstance(scenario, CurvedScenario) and lam is None:
        # the arc-angle law needs an emission order even for the power-law row
        lam = LambertianParams.from_gain_db(
            k_db=cfg["channel"]["k_db"],
            phi_half=math.radians(cfg["channel"].get("phi_half_deg", 40.0)),
            gamma=cfg["channel"]["gamma"],
            fov=math.radians(cfg["channel"].get("fov_deg", 70.0)),
        )
    trace = synthesize_trace(scenario, channel, sampling, lambertian=lam)
    noise = None
    if "noise" in cfg:
        seed = cfg["noise"].get("seed", 0)
        if args.seed is not None:
            seed = args.seed
        noise = NoiseSpec(snr0_db=cfg["noise"]["snr0_db"], seed=seed)
        trace = add_noise(trace, noise)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "trace.csv"
    # curved synthesis depends on the emission order; persist the full
    # lambertian parameter set so estimation can reconstruct the model
    save_channel = lam if isinstance(scenario, CurvedScenario) and lam is not None else channel
    save_trace(trace, csv_path, scenario=scenario, channel=save_channel, sampling=sampling, noise=noise)
    print(json.dumps({"trace": str(csv_path), "samples": len(trace)}))
    return EXIT_OK


def _resolve_estimation_channel(args: argparse.Namespace, channel_meta: dict[str, Any] | None):
    """(k, lam, model) resolved from flags, falling back to the sidecar.

    Sidecar values are used verbatim (including the exact linear gain) so
    estimating a freshly simulated trace is an exact round trip.
    """
    model = args.model
    k = None
    lam = None
    if channel_meta:
        form = channel_meta.get("form")
        if form == "log_distance":
            k = LogDistanceParams(
                k_db=channel_meta["k_db"],
                gamma=channel_meta["gamma"],
                k_linear=channel_meta.get("k_linear"),
            )
            model = model or "simulated"
        elif form == "lambertian":
            lam = LambertianParams(
                phi_half=channel_meta["phi_half"],
                a_r=channel_meta["a_r"],
                p_t=channel_meta["p_t"],
                gamma=channel_meta["gamma"],
                fov=channel_meta["fov"],
            )
            k = LogDistanceParams.from_linear(lam.c_factor, lam.gamma)
            model = model or "lambertian"
    if args.k_db is not None or args.gamma is not None or k is None:
        if args.k_db is None or args.gamma is None:
            raise TraceFormatError(
                "channel constants unknown: pass both --k-db and --gamma or provide a sidecar"
            )
        k = LogDistanceParams(k_db=args.k_db, gamma=args.gamma)
        lam = None
    if lam is None:
        lam = LambertianParams.from_gain_db(
            k_db=k.k_db,
            phi_half=math.radians(args.phi_half_deg),
            gamma=k.gamma,
            fov=math.radians(args.fov_deg),
        )
    return k, lam, model or "simulated"


def cmd_estimate(args: argparse.Namespace) -> int:
    trace, meta = load_trace(args.trace)
    mode = args.mode
    scenario_meta = (meta or {}).get("scenario")
    channel_meta = (meta or {}).get("channel")
    kind = args.scenario or (scenario_meta or {}).get("kind")
    if kind is None:
        raise TraceFormatError("scenario kind unknown: pass --scenario or provide a metadata sidecar")
    k, lam, model = _resolve_estimation_channel(args, channel_meta)

    if kind == "curved":
        r_c = args.r_c if args.r_c is not None else (scenario_meta or {}).get("r_c")
        if r_c is None:
            raise TraceFormatError("curved estimation needs --r-c or a sidecar with the radius")
        est = estimate_curved(trace, lam, k, r_c)
    elif model == "lambertian":
        d = args.d if args.d is not None else (scenario_meta or {}).get("d")
        if d is None:
            raise TraceFormatError("straight estimation needs --d or a sidecar with the offset")
        est = estimate_straight_lambertian(trace, lam, d, mode=mode or "exact")
    else:
        d = args.d if args.d is not None else (scenario_meta or {}).get("d")
        if d is None:
            raise TraceFormatError("straight estimation needs --d or a sidecar with the offset")
        est = estimate_straight(trace, k, d)

    print(
        json.dumps(
            {
                "v_hat_mps": est.v_hat,
                "w_hat_rad_per_s": est.w_hat,
                "intercept_hat": est.intercept_hat,
                "rms_residual": est.rms_residual,
                "samples_used": est.samples_used,
                "clamped_count": est.clamped_count,
                "model": model,
                "mode": (mode or "exact") if model == "lambertian" and kind != "curved" else None,
            }
        )
    )
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    samples = path_loss_samples(args.manifest)
    if len(samples) < 2:
        raise UnderdeterminedError(
            f"manifest lists {len(samples)} distance file(s); need at least 2"
        )
    fitted = fit_log_distance(samples)
    print(json.dumps({"k_db": fitted.k_db, "gamma": fitted.gamma, "n_samples": len(samples)}))
    return EXIT_OK


def cmd_figure(args: argparse.Namespace) -> int:
    from .harness import FIGURE_IDS

    if args.fig_id not in FIGURE_IDS:
        raise TraceFormatError(f"unknown figure id {args.fig_id}; valid ids are 6..13")
    if args.trials is not None and args.trials < 1:
        raise TraceFormatError(f"--trials must be >= 1, got {args.trials}")
    result = reproduce_figure(
        args.fig_id,
        trials=args.trials if args.trials is not None else 500,
        base_seed=args.seed if args.seed is not None else 0,
    )
    paths = write_figure(result, args.out, svg=args.svg)
    print(json.dumps({"files": [str(p) for p in paths]}))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vlspeed",
        description="Headlamp-intensity vehicle speed estimation toolkit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="synthesize a received-power trace from a JSON config")
    p_sim.add_argument("--config", required=True, help="JSON config path (see CONFIG_SCHEMA)")
    p_sim.add_argument("--out", required=True, help="output directory")
    p_sim.add_argument("--seed", type=int, default=None, help="override the noise seed")
    p_sim.set_defaults(func=cmd_simulate)

    p_est = sub.add_parser("estimate", help="estimate vehicle speed from a trace CSV")
    p_est.add_argument("trace", help="trace CSV path (sidecar metadata is auto-detected)")
    p_est.add_argument("--model", choices=["simulated", "lambertian"], default=None)
    p_est.add_argument("--mode", choices=["exact", "shortcut"], default=None,
                       help="inversion mode for the lambertian model")
    p_est.add_argument("--scenario", choices=["straight", "curved"], default=None)
    p_est.add_argument("--k-db", type=float, default=None, help="channel gain constant [dB]")
    p_est.add_argument("--gamma", type=float, default=None, help="path-loss exponent")
    p_est.add_argument("--d", type=float, default=None, help="perpendicular offset [m] (straight)")
    p_est.add_argument("--r-c", type=float, default=None, help="curvature radius [m] (curved)")
    p_est.add_argument("--phi-half-deg", type=float, default=40.0)
    p_est.add_argument("--fov-deg", type=float, default=70.0)
    p_est.set_defaults(func=cmd_estimate)

    p_fit = sub.add_parser("fit", help="fit channel constants from a ray-file manifest")
    p_fit.add_argument("manifest", help="CSV manifest: distance_m,file")
    p_fit.set_defaults(func=cmd_fit)

    p_fig = sub.add_parser("figure", help="emit a bundled experiment dataset (ids 6..13)")
    p_fig.add_argument("fig_id", type=int, help="figure id, 6..13")
    p_fig.add_argument("--out", default=".", help="output directory")
    p_fig.add_argument("--trials", type=int, default=None, help="Monte Carlo trials per point")
    p_fig.add_argument("--seed", type=int, default=None, help="base seed")
    p_fig.add_argument("--svg", action="store_true", help="also render an SVG line plot")
    p_fig.set_defaults(func=cmd_figure)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:
        print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _ESTIMATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
