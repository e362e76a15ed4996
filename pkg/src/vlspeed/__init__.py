"""Vehicle speed estimation from roadside headlamp-intensity traces.

The package models a vehicle headlamp as a visible-light transmitter,
synthesizes the received-power trace seen by a fixed roadside
photodetector on straight and curved roads, recovers the vehicle speed
from that trace with least-squares inversion, and benchmarks the result
against the cosine-effect limit of conventional Doppler speed detectors.
"""

__version__ = "0.1.0"

from .baseline import (
    RadarGeometry,
    radar_accuracy_curved,
    radar_accuracy_straight,
    radar_measured_curved,
    radar_measured_straight,
)
from .channel import (
    LAMBERTIAN_CHANNEL_FIT,
    SIMULATED_CHANNEL_FIT,
    LambertianParams,
    LogDistanceParams,
    PathLossSample,
    RayRecord,
    curved_power,
    fit_log_distance,
    integrate_cir,
    lambertian_order,
    lambertian_power,
    log_distance_power,
)
from .errors import VlspeedError
from .estimator import (
    SpeedEstimate,
    estimate_beta,
    estimate_curved,
    estimate_straight,
    estimate_straight_lambertian,
    fit_linear_ls,
    invert_lambertian_range,
    invert_log_distance,
    range_transform,
)
from .geometry import CurvedScenario, Pose, StraightScenario, curved_pose, straight_pose
from .harness import (
    AccuracyCurve,
    ExperimentConfig,
    FigureResult,
    accuracy,
    mix_seed,
    reproduce_figure,
    run_accuracy_sweep,
    write_figure,
)
from .trace import (
    NoiseSpec,
    PowerTrace,
    SamplingSpec,
    add_noise,
    load_trace,
    save_trace,
    snr_to_sigma,
    synthesize_trace,
)

__all__ = [
    "__version__",
    "StraightScenario",
    "CurvedScenario",
    "Pose",
    "straight_pose",
    "curved_pose",
    "LambertianParams",
    "LogDistanceParams",
    "RayRecord",
    "PathLossSample",
    "lambertian_order",
    "lambertian_power",
    "log_distance_power",
    "curved_power",
    "integrate_cir",
    "fit_log_distance",
    "SIMULATED_CHANNEL_FIT",
    "LAMBERTIAN_CHANNEL_FIT",
    "SamplingSpec",
    "NoiseSpec",
    "PowerTrace",
    "synthesize_trace",
    "snr_to_sigma",
    "add_noise",
    "save_trace",
    "load_trace",
    "SpeedEstimate",
    "invert_log_distance",
    "range_transform",
    "fit_linear_ls",
    "estimate_straight",
    "invert_lambertian_range",
    "estimate_straight_lambertian",
    "estimate_beta",
    "estimate_curved",
    "RadarGeometry",
    "radar_measured_straight",
    "radar_measured_curved",
    "radar_accuracy_straight",
    "radar_accuracy_curved",
    "accuracy",
    "mix_seed",
    "ExperimentConfig",
    "AccuracyCurve",
    "run_accuracy_sweep",
    "FigureResult",
    "reproduce_figure",
    "write_figure",
    "VlspeedError",
]
