"""Deterministic minimum-energy attitude filtering on SO(3) via min-plus expansions."""

from .expansion import (
    AffineTerm,
    DisturbanceSet,
    ValueExpansion,
    Weights,
    evaluate,
    evaluate_many,
    extract_estimate,
    initial_expansion,
    propagate,
    prune,
    term_min,
    term_minima,
)
from .metrics import RunSummary, measurement_noise_metric, summarize, tracking_error
from .runtime import FilterConfig, FilterState, filter_init, filter_step
from .simulate import NoiseModel, ScenarioConfig, StepRecord, scenario_preset, simulate
from .so3 import (
    basis_element,
    expm,
    geodesic_angle,
    hat,
    procrustes_max,
    project_so3,
    random_rotation,
    random_rotations,
    vee,
)

__all__ = [
    "AffineTerm",
    "DisturbanceSet",
    "FilterConfig",
    "FilterState",
    "NoiseModel",
    "RunSummary",
    "ScenarioConfig",
    "StepRecord",
    "ValueExpansion",
    "Weights",
    "basis_element",
    "evaluate",
    "evaluate_many",
    "expm",
    "extract_estimate",
    "filter_init",
    "filter_step",
    "geodesic_angle",
    "hat",
    "initial_expansion",
    "measurement_noise_metric",
    "procrustes_max",
    "project_so3",
    "propagate",
    "prune",
    "random_rotation",
    "random_rotations",
    "scenario_preset",
    "simulate",
    "summarize",
    "term_min",
    "term_minima",
    "tracking_error",
    "vee",
]

__version__ = "0.1.0"
