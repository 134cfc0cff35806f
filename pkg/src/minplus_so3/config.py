"""Run configuration: flat key-value files and their resolution to a setup.

A config names a scenario preset (or "custom") and may override any scenario
or filter field.  The same settings dictionary backs the config-file CLI
path and the service's JSON request body, so both resolve identically.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Mapping

import numpy as np

from .expansion import DisturbanceSet, Weights
from .runtime import FilterConfig
from .simulate import (
    DEFAULT_DT,
    DEFAULT_MEAS_SCALE,
    DEFAULT_PROCESS_SCALE,
    DEFAULT_STEPS,
    NOISE_KINDS,
    NoiseModel,
    ScenarioConfig,
    scenario_preset,
)
from .so3 import hat

DEFAULT_WINDOW_LEN = 10
DEFAULT_PRUNE_CAP = 500
DEFAULT_Z_MAGNITUDES = (0.5, 1.0)


class ConfigError(ValueError):
    """Invalid run settings; ``key`` names the offending entry."""

    def __init__(self, key: str, message: str):
        super().__init__(f"config key '{key}': {message}")
        self.key = key


_SCALAR_KEYS = {
    "scenario": str,
    "dt": float,
    "steps": int,
    "seed": int,
    "window_len": int,
    "prune_cap": int,
    "process_noise_kind": str,
    "process_noise_scale": float,
    "meas_noise_kind": str,
    "meas_noise_scale": float,
    "swap_case3_dirs": bool,
}
_FLOAT_LIST_KEYS = {
    "k_inv_diag": 3,
    "l_inv_diag": 3,
    "drift_coeffs": 3,
    "init_error_coeffs": 3,
    "z_magnitudes": 0,  # any length >= 1
}
_INT_LIST_KEYS = ("process_noise_dirs", "meas_noise_dirs")

KNOWN_KEYS = tuple(_SCALAR_KEYS) + tuple(_FLOAT_LIST_KEYS) + _INT_LIST_KEYS

_TRUE = ("true", "yes", "on", "1")
_FALSE = ("false", "no", "off", "0")


def _split_list(raw: str) -> list[str]:
    return [tok for tok in raw.replace(",", " ").split() if tok]


def _parse_value(key: str, raw: str) -> Any:
    if key in _SCALAR_KEYS:
        target = _SCALAR_KEYS[key]
        if target is str:
            return raw
        if target is bool:
            low = raw.strip().lower()
            if low in _TRUE:
                return True
            if low in _FALSE:
                return False
            raise ConfigError(key, f"expected a boolean, got {raw!r}")
        try:
            return target(raw)
        except ValueError:
            raise ConfigError(key, f"expected {target.__name__}, got {raw!r}") from None
    if key in _FLOAT_LIST_KEYS:
        try:
            values = [float(tok) for tok in _split_list(raw)]
        except ValueError:
            raise ConfigError(key, f"expected a list of reals, got {raw!r}") from None
        want = _FLOAT_LIST_KEYS[key]
        if want and len(values) != want:
            raise ConfigError(key, f"expected {want} reals, got {len(values)}")
        if not values:
            raise ConfigError(key, "expected at least one real")
        return values
    if key in _INT_LIST_KEYS:
        try:
            values = [int(tok) for tok in _split_list(raw)]
        except ValueError:
            raise ConfigError(key, f"expected a list of integers, got {raw!r}") from None
        if not values:
            raise ConfigError(key, "expected at least one integer")
        return values
    raise ConfigError(key, "unknown key")


def parse_config_text(text: str) -> dict[str, Any]:
    """Parse ``key = value`` lines; '#' comments and blank lines are ignored."""
    settings: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(stripped.split()[0], f"line {lineno} is not a 'key = value' entry")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        settings[key] = _parse_value(key, raw.strip())
    return settings


@dataclass(frozen=True)
class RunSetup:
    """Fully resolved scenario and filter configuration for one run."""

    name: str
    scenario: ScenarioConfig
    filter_cfg: FilterConfig


def _custom_base() -> ScenarioConfig:
    return ScenarioConfig(
        name="custom",
        drift=np.zeros((3, 3)),
        process_noise=NoiseModel("gaussian", (1,), DEFAULT_PROCESS_SCALE),
        measurement_noise=NoiseModel("gaussian", (1,), DEFAULT_MEAS_SCALE),
        initial_estimate_error=np.zeros((3, 3)),
        dt=DEFAULT_DT,
        steps=DEFAULT_STEPS,
        seed=0,
    )


def _noise_override(key_prefix: str, base: NoiseModel, settings: Mapping[str, Any]) -> NoiseModel:
    kind = settings.get(f"{key_prefix}_kind", base.kind)
    if kind not in NOISE_KINDS:
        raise ConfigError(f"{key_prefix}_kind", f"must be one of {NOISE_KINDS}, got {kind!r}")
    dirs = tuple(settings.get(f"{key_prefix}_dirs", base.directions))
    scale = float(settings.get(f"{key_prefix}_scale", base.scale))
    try:
        return NoiseModel(kind, dirs, scale)
    except ValueError as exc:
        raise ConfigError(key_prefix, str(exc)) from None


def resolve_run(settings: Mapping[str, Any]) -> RunSetup:
    """Overlay settings on the named preset (or the neutral custom base)."""
    for key in settings:
        if key not in KNOWN_KEYS:
            raise ConfigError(key, "unknown key")

    name = settings.get("scenario", "custom")
    try:
        scenario = _custom_base() if name == "custom" else scenario_preset(name)
    except ValueError as exc:
        raise ConfigError("scenario", str(exc)) from None

    overrides: dict[str, Any] = {}
    if "dt" in settings:
        overrides["dt"] = float(settings["dt"])
    if "steps" in settings:
        overrides["steps"] = int(settings["steps"])
    if "seed" in settings:
        overrides["seed"] = int(settings["seed"])
    if "drift_coeffs" in settings:
        overrides["drift"] = hat(settings["drift_coeffs"])
    if "init_error_coeffs" in settings:
        overrides["initial_estimate_error"] = hat(settings["init_error_coeffs"])
    process = _noise_override("process_noise", scenario.process_noise, settings)
    meas = _noise_override("meas_noise", scenario.measurement_noise, settings)
    if settings.get("swap_case3_dirs", False):
        process, meas = (
            replace(process, directions=meas.directions),
            replace(meas, directions=process.directions),
        )
    overrides["process_noise"] = process
    overrides["measurement_noise"] = meas
    try:
        scenario = replace(scenario, **overrides)
    except ValueError as exc:
        raise ConfigError("scenario", str(exc)) from None

    try:
        weights = Weights(
            np.diag(settings.get("k_inv_diag", (1.0, 1.0, 1.0))),
            np.diag(settings.get("l_inv_diag", (1.0, 1.0, 1.0))),
        )
    except ValueError as exc:
        raise ConfigError("k_inv_diag", str(exc)) from None
    try:
        zset = DisturbanceSet.signed_grid(tuple(settings.get("z_magnitudes", DEFAULT_Z_MAGNITUDES)))
    except ValueError as exc:
        raise ConfigError("z_magnitudes", str(exc)) from None
    try:
        filter_cfg = FilterConfig(
            dt=scenario.dt,
            window_len=int(settings.get("window_len", DEFAULT_WINDOW_LEN)),
            prune_cap=int(settings.get("prune_cap", DEFAULT_PRUNE_CAP)),
            weights=weights,
            zset=zset,
        )
    except ValueError as exc:
        raise ConfigError("window_len", str(exc)) from None

    return RunSetup(name=name, scenario=scenario, filter_cfg=filter_cfg)
