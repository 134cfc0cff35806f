import numpy as np
import pytest

from minplus_so3 import so3
from minplus_so3.config import ConfigError, parse_config_text, resolve_run
from minplus_so3.runner import run, run_from_settings

CASE3_OVERRIDES = """\
# overrides on top of a preset
scenario = case3
steps = 25
seed = 42
dt = 0.05
prune_cap = 64
k_inv_diag = 1.0, 2.0, 3.0
z_magnitudes = 0.25 0.5 1.0
"""


def test_parse_basic_types():
    settings = parse_config_text("scenario = case1\nsteps = 7\ndt = 0.2\nswap_case3_dirs = true\n")
    assert settings == {"scenario": "case1", "steps": 7, "dt": 0.2, "swap_case3_dirs": True}


def test_parse_skips_comments_and_blanks():
    settings = parse_config_text("\n# a comment\n  \nseed = 3\n")
    assert settings == {"seed": 3}


def test_parse_lists_accept_commas_and_spaces():
    settings = parse_config_text("drift_coeffs = 1.0,0.0 ,2.5\nprocess_noise_dirs = 3 4\n")
    assert settings["drift_coeffs"] == [1.0, 0.0, 2.5]
    assert settings["process_noise_dirs"] == [3, 4]


@pytest.mark.parametrize("raw,expected", [("yes", True), ("off", False), ("1", True), ("FALSE", False)])
def test_parse_bool_spellings(raw, expected):
    assert parse_config_text(f"swap_case3_dirs = {raw}\n") == {"swap_case3_dirs": expected}


def test_parse_unknown_key_names_it():
    with pytest.raises(ConfigError, match="prune_kap"):
        parse_config_text("prune_kap = 10\n")


def test_parse_bad_int_names_key():
    with pytest.raises(ConfigError, match="steps"):
        parse_config_text("steps = soon\n")


def test_parse_wrong_arity_names_key():
    with pytest.raises(ConfigError, match="k_inv_diag"):
        parse_config_text("k_inv_diag = 1.0 2.0\n")


def test_parse_rejects_non_assignment_line():
    with pytest.raises(ConfigError):
        parse_config_text("just some words\n")


def test_resolve_preset_overlay():
    setup = resolve_run(parse_config_text(CASE3_OVERRIDES))
    assert setup.name == "case3"
    assert setup.scenario.steps == 25
    assert setup.scenario.seed == 42
    assert setup.scenario.dt == 0.05
    assert setup.filter_cfg.dt == 0.05
    assert setup.filter_cfg.prune_cap == 64
    np.testing.assert_array_equal(setup.filter_cfg.weights.k_inv, np.diag([1.0, 2.0, 3.0]))
    assert len(setup.filter_cfg.zset) == 19  # zero + 3 magnitudes * 6 directions
    # untouched preset fields survive the overlay
    assert setup.scenario.process_noise.directions == (3, 4)
    np.testing.assert_array_equal(setup.scenario.drift, so3.basis_element(1))


def test_resolve_custom_defaults():
    setup = resolve_run({})
    assert setup.name == "custom"
    assert setup.scenario.steps == 100
    assert setup.scenario.dt == 0.1
    assert setup.filter_cfg.window_len == 10
    assert setup.filter_cfg.prune_cap == 500
    np.testing.assert_array_equal(setup.scenario.drift, np.zeros((3, 3)))
    np.testing.assert_array_equal(setup.filter_cfg.weights.l_inv, np.eye(3))


def test_resolve_drift_and_init_error_coefficients():
    setup = resolve_run({"drift_coeffs": [0.0, 1.0, 0.0], "init_error_coeffs": [0.2, 0.0, 0.0]})
    np.testing.assert_array_equal(setup.scenario.drift, so3.basis_element(3))
    np.testing.assert_allclose(setup.scenario.initial_estimate_error, 0.2 * so3.basis_element(1))


def test_resolve_swap_exchanges_noise_directions():
    plain = resolve_run({"scenario": "case3"})
    swapped = resolve_run({"scenario": "case3", "swap_case3_dirs": True})
    assert plain.scenario.process_noise.directions == (3, 4)
    assert plain.scenario.measurement_noise.directions == (1, 2)
    assert swapped.scenario.process_noise.directions == (1, 2)
    assert swapped.scenario.measurement_noise.directions == (3, 4)
    # kinds and scales stay with their roles
    assert swapped.scenario.process_noise.scale == plain.scenario.process_noise.scale
    assert swapped.scenario.measurement_noise.scale == plain.scenario.measurement_noise.scale


def test_resolve_rejects_unknown_scenario():
    with pytest.raises(ConfigError, match="scenario"):
        resolve_run({"scenario": "case17"})


def test_resolve_rejects_unknown_key():
    with pytest.raises(ConfigError, match="window"):
        resolve_run({"window": 5})


def test_resolve_rejects_bad_noise_kind():
    with pytest.raises(ConfigError, match="process_noise_kind"):
        resolve_run({"process_noise_kind": "laplace"})


def test_resolve_rejects_indefinite_weight():
    with pytest.raises(ConfigError, match="k_inv_diag"):
        resolve_run({"k_inv_diag": [1.0, -1.0, 1.0]})


def test_resolve_rejects_bad_steps():
    with pytest.raises(ConfigError):
        resolve_run({"steps": 0})


def test_run_produces_one_record_per_step():
    setup = resolve_run({"scenario": "case1", "steps": 12, "seed": 5})
    records, summary = run(setup)
    assert len(records) == 12
    assert summary.steps == 12
    for k, rec in enumerate(records, start=1):
        assert rec.t == pytest.approx(k * setup.scenario.dt)
        assert rec.term_count >= 1


def test_run_starts_estimate_at_initial_error():
    _, records, _ = run_from_settings(
        {"steps": 1, "init_error_coeffs": [0.4, 0.0, 0.0], "meas_noise_scale": 0.0, "process_noise_scale": 0.0}
    )
    # after one clean step the estimate has already pulled back toward truth
    assert records[0].tracking_error < 2.0 * (1.0 - np.cos(0.4))


def test_run_from_settings_deterministic():
    a = run_from_settings({"scenario": "case2", "steps": 20, "seed": 9})[1]
    b = run_from_settings({"scenario": "case2", "steps": 20, "seed": 9})[1]
    for ra, rb in zip(a, b):
        assert ra.value == rb.value
        np.testing.assert_array_equal(ra.r_hat, rb.r_hat)
