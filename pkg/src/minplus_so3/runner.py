"""End-to-end run pipeline: simulate a scenario and track it with the filter.

This is the single entry point behind both the CLI and the HTTP service, so a
given settings mapping produces byte-identical CSV output on either path.
"""

from __future__ import annotations

from typing import Any, Mapping

from .config import RunSetup, resolve_run
from .metrics import RunSummary, measurement_noise_metric, summarize, tracking_error
from .runtime import filter_init, filter_step
from .simulate import StepRecord, simulate
from .so3 import expm


def run(setup: RunSetup) -> tuple[list[StepRecord], RunSummary]:
    """Simulate ``setup.scenario`` and filter it, one record per step."""
    r_hat0 = expm(setup.scenario.initial_estimate_error)
    state = filter_init(setup.filter_cfg, r_hat0)
    records: list[StepRecord] = []
    for t, r_true, y, drift in simulate(setup.scenario):
        state, r_hat, value = filter_step(state, y, drift, setup.filter_cfg)
        records.append(
            StepRecord(
                t=t,
                r_true=r_true,
                y=y,
                r_hat=r_hat,
                meas_noise=measurement_noise_metric(y, r_true),
                tracking_error=tracking_error(r_hat, r_true),
                value=value,
                term_count=state.last_term_count,
            )
        )
    return records, summarize(records)


def run_from_settings(settings: Mapping[str, Any]) -> tuple[RunSetup, list[StepRecord], RunSummary]:
    setup = resolve_run(settings)
    records, summary = run(setup)
    return setup, records, summary
