"""Per-step diagnostics and run-level aggregation.

Both metrics are the trace form tr(I - A^T B) = 2 * (1 - cos(angle)), so they
live in [0, 4], vanish exactly on agreement and hit 4 at a half turn.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .simulate import StepRecord


def measurement_noise_metric(y: np.ndarray, r_true: np.ndarray) -> float:
    """tr(I - Y^T R): how far the measurement sits from the true attitude."""
    return 3.0 - float(np.einsum("ij,ij->", np.asarray(y, float), np.asarray(r_true, float)))


def tracking_error(r_hat: np.ndarray, r_true: np.ndarray) -> float:
    """tr(I - Rhat^T R): how far the estimate sits from the true attitude."""
    return 3.0 - float(np.einsum("ij,ij->", np.asarray(r_hat, float), np.asarray(r_true, float)))


@dataclass(frozen=True)
class RunSummary:
    mean_te: float
    max_te: float
    mean_meas_noise: float
    final_te: float
    steps: int


def summarize(records: list[StepRecord]) -> RunSummary:
    """Arithmetic mean / max / final over a run's step records."""
    if not records:
        raise ValueError("cannot summarize an empty run")
    te = np.array([rec.tracking_error for rec in records])
    mn = np.array([rec.meas_noise for rec in records])
    return RunSummary(
        mean_te=float(te.mean()),
        max_te=float(te.max()),
        mean_meas_noise=float(mn.mean()),
        final_te=float(te[-1]),
        steps=len(records),
    )
