"""Sliding-window filter loop over the min-plus expansion.

Each step propagates the expansion against the new measurement, prunes to the
configured cap, and extracts the estimate.  When the window fills, the
expansion collapses to a fresh single-term cost centered at the current
estimate, which re-anchors the window.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .expansion import (
    DisturbanceSet,
    ValueExpansion,
    Weights,
    extract_estimate,
    initial_expansion,
    propagate,
    prune,
)
from .so3 import check_rotation


@dataclass(frozen=True)
class FilterConfig:
    """Step size, window length, pruning cap, weights and disturbance set."""

    dt: float
    window_len: int = 10
    prune_cap: int = 500
    weights: Weights = field(default_factory=Weights.identity)
    zset: DisturbanceSet = field(default_factory=DisturbanceSet.signed_grid)

    def __post_init__(self) -> None:
        if not self.dt > 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.window_len < 1:
            raise ValueError(f"window_len must be >= 1, got {self.window_len}")
        if self.prune_cap < 1:
            raise ValueError(f"prune_cap must be >= 1, got {self.prune_cap}")


@dataclass(frozen=True)
class FilterState:
    """Expansion plus the window bookkeeping around it.

    ``last_term_count`` records how many terms backed the most recent
    estimate (before any window collapse), for per-step logging.
    """

    expansion: ValueExpansion
    anchor: np.ndarray
    steps_in_window: int = 0
    last_term_count: int = 1


def filter_init(cfg: FilterConfig, r_hat0: np.ndarray) -> FilterState:
    """Fresh state anchored at the prior estimate; zero cost there."""
    r_hat0 = np.asarray(r_hat0, dtype=float)
    check_rotation(r_hat0)
    return FilterState(
        expansion=initial_expansion(cfg.weights, r_hat0),
        anchor=r_hat0,
        steps_in_window=0,
        last_term_count=1,
    )


def filter_step(
    st: FilterState, y: np.ndarray, a: np.ndarray, cfg: FilterConfig
) -> tuple[FilterState, np.ndarray, float]:
    """Ingest one measurement; return (new state, estimate, optimal value)."""
    expansion = prune(propagate(st.expansion, y, a, cfg.dt, cfg.zset, cfg.weights), cfg.prune_cap)
    r_hat, value = extract_estimate(expansion)
    steps = st.steps_in_window + 1
    if steps >= cfg.window_len:
        new_state = FilterState(
            expansion=initial_expansion(cfg.weights, r_hat),
            anchor=r_hat,
            steps_in_window=0,
            last_term_count=len(expansion),
        )
    else:
        new_state = FilterState(
            expansion=expansion,
            anchor=st.anchor,
            steps_in_window=steps,
            last_term_count=len(expansion),
        )
    return new_state, r_hat, value
