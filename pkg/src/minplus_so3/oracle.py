"""Brute-force references for certifying the expansion engine.

These evaluate the filtering cost directly, by enumerating disturbance
sequences and rolling states backward, with no use of the affine-term
recursion.  They exist to be slow and obviously right.
"""

from __future__ import annotations

import itertools
from typing import Callable

import numpy as np

from .runtime import FilterConfig
from .so3 import expm, random_rotations

# Enumeration guard: keeps |zset|^steps test runs under a minute.
MAX_SEQUENCES = 10**6


def brute_force_values(
    rs: np.ndarray,
    history: list[tuple[np.ndarray, np.ndarray]],
    cfg: FilterConfig,
    r_hat0: np.ndarray,
) -> np.ndarray:
    """Minimum accumulated cost of explaining ``history`` ending at each ``rs``.

    For every disturbance sequence, states are rolled backward from the
    candidate attitude through expm(-(a + z) * dt); the cost sums the
    disturbance energy 0.5*tr(z^T z)*dt and measurement mismatch
    0.5*tr(L_inv - L_inv R^T Y)*dt per step plus the initial-estimate
    penalty 0.5*tr(K_inv - Rhat0^T K_inv R0).
    """
    rs = np.asarray(rs, dtype=float)
    if rs.ndim == 2:
        rs = rs[None]
    steps = len(history)
    n_z = len(cfg.zset)
    if n_z**steps > MAX_SEQUENCES:
        raise ValueError(
            f"{n_z}^{steps} disturbance sequences exceed the {MAX_SEQUENCES} enumeration guard"
        )

    k_inv, l_inv = cfg.weights.k_inv, cfg.weights.l_inv
    tr_l = float(np.trace(l_inv))
    tr_k = float(np.trace(k_inv))
    zs = cfg.zset.stacked()
    z_energy = 0.5 * np.einsum("zij,zij->z", zs, zs) * cfg.dt
    # psis[j][zi] undoes step j+1 under disturbance zset[zi]
    psis = [
        np.stack([expm(-(np.asarray(a, float) + z) * cfg.dt) for z in cfg.zset])
        for _, a in history
    ]
    lys = [l_inv @ np.asarray(y, float).T for y, _ in history]
    m0 = np.asarray(r_hat0, float).T @ k_inv

    best = np.full(rs.shape[0], np.inf)
    for seq in itertools.product(range(n_z), repeat=steps):
        r = rs
        total = 0.0
        for j in range(steps - 1, -1, -1):
            # measurement mismatch at the state reached after step j+1
            meas = 0.5 * (tr_l - np.einsum("ij,bji->b", lys[j], r)) * cfg.dt
            total = total + float(z_energy[seq[j]]) + meas
            r = r @ psis[j][seq[j]]
        total = total + 0.5 * (tr_k - np.einsum("ij,bji->b", m0, r))
        best = np.minimum(best, total)
    return best


def brute_force_value(
    r: np.ndarray,
    history: list[tuple[np.ndarray, np.ndarray]],
    cfg: FilterConfig,
    r_hat0: np.ndarray,
) -> float:
    """Single-point variant of :func:`brute_force_values`."""
    return float(brute_force_values(np.asarray(r, dtype=float)[None], history, cfg, r_hat0)[0])


def grid_min_so3(
    f: Callable[[np.ndarray], float],
    n: int,
    seed: int = 0,
    vectorized: bool = False,
) -> tuple[np.ndarray, float]:
    """Minimize ``f`` over ``n`` seeded Haar-uniform rotations.

    The result upper-bounds the true minimum.  With ``vectorized`` the
    callable receives the whole (n, 3, 3) stack and returns (n,) values.
    """
    if n < 1:
        raise ValueError(f"need at least one sample, got {n}")
    rng = np.random.default_rng(seed)
    rs = random_rotations(n, rng)
    if vectorized:
        values = np.asarray(f(rs), dtype=float)
    else:
        values = np.array([f(r) for r in rs], dtype=float)
    best = int(np.argmin(values))
    return rs[best], float(values[best])
