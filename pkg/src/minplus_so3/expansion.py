"""Min-plus value-function engine for the deterministic SO(3) filter.

The cost-to-explain of being at attitude R after k measurement steps is kept
exactly as a finite min-plus combination of affine terms

    V_k(R) = min over terms of [ c - 0.5 * tr(M @ R) ],

and one dynamic-programming step against measurement Y with drift A maps every
term (c, M) and every admissible disturbance z to

    c' = c + 0.5 * tr(z^T z) * dt + 0.5 * tr(L_inv) * dt
    M' = L_inv^T @ Y^T * dt + Psi(A, z) @ M,      Psi(A, z) = expm(-(A + z) * dt),

so the affine structure is preserved while the term list multiplies by the
disturbance-set size.  Estimate extraction minimizes each term exactly with
the special orthogonal Procrustes solver and takes the smallest term minimum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .so3 import basis_element, check_rotation, check_skew, expm, procrustes_max, procrustes_max_many

# Terms whose offset and matrix agree entrywise below this are duplicates.
DEDUP_TOL = 1e-10


@dataclass(frozen=True)
class AffineTerm:
    """One basis function R -> c - 0.5 * tr(m @ R)."""

    c: float
    m: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.m, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"term matrix must be 3x3, got shape {m.shape}")
        if not (np.isfinite(self.c) and np.isfinite(m).all()):
            raise ValueError("term offset and matrix must be finite")
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "m", m)

    def value_at(self, r: np.ndarray) -> float:
        return self.c - 0.5 * float(np.einsum("ij,ji->", self.m, r))


@dataclass(frozen=True)
class Weights:
    """Initial-cost weight K^-1 and measurement weight L^-1, both 3x3 SPD."""

    k_inv: np.ndarray
    l_inv: np.ndarray

    def __post_init__(self) -> None:
        for name in ("k_inv", "l_inv"):
            w = np.asarray(getattr(self, name), dtype=float)
            if w.shape != (3, 3):
                raise ValueError(f"{name} must be 3x3, got shape {w.shape}")
            if float(np.abs(w - w.T).max()) > 1e-12:
                raise ValueError(f"{name} must be symmetric")
            if float(np.linalg.eigvalsh(w).min()) <= 0.0:
                raise ValueError(f"{name} must be positive definite")
            object.__setattr__(self, name, w)

    @classmethod
    def identity(cls) -> "Weights":
        return cls(np.eye(3), np.eye(3))


@dataclass(frozen=True)
class DisturbanceSet:
    """Finite set of admissible so(3) disturbance values; always contains 0."""

    elements: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        elements = tuple(np.asarray(z, dtype=float) for z in self.elements)
        if not elements:
            raise ValueError("disturbance set must be nonempty")
        for z in elements:
            check_skew(z)
        if not any(float(np.abs(z).max()) == 0.0 for z in elements):
            raise ValueError("disturbance set must contain the zero element")
        object.__setattr__(self, "elements", elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def stacked(self) -> np.ndarray:
        return np.stack(self.elements)

    @classmethod
    def signed_grid(cls, magnitudes: tuple[float, ...] = (0.5, 1.0)) -> "DisturbanceSet":
        """Zero plus every signed basis direction H1..H6 at each magnitude."""
        elements = [np.zeros((3, 3))]
        for mag in magnitudes:
            for i in range(1, 7):
                elements.append(float(mag) * basis_element(i))
        return cls(tuple(elements))


@dataclass(frozen=True)
class ValueExpansion:
    """Value function at one step: ordered affine terms stored as arrays.

    ``offsets`` has shape (n,), ``matrices`` (n, 3, 3); evaluation is the
    minimum over terms.  Instances are immutable; propagation and pruning
    return new expansions.
    """

    offsets: np.ndarray
    matrices: np.ndarray
    step_index: int = 0

    def __post_init__(self) -> None:
        offsets = np.atleast_1d(np.asarray(self.offsets, dtype=float))
        matrices = np.asarray(self.matrices, dtype=float)
        if matrices.ndim == 2:
            matrices = matrices[None]
        if offsets.ndim != 1 or matrices.shape != (offsets.shape[0], 3, 3):
            raise ValueError(
                f"inconsistent term shapes: offsets {offsets.shape}, matrices {matrices.shape}"
            )
        if offsets.shape[0] == 0:
            raise ValueError("expansion must keep at least one term")
        if not (np.isfinite(offsets).all() and np.isfinite(matrices).all()):
            raise ValueError("expansion terms must be finite")
        if self.step_index < 0:
            raise ValueError(f"step_index must be >= 0, got {self.step_index}")
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "matrices", matrices)

    def __len__(self) -> int:
        return int(self.offsets.shape[0])

    @property
    def terms(self) -> list[AffineTerm]:
        return [AffineTerm(float(c), m) for c, m in zip(self.offsets, self.matrices)]

    @classmethod
    def from_terms(cls, terms: list[AffineTerm], step_index: int = 0) -> "ValueExpansion":
        return cls(
            np.array([t.c for t in terms]),
            np.stack([t.m for t in terms]),
            step_index,
        )


def initial_expansion(w: Weights, r_hat0: np.ndarray) -> ValueExpansion:
    """Single-term terminal cost centered at the prior estimate.

    The term (0.5 * tr(K_inv), R_hat0^T @ K_inv) equals one quarter of the
    orthogonality penalty of R @ R_hat0^T against K_inv and vanishes at
    R = R_hat0.
    """
    r_hat0 = np.asarray(r_hat0, dtype=float)
    check_rotation(r_hat0)
    c0 = 0.5 * float(np.trace(w.k_inv))
    m0 = r_hat0.T @ w.k_inv
    return ValueExpansion(np.array([c0]), m0[None], step_index=0)


def propagate(
    v: ValueExpansion,
    y: np.ndarray,
    a: np.ndarray,
    dt: float,
    zset: DisturbanceSet,
    w: Weights,
) -> ValueExpansion:
    """One dynamic-programming step against measurement ``y`` with drift ``a``.

    Every (term, z) pair produces one output term; output order is parent
    terms outermost crossed with the disturbance-set order, which fixes the
    deterministic tie-break downstream.
    """
    if not dt > 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    y = np.asarray(y, dtype=float)
    a = np.asarray(a, dtype=float)
    check_rotation(y)
    check_skew(a)

    zs = zset.stacked()
    psis = np.stack([expm(-(a + z) * dt) for z in zset])
    z_costs = 0.5 * np.einsum("zij,zij->z", zs, zs) * dt + 0.5 * np.trace(w.l_inv) * dt
    base = w.l_inv.T @ y.T * dt

    n, n_z = len(v), len(zset)
    new_offsets = np.repeat(v.offsets, n_z) + np.tile(z_costs, n)
    new_matrices = base + np.tile(psis, (n, 1, 1)) @ np.repeat(v.matrices, n_z, axis=0)
    return ValueExpansion(new_offsets, new_matrices, v.step_index + 1)


def term_values(v: ValueExpansion, r: np.ndarray) -> np.ndarray:
    """Per-term values c - 0.5 * tr(M @ r), shape (n,)."""
    return v.offsets - 0.5 * np.einsum("nij,ji->n", v.matrices, np.asarray(r, dtype=float))


def evaluate(v: ValueExpansion, r: np.ndarray) -> float:
    """Pointwise value: minimum over the stored terms."""
    return float(term_values(v, r).min())


def evaluate_many(v: ValueExpansion, rs: np.ndarray) -> np.ndarray:
    """Pointwise values at a stack of rotations (b, 3, 3) -> (b,)."""
    vals = v.offsets[:, None] - 0.5 * np.einsum("nij,bji->nb", v.matrices, np.asarray(rs, dtype=float))
    return vals.min(axis=0)


def term_min(t: AffineTerm) -> tuple[np.ndarray, float]:
    """Exact minimizer and minimum of one affine term over SO(3)."""
    r, traced = procrustes_max(t.m)
    return r, t.c - 0.5 * traced


def term_minima(v: ValueExpansion) -> tuple[np.ndarray, np.ndarray]:
    """Batched term minimizers (n, 3, 3) and minima (n,)."""
    rs, traced = procrustes_max_many(v.matrices)
    return rs, v.offsets - 0.5 * traced


def extract_estimate(v: ValueExpansion) -> tuple[np.ndarray, float]:
    """Global minimizer of the expansion: best per-term minimum.

    The per-term problems are independent; ties go to the smallest term
    index, which is deterministic given the propagation ordering.
    """
    rs, values = term_minima(v)
    best = int(np.argmin(values))
    return rs[best], float(values[best])


def prune(v: ValueExpansion, cap: int) -> ValueExpansion:
    """Bound the term count: deduplicate, then keep the ``cap`` lowest minima.

    Removing terms can only raise the pointwise minimum, so pruning is
    conservative.  Surviving terms keep their relative order.
    """
    if cap < 1:
        raise ValueError(f"prune cap must be >= 1, got {cap}")
    n = len(v)
    if n <= cap:
        return v

    flat = np.concatenate([v.offsets[:, None], v.matrices.reshape(n, 9)], axis=1)
    keys = np.round(flat / DEDUP_TOL).astype(np.int64)
    _, first = np.unique(keys, axis=0, return_index=True)
    keep = np.sort(first)
    offsets, matrices = v.offsets[keep], v.matrices[keep]

    if offsets.shape[0] > cap:
        _, values = procrustes_max_many(matrices)
        minima = offsets - 0.5 * values
        chosen = np.sort(np.argsort(minima, kind="stable")[:cap])
        offsets, matrices = offsets[chosen], matrices[chosen]
    return ValueExpansion(offsets, matrices, v.step_index)
