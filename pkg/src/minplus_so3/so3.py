"""Rotation-group and Lie-algebra primitives on SO(3).

Rotations are plain 3x3 numpy arrays with R^T R = I and det R = +1; Lie
algebra elements are 3x3 skew-symmetric arrays.  Algebra coordinates follow
the signed basis pairs (H1, H2 = -H1), (H3, H4 = -H3), (H5, H6 = -H5), so
``hat((x, y, z)) = x*H1 + y*H3 + z*H5`` and the rotation angle of
``expm(hat(v))`` equals ``norm(v)``.

All functions are pure; returned basis matrices are read-only.
"""

from __future__ import annotations

import math

import numpy as np

SKEW_TOL = 1e-12
ORTHO_TOL = 1e-9

# Below this angle the sin(t)/t and (1-cos t)/t^2 ratios switch to their
# second-order Taylor expansions.
_SMALL_ANGLE = 1e-8

_H1 = np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
_H3 = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
_H5 = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]])
_BASIS = (_H1, -_H1, _H3, -_H3, _H5, -_H5)
for _b in _BASIS:
    _b.setflags(write=False)


def basis_element(i: int) -> np.ndarray:
    """Signed skew-symmetric basis element H_i for i in 1..6.

    H1, H3, H5 span so(3); H2 = -H1, H4 = -H3, H6 = -H5 complete the signed
    directions.  The returned array is read-only.
    """
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= 6:
        raise ValueError(f"basis index must be an integer in 1..6, got {i!r}")
    return _BASIS[i - 1]


def hat(v: np.ndarray) -> np.ndarray:
    """Map coordinates (x, y, z) to x*H1 + y*H3 + z*H5."""
    x, y, z = (float(c) for c in np.asarray(v, dtype=float))
    if not all(math.isfinite(c) for c in (x, y, z)):
        raise ValueError(f"hat coordinates must be finite, got {(x, y, z)}")
    return np.array([[0.0, x, y], [-x, 0.0, z], [-y, -z, 0.0]])


def check_skew(a: np.ndarray, tol: float = SKEW_TOL) -> None:
    """Raise ValueError unless ``a`` is 3x3 skew-symmetric within ``tol``."""
    a = np.asarray(a, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    defect = float(np.abs(a + a.T).max())
    if not defect <= tol:
        raise ValueError(f"matrix is not skew-symmetric (defect {defect:.3e} > {tol:.0e})")


def check_rotation(r: np.ndarray, tol: float = ORTHO_TOL) -> None:
    """Raise ValueError unless ``r`` is orthogonal with det +1 within ``tol``."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {r.shape}")
    defect = float(np.abs(r.T @ r - np.eye(3)).max())
    if not defect <= tol:
        raise ValueError(f"matrix is not orthogonal (defect {defect:.3e} > {tol:.0e})")
    det = float(np.linalg.det(r))
    if not abs(det - 1.0) <= tol:
        raise ValueError(f"matrix is not special orthogonal (det {det:.12f})")


def vee(a: np.ndarray, tol: float = SKEW_TOL) -> np.ndarray:
    """Coordinates of a skew-symmetric matrix on the (H1, H3, H5) basis."""
    a = np.asarray(a, dtype=float)
    check_skew(a, tol)
    return np.array([a[0, 1], a[0, 2], a[1, 2]])


def expm(a: np.ndarray) -> np.ndarray:
    """Closed-form (Rodrigues) exponential of a skew-symmetric matrix.

    For a = theta * K with unit-coordinate K, returns
    I + sin(theta) K + (1 - cos(theta)) K^2.  ``a`` is assumed skew.
    """
    a = np.asarray(a, dtype=float)
    t2 = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    theta = math.sqrt(t2)
    if theta < _SMALL_ANGLE:
        s = 1.0 - t2 / 6.0
        c = 0.5 - t2 / 24.0
    else:
        s = math.sin(theta) / theta
        c = (1.0 - math.cos(theta)) / t2
    return np.eye(3) + s * a + c * (a @ a)


def procrustes_max_many(ms: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched trace maximization: argmax_{R in SO(3)} tr(m @ R) per matrix.

    Takes a stack (n, 3, 3); returns the maximizers (n, 3, 3) and the
    attained trace values (n,).  For m = U S V^T the maximizer is
    V diag(1, 1, det(UV^T)) U^T and the value s1 + s2 + det(UV^T)*s3.
    Rank-deficient inputs yield one valid (possibly non-unique) maximizer.
    """
    ms = np.asarray(ms, dtype=float)
    u, s, vt = np.linalg.svd(ms)
    d = np.sign(np.linalg.det(u @ vt))
    v = np.swapaxes(vt, -1, -2).copy()
    v[..., :, 2] *= d[..., None]
    rs = v @ np.swapaxes(u, -1, -2)
    values = s[..., 0] + s[..., 1] + d * s[..., 2]
    return rs, values


def procrustes_max(m: np.ndarray) -> tuple[np.ndarray, float]:
    """Maximizer and maximum of R -> tr(m @ R) over SO(3)."""
    rs, values = procrustes_max_many(np.asarray(m, dtype=float)[None])
    return rs[0], float(values[0])


def project_so3(m: np.ndarray) -> np.ndarray:
    """Nearest rotation to ``m`` in the Frobenius norm.

    Equals the maximizer of tr(m^T R); projecting a valid rotation returns
    it unchanged (up to SVD roundoff) and the projection is scale-invariant.
    """
    m = np.asarray(m, dtype=float)
    if abs(float(np.linalg.det(m))) < 1e-12:
        raise np.linalg.LinAlgError("cannot project a (numerically) singular matrix onto SO(3)")
    return procrustes_max(m.T)[0]


def renormalize(r: np.ndarray, tol: float = ORTHO_TOL) -> np.ndarray:
    """Re-project onto SO(3) when the orthogonality defect exceeds ``tol``."""
    defect = float(np.abs(r.T @ r - np.eye(3)).max())
    if defect > tol:
        return project_so3(r)
    return r


def geodesic_angle(a: np.ndarray, b: np.ndarray) -> float:
    """Relative rotation angle in [0, pi]: arccos((tr(a^T b) - 1) / 2)."""
    cos = (float(np.trace(a.T @ b)) - 1.0) / 2.0
    return math.acos(min(1.0, max(-1.0, cos)))


def random_rotations(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform stack (n, 3, 3) via normalized random quaternions."""
    q = rng.standard_normal((n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    w, x, y, z = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    rs = np.empty((n, 3, 3))
    rs[:, 0, 0] = 1.0 - 2.0 * (y * y + z * z)
    rs[:, 0, 1] = 2.0 * (x * y - w * z)
    rs[:, 0, 2] = 2.0 * (x * z + w * y)
    rs[:, 1, 0] = 2.0 * (x * y + w * z)
    rs[:, 1, 1] = 1.0 - 2.0 * (x * x + z * z)
    rs[:, 1, 2] = 2.0 * (y * z - w * x)
    rs[:, 2, 0] = 2.0 * (x * z - w * y)
    rs[:, 2, 1] = 2.0 * (y * z + w * x)
    rs[:, 2, 2] = 1.0 - 2.0 * (x * x + y * y)
    return rs


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Single Haar-uniform rotation matrix."""
    return random_rotations(1, rng)[0]
