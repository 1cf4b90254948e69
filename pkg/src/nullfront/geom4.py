"""Linear algebra of the semi-Euclidean space R^4_2 (metric signature -,-,+,+).

Every function accepts any indexable object with four components that
supports ``+``, ``-`` and ``*``: a float array of shape ``(4,)``, a stacked
array of shape ``(4, N)`` (one column per sample point), or a tuple of
:class:`~nullfront.exprdsl.jets.Jet` values.  Numeric inputs are checked for
finiteness; jet inputs are passed through untouched so the same formulas
serve derivative propagation.
"""

from __future__ import annotations

import enum
import numbers

import numpy as np

METRIC = np.diag([-1.0, -1.0, 1.0, 1.0])
SIGNATURE = np.array([-1.0, -1.0, 1.0, 1.0])

DEFAULT_CAUSAL_TOL = 1e-9


class CausalClass(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


class PseudoSphereKind(enum.Enum):
    ADS3 = "AdS3"
    S3_2 = "S3_2"
    LAMBDA3 = "Lambda3"

    @property
    def target(self) -> float:
        return {"AdS3": -1.0, "S3_2": 1.0, "Lambda3": 0.0}[self.value]


def _is_numeric(u) -> bool:
    return isinstance(u, np.ndarray) or isinstance(u[0], (numbers.Real, np.ndarray))


def _coerce(u):
    if not _is_numeric(u):
        return u
    arr = np.asarray(u, dtype=float)
    if arr.shape[0] != 4:
        raise ValueError(f"expected 4 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite component in Vec4")
    return arr


def _pack(comps, numeric):
    return np.array(comps) if numeric else tuple(comps)


def vec4(u1, u2, u3, u4) -> np.ndarray:
    """Build a validated Vec4."""
    return _coerce(np.array([u1, u2, u3, u4], dtype=float))


def basis(i: int) -> np.ndarray:
    """Canonical basis vector e_i, 1-based like the usual notation."""
    e = np.zeros(4)
    e[i - 1] = 1.0
    return e


def pseudo_dot(u, w):
    u, w = _coerce(u), _coerce(w)
    return -u[0] * w[0] - u[1] * w[1] + u[2] * w[2] + u[3] * w[3]


def pseudo_norm(u):
    """sqrt(|<u, u>|)."""
    return np.sqrt(np.abs(pseudo_dot(u, u)))


def causal_character(u, tol: float = DEFAULT_CAUSAL_TOL) -> CausalClass:
    if tol <= 0:
        raise ValueError("tol must be positive")
    q = float(pseudo_dot(u, u))
    if q > tol:
        return CausalClass.SPACELIKE
    if q < -tol:
        return CausalClass.TIMELIKE
    return CausalClass.LIGHTLIKE


def _minors(v, w):
    # p[(i, j)] = v_i w_j - v_j w_i for i < j
    return {(i, j): v[i] * w[j] - v[j] * w[i] for i in range(4) for j in range(i + 1, 4)}


def _det3(u, p, a, b, c):
    return u[a] * p[(b, c)] - u[b] * p[(a, c)] + u[c] * p[(a, b)]


def triple_product(u, v, w):
    """Triple vector product u x v x w.

    Cofactor expansion of the formal determinant whose first row is
    ``(-e1, -e2, e3, e4)`` and whose remaining rows are u, v, w.  The result
    is pseudo-orthogonal to all three arguments.
    """
    numeric = _is_numeric(u) and _is_numeric(v) and _is_numeric(w)
    u, v, w = _coerce(u), _coerce(v), _coerce(w)
    p = _minors(v, w)
    m1 = _det3(u, p, 1, 2, 3)
    m2 = _det3(u, p, 0, 2, 3)
    m3 = _det3(u, p, 0, 1, 3)
    m4 = _det3(u, p, 0, 1, 2)
    return _pack([-m1, m2, m3, -m4], numeric)


def det4(a, b, c, d):
    """Determinant of the 4x4 matrix with rows a, b, c, d."""
    a, b, c, d = _coerce(a), _coerce(b), _coerce(c), _coerce(d)
    p = _minors(c, d)
    m1 = _det3(b, p, 1, 2, 3)
    m2 = _det3(b, p, 0, 2, 3)
    m3 = _det3(b, p, 0, 1, 3)
    m4 = _det3(b, p, 0, 1, 2)
    return a[0] * m1 - a[1] * m2 + a[2] * m3 - a[3] * m4


def check_membership(u, kind: PseudoSphereKind, tol: float = DEFAULT_CAUSAL_TOL) -> bool:
    """True iff u lies on the pseudo-sphere ``kind`` within ``tol``.

    Works pointwise on stacked ``(4, N)`` input and returns True only if every
    column passes.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    u = _coerce(np.asarray(u, dtype=float))
    ok = np.abs(pseudo_dot(u, u) - kind.target) <= tol
    if kind is PseudoSphereKind.LAMBDA3:
        ok = ok & (np.max(np.abs(u), axis=0) > tol)
    return bool(np.all(ok))


def max_norm(u) -> float:
    return float(np.max(np.abs(np.asarray(u, dtype=float))))


def gram(vectors) -> np.ndarray:
    """Gram matrix of pseudo-dot products for a sequence of Vec4."""
    F = np.column_stack([np.asarray(v, dtype=float) for v in vectors])
    return F.T @ METRIC @ F
