"""Pseudo-spherical spacelike framed curves in AdS^3.

A framed curve is the triple (gamma, v1, v2) with gamma in AdS^3 and
{v1, v2} a pseudo-orthonormal pair normal to gamma and to gamma'.  The frame
is completed by ``mu = gamma x v1 x v2`` and moves by

    gamma' = alpha mu
    v1'    = ell v2 + m mu
    v2'    = ell v1 + n mu
    mu'    = alpha gamma - eps m v1 + eps n v2

with eps = <v1, v1>.  The functions (alpha, ell, m, n) are the curvature.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from . import geom4
from .errors import (
    InsufficientSamplesError,
    InvalidInitialFrameError,
    SingularFrameMatrixError,
    StepError,
)
from .exprdsl import jets as J
from .exprdsl.catalog import CurveSpec, catalog, catalog_interval
from .exprdsl.parser import eval_value, parse_expr
from .exprdsl.samples import read_samples_csv, sampled_jets
from .geom4 import pseudo_dot, triple_product

FRAME_TOL = 1e-7
DRIFT_LIMIT = 1e-3


class FramedCurve:
    """A framed curve backed by closed-form expressions or by samples.

    ``jets_fn(s, order)`` must return ``(gamma, v1, v2)`` as 4-tuples of
    :class:`Jet`; ``s`` may be a float or a 1-D array.
    """

    def __init__(self, jets_fn, interval, name="", analytic=True, nodes=None, epsilon=None):
        a, b = float(interval[0]), float(interval[1])
        if not a < b:
            raise ValueError(f"empty interval [{a}, {b}]")
        self._jets_fn = jets_fn
        self.interval = (a, b)
        self.name = name
        self.analytic = analytic
        self.nodes = None if nodes is None else np.asarray(nodes, dtype=float)
        if epsilon is None:
            _, v1, _ = self.values(0.5 * (a + b))
            q = float(pseudo_dot(v1, v1))
            if abs(q) < 0.5:
                raise ValueError(f"{name}: v1 is not a unit vector at the interval midpoint (<v1,v1> = {q:.3g})")
            epsilon = 1 if q > 0 else -1
        self.epsilon = int(epsilon)

    # constructors -------------------------------------------------------

    @classmethod
    def from_specs(cls, gamma: CurveSpec, v1: CurveSpec, v2: CurveSpec, interval, name=""):
        def jets_fn(s, order=J.ORDER):
            return gamma.jets(s, order), v1.jets(s, order), v2.jets(s, order)

        fc = cls(jets_fn, interval, name=name)
        fc.specs = (gamma, v1, v2)
        return fc

    @classmethod
    def from_catalog(cls, name: str, interval=None):
        gamma, v1, v2 = catalog(name)
        return cls.from_specs(gamma, v1, v2, interval or catalog_interval(name), name=name)

    @classmethod
    def from_samples(cls, s, gamma, v1, v2, name="samples"):
        s = np.asarray(s, dtype=float)
        values = np.hstack([np.asarray(gamma), np.asarray(v1), np.asarray(v2)])

        def jets_fn(t, order=J.ORDER):
            comps = sampled_jets(s, values, t, order)
            return comps[0:4], comps[4:8], comps[8:12]

        return cls(jets_fn, (s[0], s[-1]), name=name, analytic=False, nodes=s)

    @classmethod
    def from_csv(cls, path):
        s, gamma, v1, v2 = read_samples_csv(path)
        return cls.from_samples(s, gamma, v1, v2, name=Path(path).stem)

    @classmethod
    def from_states(cls, states, name="integrated"):
        if len(states) < 6:
            raise InsufficientSamplesError(f"need at least 6 frame states, got {len(states)}")
        s = np.array([st.s for st in states])
        if s[0] > s[-1]:
            states = states[::-1]
            s = s[::-1]
        return cls.from_samples(
            s,
            np.array([st.gamma for st in states]),
            np.array([st.v1 for st in states]),
            np.array([st.v2 for st in states]),
            name=name,
        )

    def transformed(self, A, name=None) -> "FramedCurve":
        """Image of this framed curve under the linear map ``A``."""
        A = np.asarray(A, dtype=float)
        base = self._jets_fn

        def jets_fn(s, order=J.ORDER):
            g, v1, v2 = base(s, order)
            return J.vmatmul(A, g), J.vmatmul(A, v1), J.vmatmul(A, v2)

        return FramedCurve(
            jets_fn,
            self.interval,
            name=name or f"{self.name}*A",
            analytic=self.analytic,
            nodes=self.nodes,
            epsilon=self.epsilon,
        )

    # evaluation ---------------------------------------------------------

    def jets(self, s, order: int = J.ORDER):
        return self._jets_fn(s, order)

    def values(self, s):
        g, v1, v2 = self._jets_fn(s, 0)
        return J.vvalue(g), J.vvalue(v1), J.vvalue(v2)

    def frame(self, s):
        """(gamma, v1, v2, mu) at ``s`` as float arrays."""
        g, v1, v2 = self.values(s)
        return g, v1, v2, triple_product(g, v1, v2)

    def grid(self, n: int) -> np.ndarray:
        if self.nodes is not None and n >= len(self.nodes):
            return self.nodes.copy()
        return np.linspace(self.interval[0], self.interval[1], n)

    @property
    def ordering(self) -> str:
        """Which factor of AdS^3 x S^3_2 (or the reverse) v1 and v2 occupy."""
        return "S3_2 x AdS3" if self.epsilon == 1 else "AdS3 x S3_2"

    def __repr__(self):
        kind = "analytic" if self.analytic else "sampled"
        return f"FramedCurve({self.name!r}, {kind}, interval={self.interval}, eps={self.epsilon:+d})"


def mu_of(fc: FramedCurve, s):
    return fc.frame(s)[3]


# validation ---------------------------------------------------------------


@dataclass
class ValidationReport:
    name: str
    epsilon: int
    ordering: str
    grid: int
    tol: float
    residuals: dict
    epsilon_constant: bool

    @property
    def passed(self) -> bool:
        return self.epsilon_constant and all(r <= self.tol for r in self.residuals.values())

    @property
    def failures(self) -> list:
        return [k for k, r in self.residuals.items() if not r <= self.tol]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "epsilon": self.epsilon,
            "ordering": self.ordering,
            "grid": self.grid,
            "tol": self.tol,
            "epsilon_constant": self.epsilon_constant,
            "residuals": dict(self.residuals),
        }


def validate(fc: FramedCurve, grid: int = 200, tol: float = FRAME_TOL) -> ValidationReport:
    """Maximum residual of each framed-curve condition over a uniform grid."""
    if grid < 2:
        raise ValueError("grid must be >= 2")
    s = fc.grid(grid)
    eps = fc.epsilon
    g, v1, v2 = fc.jets(s, 1)
    gv, v1v, v2v = J.vvalue(g), J.vvalue(v1), J.vvalue(v2)
    gp = J.vd(g, 1)
    v1sq = pseudo_dot(v1v, v1v)
    checks = {
        "<g,g>+1": pseudo_dot(gv, gv) + 1.0,
        "<v1,v1>-eps": v1sq - eps,
        "<v2,v2>+eps": pseudo_dot(v2v, v2v) + eps,
        "<g,v1>": pseudo_dot(gv, v1v),
        "<g,v2>": pseudo_dot(gv, v2v),
        "<v1,v2>": pseudo_dot(v1v, v2v),
        "<g',v1>": pseudo_dot(gp, v1v),
        "<g',v2>": pseudo_dot(gp, v2v),
    }
    residuals = {k: float(np.max(np.abs(v))) for k, v in checks.items()}
    eps_const = bool(np.all(np.sign(v1sq) == eps))
    return ValidationReport(fc.name, eps, fc.ordering, len(s), tol, residuals, eps_const)


# curvature -----------------------------------------------------------------


@dataclass
class CurvatureJets:
    alpha: J.Jet
    ell: J.Jet
    m: J.Jet
    n: J.Jet


@dataclass
class Curvature:
    alpha: object
    ell: object
    m: object
    n: object
    dalpha: object
    dell: object
    dm: object
    dn: object


def curvature_jets(fc: FramedCurve, s) -> CurvatureJets:
    """Curvature functions as order-3 jets (from order-4 frame jets)."""
    g, v1, v2 = fc.jets(s, J.ORDER)
    mu = triple_product(g, v1, v2)
    gp, v1p, v2p = J.vderiv(g), J.vderiv(v1), J.vderiv(v2)
    return CurvatureJets(
        alpha=pseudo_dot(gp, mu),
        ell=-fc.epsilon * pseudo_dot(v1p, v2),
        m=pseudo_dot(v1p, mu),
        n=pseudo_dot(v2p, mu),
    )


def curvature_at(fc: FramedCurve, s) -> Curvature:
    cj = curvature_jets(fc, s)
    return Curvature(
        cj.alpha.value, cj.ell.value, cj.m.value, cj.n.value,
        cj.alpha.d(1), cj.ell.d(1), cj.m.d(1), cj.n.d(1),
    )


def frame_equation_residuals(fc: FramedCurve, s) -> dict:
    """Sup-norm residuals of the four frame equations at ``s``."""
    g, v1, v2 = fc.jets(s, 1)
    gv, v1v, v2v = J.vvalue(g), J.vvalue(v1), J.vvalue(v2)
    mu_j = triple_product(g, v1, v2)
    mu = J.vvalue(mu_j)
    cj = curvature_jets(fc, s)
    a, l, m, n = cj.alpha.value, cj.ell.value, cj.m.value, cj.n.value
    eps = fc.epsilon

    def sup(x):
        return float(np.max(np.abs(x)))

    return {
        "gamma'": sup(J.vd(g, 1) - a * mu),
        "v1'": sup(J.vd(v1, 1) - l * v2v - m * mu),
        "v2'": sup(J.vd(v2, 1) - l * v1v - n * mu),
        "mu'": sup(J.vd(mu_j, 1) - a * gv + eps * m * v1v - eps * n * v2v),
    }


def _vectorize(f):
    def wrapped(s):
        s = np.asarray(s, dtype=float)
        return np.broadcast_to(np.asarray(f(s), dtype=float), s.shape)

    return wrapped


@dataclass
class CurvatureQuad:
    """Curvature (alpha, ell, m, n) as vectorized callables of s."""

    alpha: Callable
    ell: Callable
    m: Callable
    n: Callable
    epsilon: Optional[int] = None
    name: str = ""
    samples: Optional[dict] = field(default=None, repr=False)

    def __call__(self, s) -> np.ndarray:
        """Stacked values, shape (4,) + shape(s)."""
        return np.array([_vectorize(f)(s) for f in (self.alpha, self.ell, self.m, self.n)])

    @classmethod
    def constant(cls, alpha, ell, m, n, epsilon=None):
        return cls(*(lambda s, c=c: c for c in (alpha, ell, m, n)), epsilon=epsilon, name="constant")

    @classmethod
    def from_expressions(cls, alpha, ell, m, n, epsilon=None, name="expr"):
        fns = []
        for src in (alpha, ell, m, n):
            node = parse_expr(str(src))
            fns.append(lambda s, node=node: eval_value(node, s))
        return cls(*fns, epsilon=epsilon, name=name)

    @classmethod
    def from_json(cls, path):
        doc = json.loads(Path(path).read_text())
        eps = doc.get("epsilon")
        if eps is not None and eps not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        return cls.from_expressions(doc["alpha"], doc["ell"], doc["m"], doc["n"], eps, name=Path(path).stem)

    @classmethod
    def from_framed(cls, fc: FramedCurve):
        def component(attr):
            return lambda s: getattr(curvature_jets(fc, s), attr).value

        return cls(*(component(k) for k in ("alpha", "ell", "m", "n")), epsilon=fc.epsilon, name=fc.name)

    @classmethod
    def from_samples(cls, s, alpha, ell, m, n, epsilon=None, name="sampled"):
        s = np.asarray(s, dtype=float)
        splines = [CubicSpline(s, np.asarray(v, dtype=float)) for v in (alpha, ell, m, n)]
        samples = {"s": s, "alpha": alpha, "ell": ell, "m": m, "n": n}
        return cls(*splines, epsilon=epsilon, name=name, samples=samples)


# integration -----------------------------------------------------------------


@dataclass
class FrameState:
    s: float
    gamma: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    mu: np.ndarray

    @classmethod
    def from_matrix(cls, s, X):
        return cls(float(s), X[0].copy(), X[1].copy(), X[2].copy(), X[3].copy())

    def matrix(self) -> np.ndarray:
        return np.array([self.gamma, self.v1, self.v2, self.mu], dtype=float)

    def gram_drift(self, epsilon: int) -> float:
        return gram_drift(self.matrix(), epsilon)

    def as_row(self) -> list:
        return [self.s, *self.gamma, *self.v1, *self.v2, *self.mu]


def target_gram(epsilon: int) -> np.ndarray:
    return np.diag([-1.0, float(epsilon), -float(epsilon), 1.0])


def gram_drift(X, epsilon) -> float:
    return float(np.max(np.abs(X @ geom4.METRIC @ X.T - target_gram(epsilon))))


def frame_state(fc: FramedCurve, s: float) -> FrameState:
    g, v1, v2, mu = fc.frame(float(s))
    return FrameState(float(s), g, v1, v2, mu)


def sample_states(fc: FramedCurve, n: int) -> list:
    s = np.linspace(fc.interval[0], fc.interval[1], n)
    g, v1, v2, mu = fc.frame(s)
    return [FrameState(float(s[i]), g[:, i], v1[:, i], v2[:, i], mu[:, i]) for i in range(n)]


def _reorthonormalize(X, eps):
    g, v1, v2 = X[0], X[1], X[2]
    g = g / math.sqrt(-pseudo_dot(g, g))
    v1 = v1 + pseudo_dot(v1, g) * g
    v1 = v1 / math.sqrt(eps * pseudo_dot(v1, v1))
    v2 = v2 + pseudo_dot(v2, g) * g - eps * pseudo_dot(v2, v1) * v1
    v2 = v2 / math.sqrt(-eps * pseudo_dot(v2, v2))
    return np.array([g, v1, v2, triple_product(g, v1, v2)])


def _generator(a, l, m, n, eps):
    return np.array(
        [
            [0.0, 0.0, 0.0, a],
            [0.0, 0.0, l, m],
            [0.0, l, 0.0, n],
            [a, -eps * m, eps * n, 0.0],
        ]
    )


def integrate_frame(
    cq: CurvatureQuad,
    init: FrameState,
    epsilon: int,
    s_end: float,
    step: float = 1e-3,
    reorthonormalize: bool = True,
) -> list:
    """Classical RK4 for the 16-dimensional frame system.

    The step is shrunk so that an integer number of steps lands exactly on
    ``s_end`` (which may lie on either side of ``init.s``).
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    X = init.matrix()
    drift = gram_drift(X, epsilon)
    if drift > 1e-9:
        raise InvalidInitialFrameError(f"initial frame Gram matrix off by {drift:.3e}")
    mu_err = float(np.max(np.abs(triple_product(X[0], X[1], X[2]) - X[3])))
    if mu_err > 1e-9:
        raise InvalidInitialFrameError(f"initial mu differs from gamma x v1 x v2 by {mu_err:.3e}")

    s0 = init.s
    span = s_end - s0
    nsteps = int(math.ceil(abs(span) / step - 1e-9))
    states = [FrameState.from_matrix(s0, X)]
    if nsteps == 0:
        return states
    h = span / nsteps
    t = s0 + 0.5 * h * np.arange(2 * nsteps + 1)
    coeffs = cq(t)
    gens = [_generator(*coeffs[:, k], epsilon) for k in range(2 * nsteps + 1)]

    for i in range(nsteps):
        M0, Mh, M1 = gens[2 * i], gens[2 * i + 1], gens[2 * i + 2]
        k1 = M0 @ X
        k2 = Mh @ (X + 0.5 * h * k1)
        k3 = Mh @ (X + 0.5 * h * k2)
        k4 = M1 @ (X + h * k3)
        X = X + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if reorthonormalize:
            X = _reorthonormalize(X, epsilon)
        drift = gram_drift(X, epsilon)
        if not drift <= DRIFT_LIMIT:
            raise StepError(f"Gram drift {drift:.3e} at s = {t[2 * i + 2]:.6g}; reduce the step")
        states.append(FrameState.from_matrix(t[2 * i + 2], X))
    return states


# curvature from sampled states ------------------------------------------------


def _central_diff(f, h):
    """Fourth-order finite differences along axis 0 (needs >= 5 rows)."""
    d = np.empty_like(f)
    d[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h)
    d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h)
    d[-1] = (25 * f[-1] - 48 * f[-2] + 36 * f[-3] - 16 * f[-4] + 3 * f[-5]) / (12 * h)
    d[-2] = (3 * f[-1] + 10 * f[-2] - 18 * f[-3] + 6 * f[-4] - f[-5]) / (12 * h)
    return d


def extract_curvature(states, epsilon: Optional[int] = None) -> CurvatureQuad:
    """Curvature of a uniformly spaced list of frame states.

    Frame derivatives come from fourth-order central differences on the
    state grid; the result interpolates the pairings with cubic splines.
    """
    if len(states) < 5:
        raise InsufficientSamplesError(f"need at least 5 states, got {len(states)}")
    states = sorted(states, key=lambda st: st.s)
    s = np.array([st.s for st in states])
    ds = np.diff(s)
    h = ds.mean()
    if h <= 0 or np.max(np.abs(ds - h)) > 1e-9 * max(1.0, abs(h)):
        raise ValueError("states must be uniformly spaced")
    G = np.array([st.gamma for st in states]).T
    V1 = np.array([st.v1 for st in states]).T
    V2 = np.array([st.v2 for st in states]).T
    MU = np.array([st.mu for st in states]).T
    if epsilon is None:
        epsilon = 1 if pseudo_dot(V1[:, 0], V1[:, 0]) > 0 else -1
    dG, dV1, dV2 = (_central_diff(X.T, h).T for X in (G, V1, V2))
    alpha = pseudo_dot(dG, MU)
    ell = -epsilon * pseudo_dot(dV1, V2)
    m = pseudo_dot(dV1, MU)
    n = pseudo_dot(dV2, MU)
    return CurvatureQuad.from_samples(s, alpha, ell, m, n, epsilon=epsilon, name="extracted")


# congruence -------------------------------------------------------------------


@dataclass
class Isometry22:
    matrix: np.ndarray

    def defect(self) -> float:
        """max |A^T G A - G|."""
        A = self.matrix
        return float(np.max(np.abs(A.T @ geom4.METRIC @ A - geom4.METRIC)))

    def is_isometry(self, tol: float = 1e-8) -> bool:
        return self.defect() <= tol

    def __call__(self, u):
        return self.matrix @ np.asarray(u, dtype=float)


def align_congruence(fc1: FramedCurve, fc2: FramedCurve, s0: float, grid: int = 201):
    """Linear map taking the frame of ``fc1`` at ``s0`` to that of ``fc2``.

    Returns the map and ``max_s ||A gamma1(s) - gamma2(s)||_inf`` over a grid
    covering the common interval.
    """
    F1 = np.column_stack(fc1.frame(float(s0)))
    F2 = np.column_stack(fc2.frame(float(s0)))
    if np.linalg.cond(F1) > 1e12:
        raise SingularFrameMatrixError("frame vectors of the first curve are not independent")
    A = np.linalg.solve(F1.T, F2.T).T
    lo = max(fc1.interval[0], fc2.interval[0])
    hi = min(fc1.interval[1], fc2.interval[1])
    if fc1.nodes is not None:
        s = fc1.nodes[(fc1.nodes >= lo) & (fc1.nodes <= hi)]
    else:
        s = np.linspace(lo, hi, grid)
    g1 = fc1.values(s)[0]
    g2 = fc2.values(s)[0]
    residual = float(np.max(np.abs(A @ g1 - g2)))
    return Isometry22(A), residual
