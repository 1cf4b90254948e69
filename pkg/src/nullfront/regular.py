"""Frenet apparatus of regular unit-speed spacelike curves in AdS^3."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NotOnAdS3Error, NotUnitSpeedError
from .exprdsl import jets as J
from .exprdsl.catalog import CurveSpec
from .geom4 import det4, pseudo_dot, pseudo_norm, triple_product

DEFAULT_TOL = 1e-8
MEMBERSHIP_TOL = 1e-7


@dataclass
class FrenetData:
    s: float
    T: np.ndarray
    N1: np.ndarray
    kappa: float
    geodesic: bool
    degenerate: bool
    n1: Optional[np.ndarray] = None
    n2: Optional[np.ndarray] = None
    delta: Optional[int] = None
    tau: Optional[float] = None

    CSV_HEADER = (
        ["s"]
        + [f"T{i}" for i in range(1, 5)]
        + [f"N1_{i}" for i in range(1, 5)]
        + ["kappa", "delta", "tau"]
        + [f"n1_{i}" for i in range(1, 5)]
        + [f"n2_{i}" for i in range(1, 5)]
        + ["geodesic", "degenerate"]
    )

    def as_row(self) -> list:
        nan4 = [float("nan")] * 4
        return (
            [self.s, *self.T, *self.N1, self.kappa]
            + [float(self.delta) if self.delta is not None else float("nan")]
            + [self.tau if self.tau is not None else float("nan")]
            + (list(self.n1) if self.n1 is not None else nan4)
            + (list(self.n2) if self.n2 is not None else nan4)
            + [int(self.geodesic), int(self.degenerate)]
        )


def _check_regular(g, T, s):
    if abs(pseudo_dot(g, g) + 1.0) > MEMBERSHIP_TOL:
        raise NotOnAdS3Error(f"gamma({s}) is not on AdS3: <g,g> = {pseudo_dot(g, g):.9g}")
    speed = pseudo_dot(T, T)
    if abs(speed - 1.0) > MEMBERSHIP_TOL:
        raise NotUnitSpeedError(f"<gamma', gamma'> = {speed:.9g} at s = {s}; a unit-speed spacelike curve is required")


def frenet_at(gamma: CurveSpec, s: float, tol: float = DEFAULT_TOL) -> FrenetData:
    gj = gamma.jets(float(s), 4)
    g, T = J.vvalue(gj), J.vd(gj, 1)
    _check_regular(g, T, s)
    d2, d3 = J.vd(gj, 2), J.vd(gj, 3)
    N1 = d2 - g
    kappa = float(pseudo_norm(N1))
    if np.max(np.abs(N1)) <= tol:
        return FrenetData(float(s), T, N1, kappa, geodesic=True, degenerate=False)
    if kappa <= tol:
        # null N1: unit normals do not exist
        return FrenetData(float(s), T, N1, kappa, geodesic=False, degenerate=True)
    n1 = N1 / kappa
    delta = 1 if pseudo_dot(n1, n1) > 0 else -1
    n2 = triple_product(g, T, n1)
    tau = delta / kappa**2 * float(det4(g, T, d2, d3))
    return FrenetData(float(s), T, N1, kappa, False, False, n1, n2, delta, tau)


def frenet_residuals(gamma: CurveSpec, s) -> dict:
    """Sup-norm residuals of the Frenet-Serret system at ``s``.

    Only meaningful where kappa > 0 and N1 is not null.
    """
    gj = gamma.jets(s, 4)
    T = J.vderiv(gj)
    N1 = tuple(a - b for a, b in zip(J.vderiv(T), gj))
    q = pseudo_dot(N1, N1)
    delta = np.sign(q.value)
    kappa = J.sqrt(q * delta)
    n1 = tuple(x / kappa for x in N1)
    gt = tuple(x.truncate(2) for x in gj)
    Tt = tuple(x.truncate(2) for x in T)
    n2 = triple_product(gt, Tt, n1)
    tau = delta / kappa.value**2 * det4(J.vvalue(gj), J.vd(gj, 1), J.vd(gj, 2), J.vd(gj, 3))
    k = kappa.value
    gv, Tv, n1v, n2v = J.vvalue(gj), J.vvalue(T), J.vvalue(n1), J.vvalue(n2)

    def sup(x):
        return float(np.max(np.abs(x)))

    return {
        "gamma'": sup(J.vd(gj, 1) - Tv),
        "T'": sup(J.vd(T, 1) - gv - k * n1v),
        "n1'": sup(J.vd(n1, 1) + delta * k * Tv - tau * n2v),
        "n2'": sup(J.vd(n2, 1) - tau * n1v),
    }
