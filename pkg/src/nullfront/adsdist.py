"""Anti-de Sitter distance-squared functions d_v0(s) = <gamma(s) - v0, gamma(s) - v0>.

:func:`check_conditions` reports two things side by side for a point v0:
how many leading s-derivatives of d_v0 vanish at s0, and which of the
geometric alternatives that characterize each vanishing order hold there.
The two are never forced to agree, so a disagreement is visible in the
report.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotOnAdS3Error
from .exprdsl import jets as J
from .framed import FramedCurve, curvature_jets
from .geom4 import PseudoSphereKind, check_membership, pseudo_dot, triple_product
from .nullcone import DENOM_TOL, FrontSheet, front_point, sigma, singular_lambda

VANISH_TOL = 1e-7
MEMBERSHIP_TOL = 1e-7


@dataclass
class DistanceEvaluation:
    s0: float
    v0: np.ndarray
    d: list  # d^(0) .. d^(4)
    satisfied_levels: int  # largest k with d^(0..k) = 0; -1 if d^(0) != 0
    tol: float

    @property
    def vanishing_count(self) -> int:
        return self.satisfied_levels + 1


def _tolerances(d, tol, scale_aware):
    if not scale_aware:
        return [tol] * len(d)
    scale = max(1.0, max(abs(x) for x in d))
    return [tol * scale] * len(d)


def dist_sq_jets(
    fc: FramedCurve, s0: float, v0, tol: float = VANISH_TOL, scale_aware: bool = False
) -> DistanceEvaluation:
    v0 = np.asarray(v0, dtype=float)
    if not check_membership(v0, PseudoSphereKind.ADS3, MEMBERSHIP_TOL):
        raise NotOnAdS3Error(f"v0 is not on AdS3: <v0,v0> = {pseudo_dot(v0, v0):.9g}")
    g, _, _ = fc.jets(float(s0), J.ORDER)
    diff = tuple(gi - vi for gi, vi in zip(g, v0))
    D = pseudo_dot(diff, diff)
    d = [float(x) for x in D.derivatives]
    tols = _tolerances(d, tol, scale_aware)
    level = -1
    for k, (x, t) in enumerate(zip(d, tols)):
        if abs(x) > t:
            break
        level = k
    return DistanceEvaluation(float(s0), v0, d, level, tol)


def locus_point(fc: FramedCurve, s0: float, sheet=FrontSheet.PLUS, tol_denom: float = DENOM_TOL):
    """gamma(s0) - alpha/(m +/- n) (v1 +/- v2): the singular point of NF over s0."""
    lam = singular_lambda(fc, float(s0), sheet, tol_denom)
    return front_point(fc, float(s0), lam, sheet)


@dataclass
class ConditionReport:
    s0: float
    v0: np.ndarray
    d: list
    levels: int  # highest item whose derivative conditions hold; 0 if d^(0) != 0
    derivative_conditions: dict  # item -> bool
    alternatives: list  # geometric alternatives that hold, by item label
    decomposition: dict = field(default_factory=dict)
    alpha_jet: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "s0": self.s0,
            "v0": [float(x) for x in self.v0],
            "d": list(self.d),
            "levels": self.levels,
            "alternatives": list(self.alternatives),
        }


def check_conditions(
    fc: FramedCurve,
    s0: float,
    v0,
    tol: float = VANISH_TOL,
    tol_denom: float = DENOM_TOL,
    scale_aware: bool = False,
) -> ConditionReport:
    s0 = float(s0)
    ev = dist_sq_jets(fc, s0, v0, tol, scale_aware)
    v0 = ev.v0
    eps = fc.epsilon
    g, v1, v2 = fc.values(s0)
    mu = triple_product(g, v1, v2)
    w = v0 - g

    def zero(x):
        return abs(x) <= tol

    def close(x, y):
        return float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) <= tol

    a = eps * pseudo_dot(w, v1)
    b = -eps * pseudo_dot(w, v2)
    c = pseudo_dot(w, mu)
    recon = g + a * v1 + b * v2 + c * mu
    decomposed = close(recon, v0) and zero(c * c + eps * (a * a - b * b))

    aj = curvature_jets(fc, s0).alpha
    ad = [float(aj.d(k)) for k in range(4)]
    a0, a1, a2, a3 = (zero(x) for x in ad)
    at_gamma = close(v0, g)

    on_ray, at_locus, sig_zero, dsig_zero = {}, {}, {}, {}
    for sheet in FrontSheet:
        p = sheet.sign
        lam = eps * pseudo_dot(w, v1)
        on_ray[sheet] = close(w, lam * (v1 + p * v2))
        try:
            at_locus[sheet] = close(v0, locus_point(fc, s0, sheet, tol_denom))
        except ArithmeticError:
            at_locus[sheet] = False
        sg, dsg = sigma(fc, s0, sheet)
        sig_zero[sheet], dsig_zero[sheet] = zero(sg), zero(dsg)

    alts = []
    if decomposed:
        alts.append("(1) v0 = gamma + a v1 + b v2 + c mu with c^2 = -eps(a^2 - b^2)")
    if a0:
        alts.append("(2) alpha(s0) = 0 [as-amended]")
    for sh in FrontSheet:
        if on_ray[sh]:
            alts.append(f"(2) v0 on the null ray gamma + lambda(v1 {sh.symbol} v2)")
    if a0 and a1:
        alts.append("(3)(i) alpha = alpha' = 0")
    for sh in FrontSheet:
        if a0 and on_ray[sh]:
            alts.append(f"(3)(ii) alpha(s0) = 0 and v0 on the null ray ({sh.symbol}) [as-amended]")
        if at_locus[sh]:
            alts.append(f"(3)(iii) v0 is the singular locus point ({sh.symbol})")
    if a0 and a1 and a2:
        alts.append("(4)(i) alpha = alpha' = alpha'' = 0")
    for sh in FrontSheet:
        if a0 and a1 and on_ray[sh]:
            alts.append(f"(4)(ii) alpha = alpha' = 0 and v0 on the null ray ({sh.symbol})")
    if a0 and at_gamma:
        alts.append("(4)(iii) alpha = 0 and v0 = gamma(s0)")
    for sh in FrontSheet:
        if at_locus[sh] and sig_zero[sh]:
            alts.append(f"(4)(iv) v0 is the singular locus point ({sh.symbol}) and sigma = 0")
    if a0 and a1 and a2 and a3:
        alts.append("(5)(i) alpha = alpha' = alpha'' = alpha''' = 0")
    for sh in FrontSheet:
        if a0 and a1 and a2 and on_ray[sh]:
            alts.append(f"(5)(ii) alpha = alpha' = alpha'' = 0 and v0 on the null ray ({sh.symbol})")
    if a0 and a1 and at_gamma:
        alts.append("(5)(iii) alpha = alpha' = 0 and v0 = gamma(s0)")
    for sh in FrontSheet:
        if at_locus[sh] and sig_zero[sh] and dsig_zero[sh]:
            alts.append(f"(5)(iv) v0 is the singular locus point ({sh.symbol}) and sigma = sigma' = 0")

    derivative_conditions = {k: ev.satisfied_levels >= k - 1 for k in range(1, 6)}
    return ConditionReport(
        s0=s0,
        v0=v0,
        d=ev.d,
        levels=ev.satisfied_levels + 1,
        derivative_conditions=derivative_conditions,
        alternatives=alts,
        decomposition={"a": float(a), "b": float(b), "c": float(c)},
        alpha_jet=ad,
    )


def alternatives_for(report: ConditionReport, item: int) -> list:
    """Alternatives of ``report`` that belong to item ``item`` (labels "(item)...")."""
    return [a for a in report.alternatives if a.startswith(f"({item})")]
