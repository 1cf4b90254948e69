"""Root location on an interval: sign-change scan, bisection, tangential roots."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

XTOL = 1e-12
MERGE_TOL = 1e-9


@dataclass(frozen=True)
class Root:
    s: float
    kind: str  # "simple", "grid" (exact zero on a grid node), "endpoint" or "tangential"


def bisect(f, a: float, b: float, fa=None, fb=None, xtol: float = XTOL) -> float:
    """Bisection on a sign-change bracket until ``|b - a| < xtol``.

    Returns whichever of the final bracket ends and midpoint has the smallest
    ``|f|``.
    """
    fa = f(a) if fa is None else fa
    fb = f(b) if fb is None else fb
    if fa == 0:
        return a
    if fb == 0:
        return b
    if np.sign(fa) == np.sign(fb):
        raise ValueError(f"no sign change on [{a}, {b}]")
    while abs(b - a) >= xtol:
        mid = 0.5 * (a + b)
        if mid == a or mid == b:
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if np.sign(fm) == np.sign(fa):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    mid = 0.5 * (a + b)
    candidates = [(abs(fa), a), (abs(fb), b), (abs(f(mid)), mid)]
    return min(candidates)[1]


def scan_roots(f, a: float, b: float, grid: int, tol: float, df=None, values=None, dvalues=None) -> list:
    """All roots of ``f`` on ``[a, b]``.

    ``f`` must accept scalars; ``values``/``dvalues`` may supply the function
    and its derivative already evaluated on ``np.linspace(a, b, grid)``.
    Sign changes between grid nodes are refined by bisection.  Roots of even
    multiplicity are found as local minima of ``|f|`` whose derivative ``df``
    changes sign nearby; the derivative root is accepted when ``|f| <= tol``
    there.
    """
    x = np.linspace(a, b, grid)
    y = np.asarray(values if values is not None else [f(t) for t in x], dtype=float)
    roots = []
    for i in range(grid):
        if y[i] == 0:
            roots.append(Root(float(x[i]), "grid"))
    for i in range(grid - 1):
        if y[i] * y[i + 1] < 0:
            roots.append(Root(bisect(f, x[i], x[i + 1], y[i], y[i + 1]), "simple"))
    for i in (0, grid - 1):
        if y[i] != 0 and abs(y[i]) <= tol:
            roots.append(Root(float(x[i]), "endpoint"))

    if df is not None:
        dy = np.asarray(dvalues if dvalues is not None else [df(t) for t in x], dtype=float)
        ay = np.abs(y)
        for i in range(1, grid - 1):
            if not (ay[i] <= ay[i - 1] and ay[i] <= ay[i + 1]) or y[i] == 0:
                continue
            if y[i - 1] * y[i] < 0 or y[i] * y[i + 1] < 0:
                continue
            r = None
            for lo, hi in ((i - 1, i), (i, i + 1)):
                if dy[lo] * dy[hi] <= 0:
                    r = bisect(df, x[lo], x[hi], dy[lo], dy[hi])
                    break
            if r is not None and abs(f(r)) <= tol:
                roots.append(Root(float(r), "tangential"))

    return _merge(roots, f)


def _merge(roots, f):
    roots = sorted(roots, key=lambda r: r.s)
    merged = []
    for r in roots:
        if merged and abs(r.s - merged[-1].s) <= MERGE_TOL:
            if abs(f(r.s)) < abs(f(merged[-1].s)):
                merged[-1] = r
            continue
        merged.append(r)
    return merged
