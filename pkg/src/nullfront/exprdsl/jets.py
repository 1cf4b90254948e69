"""Truncated Taylor jets for forward-mode differentiation up to order 4.

A :class:`Jet` stores normalized Taylor coefficients ``c[k] = f^(k)(s) / k!``.
Coefficients may be Python floats or numpy arrays of a common shape, in which
case one jet carries the expansion at many parameter values at once.

Elementary functions use the standard recurrences for Taylor coefficients of
composed series (see e.g. Griewank & Walther, *Evaluating Derivatives*,
ch. 13).
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError

ORDER = 4
DIV_TOL = 1e-300


def _any(mask) -> bool:
    return bool(np.any(mask))


class Jet:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = list(coeffs)

    # construction -------------------------------------------------------

    @classmethod
    def const(cls, value, order: int = ORDER, like=None) -> "Jet":
        zero = np.zeros_like(like, dtype=float) if like is not None else 0.0
        return cls([value + zero] + [zero] * order)

    @classmethod
    def variable(cls, s, order: int = ORDER) -> "Jet":
        s = np.asarray(s, dtype=float) if not np.isscalar(s) else float(s)
        zero = np.zeros_like(s) if isinstance(s, np.ndarray) else 0.0
        coeffs = [s, zero + 1.0] + [zero] * (order - 1)
        return cls(coeffs[: order + 1])

    @classmethod
    def from_derivatives(cls, derivs) -> "Jet":
        return cls([d / math.factorial(k) for k, d in enumerate(derivs)])

    # access -------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.c) - 1

    @property
    def value(self):
        return self.c[0]

    def d(self, k: int):
        """k-th derivative with respect to the parameter."""
        return self.c[k] * math.factorial(k)

    @property
    def derivatives(self) -> list:
        return [self.d(k) for k in range(len(self.c))]

    def deriv(self) -> "Jet":
        """Jet of the derivative; loses one order."""
        return Jet([k * self.c[k] for k in range(1, len(self.c))])

    def truncate(self, order: int) -> "Jet":
        return Jet(self.c[: order + 1])

    def __repr__(self):
        return f"Jet({self.derivatives!r})"

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(other, order):
        if isinstance(other, Jet):
            return other
        return Jet([other] + [0.0] * order)

    def _pair(self, other):
        other = self._lift(other, self.order)
        n = min(len(self.c), len(other.c))
        return self.c[:n], other.c[:n], n

    def __add__(self, other):
        a, b, n = self._pair(other)
        return Jet([a[k] + b[k] for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        a, b, n = self._pair(other)
        return Jet([a[k] - b[k] for k in range(n)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Jet([-x for x in self.c])

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet([x * other for x in self.c])
        a, b, n = self._pair(other)
        return Jet([sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(n)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            if _any(np.abs(other) <= DIV_TOL):
                raise DomainError("division by zero")
            return Jet([x / other for x in self.c])
        a, b, n = self._pair(other)
        if _any(np.abs(b[0]) <= DIV_TOL):
            raise DomainError("division by zero")
        q = []
        for k in range(n):
            acc = a[k]
            for j in range(1, k + 1):
                acc = acc - b[j] * q[k - j]
            q.append(acc / b[0])
        return Jet(q)

    def __rtruediv__(self, other):
        return self._lift(other, self.order) / self

    def __pow__(self, exponent):
        if isinstance(exponent, Jet):
            return exp(exponent * log(self))
        if float(exponent).is_integer():
            return self._ipow(int(exponent))
        if _any(self.c[0] <= 0):
            raise DomainError("non-integer power of a non-positive base")
        return exp(log(self) * exponent)

    def __rpow__(self, base):
        if _any(np.asarray(base) <= 0):
            raise DomainError("power with non-positive base")
        return exp(self * np.log(base))

    def _ipow(self, n: int) -> "Jet":
        if n < 0:
            return 1.0 / self._ipow(-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return Jet.const(1.0, self.order, like=self.c[0] if isinstance(self.c[0], np.ndarray) else None)
        return result


# elementary functions ----------------------------------------------------


def _zero_like(x):
    return np.zeros_like(x) if isinstance(x, np.ndarray) else 0.0


def exp(a: Jet) -> Jet:
    c = a.c
    e = [np.exp(c[0])]
    for k in range(1, len(c)):
        e.append(sum(j * c[j] * e[k - j] for j in range(1, k + 1)) / k)
    return Jet(e)


def log(a: Jet) -> Jet:
    c = a.c
    if _any(c[0] <= 0):
        raise DomainError("log of a non-positive value")
    out = [np.log(c[0])]
    for k in range(1, len(c)):
        acc = c[k] - sum(j * out[j] * c[k - j] for j in range(1, k)) / k
        out.append(acc / c[0])
    return Jet(out)


def sqrt(a: Jet) -> Jet:
    c = a.c
    if _any(c[0] < 0):
        raise DomainError("sqrt of a negative value")
    if _any(c[0] == 0) and len(c) > 1:
        raise DomainError("sqrt is not differentiable at 0")
    r = [np.sqrt(c[0])]
    for k in range(1, len(c)):
        acc = c[k] - sum(r[j] * r[k - j] for j in range(1, k))
        r.append(acc / (2.0 * r[0]))
    return Jet(r)


def _sincos(a: Jet, hyperbolic: bool):
    c = a.c
    if hyperbolic:
        s, co = [np.sinh(c[0])], [np.cosh(c[0])]
        sign = 1.0
    else:
        s, co = [np.sin(c[0])], [np.cos(c[0])]
        sign = -1.0
    for k in range(1, len(c)):
        s.append(sum(j * c[j] * co[k - j] for j in range(1, k + 1)) / k)
        co.append(sign * sum(j * c[j] * s[k - j] for j in range(1, k + 1)) / k)
    return Jet(s), Jet(co)


def sin(a: Jet) -> Jet:
    return _sincos(a, False)[0]


def cos(a: Jet) -> Jet:
    return _sincos(a, False)[1]


def tan(a: Jet) -> Jet:
    s, c = _sincos(a, False)
    return s / c


def sinh(a: Jet) -> Jet:
    return _sincos(a, True)[0]


def cosh(a: Jet) -> Jet:
    return _sincos(a, True)[1]


def absolute(a: Jet) -> Jet:
    v = a.c[0]
    if _any(v == 0):
        raise DomainError("abs is not differentiable at 0")
    return a * np.sign(v)


FUNCTIONS = {
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "sinh": sinh,
    "cosh": cosh,
    "sqrt": sqrt,
    "exp": exp,
    "log": log,
    "abs": absolute,
}


# jet vectors: plain 4-tuples of Jets --------------------------------------


def vderiv(v):
    return tuple(x.deriv() for x in v)


def vvalue(v) -> np.ndarray:
    return np.array([x.value for x in v])


def vd(v, k: int) -> np.ndarray:
    return np.array([x.d(k) for x in v])


def vconst(u, order: int = ORDER, like=None):
    return tuple(Jet.const(x, order, like=like) for x in u)


def vmatmul(A, v):
    """Apply a constant 4x4 matrix to a jet vector."""
    return tuple(sum((A[i][j] * v[j] for j in range(4) if A[i][j] != 0), Jet([_zero_like(v[0].c[0])] * len(v[0].c))) for i in range(4))
