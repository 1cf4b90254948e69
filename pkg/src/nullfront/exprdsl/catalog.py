"""Curve specifications: four component expressions in ``s``.

Built-in entries are the closed-form framed curves used throughout the test
suite plus a constant-curvature geodesic benchmark.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import UnknownCatalogEntryError
from ..geom4 import PseudoSphereKind
from .jets import ORDER
from .parser import eval_constant, eval_jet, eval_value, parse_expr, pretty


@dataclass(frozen=True)
class CurveSpec:
    name: str
    components: tuple
    intended_sphere: PseudoSphereKind
    sources: tuple = field(default=(), compare=False)

    @classmethod
    def from_strings(cls, name, sources, sphere=PseudoSphereKind.ADS3) -> "CurveSpec":
        if len(sources) != 4:
            raise ValueError(f"{name}: expected 4 component expressions, got {len(sources)}")
        comps = tuple(parse_expr(src) for src in sources)
        return cls(name, comps, sphere, tuple(sources))

    def jets(self, s, order: int = ORDER) -> tuple:
        return tuple(eval_jet(c, s, order) for c in self.components)

    def value(self, s) -> np.ndarray:
        s_arr = np.asarray(s, dtype=float)
        vals = [eval_value(c, s) for c in self.components]
        return np.array(np.broadcast_arrays(*vals, s_arr)[:4], dtype=float)

    def source_text(self) -> list:
        return list(self.sources) if self.sources else [pretty(c) for c in self.components]


# Example 1 shares two radicals across v1 and v2.
_R4 = "sqrt(1+s^4)"
_R6 = "sqrt(1+s^6)"
_A1 = "(8+18*s^2+s^6)"
_B1 = "(4+9*s^2+13*s^6)"
_D2 = f"(sqrt{_A1}*sqrt{_B1})"

# Example 2
_RS = "sqrt(1+sin(s)^6+cos(s)^6)"
_K2 = "sqrt(1+sin(s)^2*cos(s)^2)"

# Example 3
_R3 = "sqrt(1+s^6+s^8)"
_W3 = "sqrt(s^8+16*s^2+9)"

_ENTRIES = {
    "example1": {
        "gamma": [f"{_R4}/sqrt(2)", f"{_R6}/sqrt(2)", "s^2/sqrt(2)", "s^3/sqrt(2)"],
        "v1": [
            f"s^3*{_R4}/sqrt(2*{_A1})",
            f"s^3*{_R6}/sqrt(2*{_A1})",
            f"(s^5+6*s)/sqrt(2*{_A1})",
            f"(s^6-4)/sqrt(2*{_A1})",
        ],
        "v2": [
            f"-{_R4}*(4+9*s^2-2*s^6)/{_D2}",
            f"{_R6}*(4+9*s^2+3*s^6)/{_D2}",
            f"2*s^2*(-2+3*s^2+s^6)/{_D2}",
            f"3*s^3*(-2+3*s^2+s^6)/{_D2}",
        ],
        "interval": (-1.0, 1.0),
    },
    "example2": {
        "gamma": ["0", _RS, "cos(s)^3", "sin(s)^3"],
        "v1": [
            "0",
            f"sin(s)*cos(s)*{_RS}/{_K2}",
            f"sin(s)*(1+cos(s)^4)/{_K2}",
            f"cos(s)*(1+sin(s)^4)/{_K2}",
        ],
        "v2": ["1", "0", "0", "0"],
        "interval": (0.0, 2 * math.pi),
    },
    "example3": {
        "gamma": ["0", _R3, "s^3", "s^4"],
        "v1": ["0", f"s^4*{_R3}/{_W3}", f"(s^7+4*s)/{_W3}", f"(s^8-3)/{_W3}"],
        "v2": ["1", "0", "0", "0"],
        "interval": (-1.0, 1.0),
    },
    "geodesic": {
        "gamma": ["cosh(s)", "0", "0", "sinh(s)"],
        "v1": ["0", "0", "1", "0"],
        "v2": ["0", "1", "0", "0"],
        "interval": (-1.0, 1.0),
    },
}

CATALOG_NAMES = tuple(_ENTRIES)


def _triple(name, gamma, v1, v2):
    return (
        CurveSpec.from_strings(f"{name}.gamma", gamma, PseudoSphereKind.ADS3),
        CurveSpec.from_strings(f"{name}.v1", v1, PseudoSphereKind.S3_2),
        CurveSpec.from_strings(f"{name}.v2", v2, PseudoSphereKind.ADS3),
    )


def catalog(name: str):
    """Return ``(gamma, v1, v2)`` curve specs for a built-in entry."""
    try:
        entry = _ENTRIES[name]
    except KeyError:
        raise UnknownCatalogEntryError(
            f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG_NAMES)}"
        ) from None
    return _triple(name, entry["gamma"], entry["v1"], entry["v2"])


def catalog_interval(name: str):
    if name not in _ENTRIES:
        raise UnknownCatalogEntryError(f"unknown catalog entry {name!r}")
    return _ENTRIES[name]["interval"]


def load_spec_file(path):
    """Read a JSON curve-spec document.

    Schema: ``{name, gamma: [4 str], v1: [4 str], v2: [4 str], interval: [a, b]}``.
    ``v1``/``v2`` may be omitted for commands that only need the base curve.
    Interval bounds may be numbers or constant expressions such as ``"2*pi"``.
    """
    doc = json.loads(Path(path).read_text())
    name = doc.get("name") or Path(path).stem
    gamma = CurveSpec.from_strings(f"{name}.gamma", doc["gamma"], PseudoSphereKind.ADS3)
    v1 = v2 = None
    if "v1" in doc and "v2" in doc:
        v1 = CurveSpec.from_strings(f"{name}.v1", doc["v1"], PseudoSphereKind.S3_2)
        v2 = CurveSpec.from_strings(f"{name}.v2", doc["v2"], PseudoSphereKind.ADS3)
    a, b = (_bound(x) for x in doc["interval"])
    if not a < b:
        raise ValueError(f"empty interval [{a}, {b}] in {path}")
    return name, gamma, v1, v2, (a, b)


def _bound(x) -> float:
    if isinstance(x, str):
        return eval_constant(x)
    return float(x)

