"""Expression parsing, jet evaluation and the built-in curve catalog."""

from .catalog import CATALOG_NAMES, CurveSpec, catalog, catalog_interval, load_spec_file
from .jets import ORDER, Jet
from .parser import eval_constant, eval_jet, eval_value, parse_expr, pretty

__all__ = [
    "CATALOG_NAMES",
    "CurveSpec",
    "Jet",
    "ORDER",
    "catalog",
    "catalog_interval",
    "eval_constant",
    "eval_jet",
    "eval_value",
    "load_spec_file",
    "parse_expr",
    "pretty",
]
