"""Recursive-descent parser for scalar expressions in the parameter ``s``.

Grammar (lowest to highest precedence)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' unary)?          # right associative
    atom   := NUMBER | 's' | 'pi' | FUNC '(' expr ')' | '(' expr ')'

``**`` is accepted as a synonym for ``^``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import DomainError, ExprSyntaxError, UnknownIdentifierError
from . import jets
from .jets import Jet

FUNCTION_NAMES = frozenset(jets.FUNCTIONS)
VARIABLE = "s"


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str = VARIABLE


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Var, Pi, Neg, BinOp, Call]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(src: str):
    pos = 0
    tokens = []
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", _byte_offset(src, pos), src)
        kind = m.lastgroup
        if kind != "ws":
            text = m.group()
            if text == "**":
                text = "^"
            tokens.append((kind, text, pos))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


def _byte_offset(src: str, pos: int) -> int:
    return len(src[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, expected: str, tok=None, cls=ExprSyntaxError):
        kind, text, pos = tok or self.peek()
        found = "end of input" if kind == "end" else repr(text)
        raise cls(f"expected {expected}, found {found}", _byte_offset(self.src, pos), self.src)

    def expect(self, text: str):
        tok = self.peek()
        if tok[1] != text or tok[0] == "end":
            self.error(repr(text))
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != "end":
            self.error("operator or end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.unary())
        if kind == "op" and text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Node:
        tok = self.peek()
        kind, text, _ = tok
        if kind == "num":
            self.advance()
            return Num(float(text))
        if kind == "name":
            self.advance()
            if text == VARIABLE:
                return Var()
            if text == "pi":
                return Pi()
            if text in FUNCTION_NAMES:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            self.error("one of s, pi or a function name", tok, UnknownIdentifierError)
        if kind == "op" and text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.error("number, identifier or '('")


def parse_expr(src: str) -> Node:
    """Parse ``src`` into an immutable AST."""
    if not src or not src.strip():
        raise ExprSyntaxError("empty expression", 0, src or "")
    return _Parser(src).parse()


def pretty(node: Node) -> str:
    """Fully parenthesized source text that reparses to the same tree."""
    if isinstance(node, Num):
        return repr(node.value) if node.value >= 0 else f"(-{-node.value!r})"
    if isinstance(node, Var):
        return VARIABLE
    if isinstance(node, Pi):
        return "pi"
    if isinstance(node, Neg):
        return f"(-{pretty(node.operand)})"
    if isinstance(node, BinOp):
        return f"({pretty(node.left)} {node.op} {pretty(node.right)})"
    if isinstance(node, Call):
        return f"{node.func}({pretty(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


def depends_on_s(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, Neg):
        return depends_on_s(node.operand)
    if isinstance(node, BinOp):
        return depends_on_s(node.left) or depends_on_s(node.right)
    if isinstance(node, Call):
        return depends_on_s(node.arg)
    return False


# evaluation ---------------------------------------------------------------


def _integer_exponent(node: Node):
    """The exponent as an int when it is an s-free integer constant."""
    if depends_on_s(node):
        return None
    value = eval_value(node, 0.0)
    if float(value).is_integer():
        return int(value)
    return None


def eval_jet(node: Node, s, order: int = jets.ORDER) -> Jet:
    """Value and derivatives (up to ``order``) of the expression at ``s``.

    ``s`` may be a float or a 1-D array; in the latter case the jet
    coefficients are arrays over the sample points.
    """
    result = _jet(node, Jet.variable(s, order))
    if not isinstance(result, Jet):
        like = np.asarray(s, dtype=float) if np.ndim(s) else None
        result = Jet.const(float(result), order, like=like)
    return result


def _jet(node: Node, sj: Jet):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Pi):
        return math.pi
    if isinstance(node, Var):
        return sj
    if isinstance(node, Neg):
        return -_jet(node.operand, sj)
    if isinstance(node, Call):
        arg = _jet(node.arg, sj)
        if not isinstance(arg, Jet):
            return eval_value(node, 0.0)
        return jets.FUNCTIONS[node.func](arg)
    if isinstance(node, BinOp):
        if node.op == "^":
            n = _integer_exponent(node.right)
            left = _jet(node.left, sj)
            if n is not None:
                if isinstance(left, Jet):
                    return left._ipow(n)
                return _value_pow(left, float(n))
            right = _jet(node.right, sj)
            if not isinstance(left, Jet) and not isinstance(right, Jet):
                return _value_pow(left, right)
            if not isinstance(left, Jet):
                return right.__rpow__(left)
            return left ** right
        left, right = _jet(node.left, sj), _jet(node.right, sj)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            if not isinstance(right, Jet) and not isinstance(left, Jet):
                return _value_div(left, right)
            if isinstance(right, Jet):
                return right.__rtruediv__(left) if not isinstance(left, Jet) else left / right
            return left / right
    raise TypeError(f"not an expression node: {node!r}")


def _value_div(a, b):
    if np.any(np.abs(b) <= jets.DIV_TOL):
        raise DomainError("division by zero")
    return a / b


def _value_pow(a, b):
    if np.ndim(b) == 0 and float(b).is_integer():
        n = int(b)
        a = np.asarray(a, dtype=float)
        return a**n if n >= 0 else _value_div(1.0, a ** (-n))
    if np.any(np.asarray(a) <= 0):
        raise DomainError("non-integer power of a non-positive base")
    return np.exp(b * np.log(a))


def _checked_sqrt(x):
    if np.any(np.asarray(x) < 0):
        raise DomainError("sqrt of a negative value")
    return np.sqrt(x)


def _checked_log(x):
    if np.any(np.asarray(x) <= 0):
        raise DomainError("log of a non-positive value")
    return np.log(x)


_VALUE_FUNCS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "sqrt": _checked_sqrt,
    "exp": np.exp,
    "log": _checked_log,
    "abs": np.abs,
}


def eval_value(node: Node, s):
    """Plain (derivative-free) evaluation; vectorizes over array ``s``."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Pi):
        return math.pi
    if isinstance(node, Var):
        return s
    if isinstance(node, Neg):
        return -eval_value(node.operand, s)
    if isinstance(node, Call):
        return _VALUE_FUNCS[node.func](eval_value(node.arg, s))
    if isinstance(node, BinOp):
        a, b = eval_value(node.left, s), eval_value(node.right, s)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return _value_div(a, b)
        if node.op == "^":
            return _value_pow(a, b)
    raise TypeError(f"not an expression node: {node!r}")


def eval_constant(src: str) -> float:
    """Evaluate an s-free expression such as ``2*pi``."""
    node = parse_expr(src)
    if depends_on_s(node):
        raise ExprSyntaxError("constant expression must not depend on s", 0, src)
    return float(eval_value(node, 0.0))
