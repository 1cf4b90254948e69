import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nullfront.exprdsl import eval_jet, eval_value, parse_expr, pretty
from nullfront.exprdsl.parser import BinOp, Call, Neg, Num, Var
from nullfront.framed import FramedCurve, curvature_at
from nullfront.geom4 import METRIC, det4, pseudo_dot, triple_product

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
vec4 = st.lists(finite, min_size=4, max_size=4).map(np.array)
scalar = st.floats(min_value=-5, max_value=5, allow_nan=False)


# metric and triple product --------------------------------------------------------


@given(vec4, vec4, vec4, scalar, scalar)
def test_pseudo_dot_bilinear_and_symmetric(u, v, w, a, b):
    assert pseudo_dot(u, v) == pseudo_dot(v, u)
    lhs = pseudo_dot(a * u + b * v, w)
    rhs = a * pseudo_dot(u, w) + b * pseudo_dot(v, w)
    assert math.isclose(lhs, rhs, rel_tol=1e-9, abs_tol=1e-9)


@given(vec4, vec4, vec4)
def test_triple_product_orthogonal(u, v, w):
    t = triple_product(u, v, w)
    scale = 1 + np.linalg.norm(u) * np.linalg.norm(v) * np.linalg.norm(w) * 10
    for x in (u, v, w):
        assert abs(pseudo_dot(t, x)) <= 1e-12 * scale


@given(vec4, vec4, vec4)
def test_triple_product_antisymmetric(u, v, w):
    t = triple_product(u, v, w)
    np.testing.assert_allclose(triple_product(v, u, w), -t, atol=1e-10)
    np.testing.assert_allclose(triple_product(u, w, v), -t, atol=1e-10)
    np.testing.assert_allclose(triple_product(w, u, v), t, atol=1e-10)


@given(vec4, vec4, vec4, vec4)
def test_triple_product_pairs_to_determinant(x, u, v, w):
    lhs = pseudo_dot(triple_product(u, v, w), x)
    scale = 1 + np.prod([np.linalg.norm(y) for y in (x, u, v, w)])
    assert abs(lhs - det4(x, u, v, w)) <= 1e-11 * scale


# isometry invariance of the curvature functions -----------------------------------


def _isometry(theta, phi, t):
    R = np.eye(4)
    R[:2, :2] = [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
    Q = np.eye(4)
    Q[2:, 2:] = [[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]]
    B = np.eye(4)
    B[0, 0] = B[2, 2] = math.cosh(t)
    B[0, 2] = B[2, 0] = math.sinh(t)
    return R @ B @ Q


_EX1 = FramedCurve.from_catalog("example1")


@settings(max_examples=25, deadline=None)
@given(
    st.floats(-math.pi, math.pi),
    st.floats(-math.pi, math.pi),
    st.floats(-1.0, 1.0),
    st.floats(-0.95, 0.95),
)
def test_curvature_is_isometry_invariant(theta, phi, t, s):
    A = _isometry(theta, phi, t)
    np.testing.assert_allclose(A.T @ METRIC @ A, METRIC, atol=1e-12)
    before = curvature_at(_EX1, s)
    after = curvature_at(_EX1.transformed(A), s)
    for name in ("alpha", "ell", "m", "n"):
        x, y = getattr(before, name), getattr(after, name)
        assert math.isclose(x, y, rel_tol=1e-8, abs_tol=1e-8), name


# expressions ----------------------------------------------------------------------

_SMOOTH = ("sin", "cos", "sinh", "cosh", "exp")

leaves = st.one_of(
    st.just(Var()),
    st.floats(min_value=0.0, max_value=3.0, allow_nan=False).map(lambda x: Num(round(x, 3))),
)


def _extend(children):
    return st.one_of(
        st.builds(BinOp, st.sampled_from("+-*"), children, children),
        st.builds(Call, st.sampled_from(_SMOOTH), children),
        st.builds(Neg, children),
    )


expressions = st.recursive(leaves, _extend, max_leaves=6)
any_expressions = st.recursive(
    st.one_of(leaves, st.floats(min_value=0, max_value=1e6, allow_nan=False).map(Num)),
    lambda c: st.one_of(
        st.builds(BinOp, st.sampled_from("+-*/^"), c, c),
        st.builds(Call, st.sampled_from(sorted(_SMOOTH) + ["sqrt", "log", "tan", "abs"]), c),
        st.builds(Neg, c),
    ),
    max_leaves=10,
)


@given(any_expressions)
def test_pretty_round_trip(node):
    assert parse_expr(pretty(node)) == node


@settings(max_examples=150, deadline=None)
@given(expressions, st.floats(min_value=-1.0, max_value=1.0))
def test_jets_match_finite_differences(node, s):
    h = 1e-5
    with np.errstate(over="ignore", invalid="ignore"):
        jet = eval_jet(node, s)
        lo, hi = eval_jet(node, s - h), eval_jet(node, s + h)
    assume(all(np.isfinite(j.d(k)) for j in (jet, lo, hi) for k in range(5)))
    scale = max(1.0, *(abs(jet.d(k)) for k in range(5)))
    assume(scale < 1e8)
    assert math.isclose(jet.d(0), float(eval_value(node, s)), rel_tol=1e-12, abs_tol=1e-12 * scale)
    for k in range(4):
        fd = (hi.d(k) - lo.d(k)) / (2 * h)
        assert abs(fd - jet.d(k + 1)) <= 1e-6 * scale, k
