import math

import numpy as np
import pytest

from nullfront.geom4 import (
    CausalClass,
    PseudoSphereKind,
    basis,
    causal_character,
    check_membership,
    det4,
    gram,
    pseudo_dot,
    pseudo_norm,
    triple_product,
)

E1, E2, E3, E4 = (basis(i) for i in range(1, 5))


def test_pseudo_dot_basis_signs():
    assert pseudo_dot(E1, E1) == -1
    assert pseudo_dot(E2, E2) == -1
    assert pseudo_dot(E3, E3) == 1
    assert pseudo_dot(E4, E4) == 1


def test_pseudo_dot_worked_value():
    u = np.array([1.0, 2.0, 3.0, 4.0])
    assert pseudo_dot(u, u) == 20.0


def test_pseudo_dot_is_vectorized():
    U = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 2.0], [0.0, 0.0]])
    np.testing.assert_array_equal(pseudo_dot(U, U), [-1.0, 3.0])


@pytest.mark.parametrize(
    "u, expected",
    [(E1, 1.0), (np.zeros(4), 0.0), ((1, 0, 1, 1), 1.0), ((1, 2, 3, 4), math.sqrt(20))],
)
def test_pseudo_norm(u, expected):
    assert pseudo_norm(u) == pytest.approx(expected, abs=1e-15)


def test_pseudo_norm_squared_matches_abs_dot():
    rng = np.random.default_rng(3)
    for u in rng.normal(size=(50, 4)):
        assert pseudo_norm(u) ** 2 == pytest.approx(abs(pseudo_dot(u, u)), rel=1e-14)


@pytest.mark.parametrize(
    "u, expected",
    [
        (E2, CausalClass.TIMELIKE),
        ((1, 0, 1, 0), CausalClass.LIGHTLIKE),
        ((0, 0, 2, 0), CausalClass.SPACELIKE),
        ((1, 0, 1 + 1e-12, 0), CausalClass.LIGHTLIKE),
    ],
)
def test_causal_character(u, expected):
    assert causal_character(u) is expected


def test_causal_character_respects_tolerance():
    u = (1.0, 0.0, 1.001, 0.0)
    assert causal_character(u) is CausalClass.SPACELIKE
    assert causal_character(u, tol=1e-2) is CausalClass.LIGHTLIKE


def test_triple_product_cofactor_values():
    np.testing.assert_array_equal(triple_product(E2, E3, E4), [-1, 0, 0, 0])
    np.testing.assert_array_equal(triple_product(E1, E3, E4), [0, 1, 0, 0])
    np.testing.assert_array_equal(triple_product(E1, E2, E3), [0, 0, 0, -1])
    np.testing.assert_array_equal(triple_product(E1, E3, E2), [0, 0, 0, 1])


def test_triple_product_repeated_argument_vanishes():
    u = np.array([0.3, -1.2, 2.0, 0.7])
    w = np.array([1.0, 4.0, -2.0, 5.0])
    np.testing.assert_allclose(triple_product(u, u, w), 0.0, atol=1e-13)


def test_triple_product_is_pseudo_orthogonal_to_arguments():
    u, v, w = np.array([[1.0, 2, 0, 1], [0, 1, 3, -1], [2, 0, 1, 1]])
    t = triple_product(u, v, w)
    for x in (u, v, w):
        assert abs(pseudo_dot(t, x)) < 1e-12


def test_det4():
    assert det4(E1, E2, E3, E4) == 1
    assert det4(E2, E1, E3, E4) == -1
    assert det4(E1, E1, E3, E4) == 0


def test_det4_matches_numpy():
    rng = np.random.default_rng(11)
    rows = rng.normal(size=(4, 4))
    assert det4(*rows) == pytest.approx(np.linalg.det(rows), rel=1e-12)


@pytest.mark.parametrize(
    "u, kind, expected",
    [
        ((1, 0, 0, 0), PseudoSphereKind.ADS3, True),
        ((0, 0, 1, 0), PseudoSphereKind.S3_2, True),
        ((1, 0, 1, 0), PseudoSphereKind.LAMBDA3, True),
        ((0, 0, 0, 0), PseudoSphereKind.LAMBDA3, False),
        ((0, 0, 1, 0), PseudoSphereKind.ADS3, False),
        ((math.cosh(2), 0, 0, math.sinh(2)), PseudoSphereKind.ADS3, True),
    ],
)
def test_check_membership(u, kind, expected):
    assert check_membership(u, kind, 1e-9) is expected


def test_gram_of_standard_frame():
    G = gram([E1, E3, E2, E4])
    np.testing.assert_array_equal(G, np.diag([-1.0, 1.0, -1.0, 1.0]))


def test_nonfinite_input_rejected():
    with pytest.raises(ValueError):
        pseudo_dot((np.nan, 0, 0, 0), E1)
