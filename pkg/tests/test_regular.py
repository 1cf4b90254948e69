import math

import numpy as np
import pytest

from nullfront.errors import NotOnAdS3Error, NotUnitSpeedError
from nullfront.exprdsl import CurveSpec, catalog
from nullfront.geom4 import pseudo_dot
from nullfront.regular import frenet_at, frenet_residuals

CIRCLE = CurveSpec.from_strings("circle", ["sqrt(2)", "0", "cos(s)", "sin(s)"])
GEODESIC = CurveSpec.from_strings("geo", ["cosh(s)", "0", "sinh(s)", "0"])


def test_geodesic_flag():
    fd = frenet_at(GEODESIC, 0.0)
    assert fd.geodesic and not fd.degenerate
    assert fd.kappa == 0.0
    assert fd.tau is None


@pytest.mark.parametrize("s", [0.0, 0.7, 2.5, -1.3])
def test_circle_curvature_and_torsion(s):
    fd = frenet_at(CIRCLE, s)
    assert fd.kappa == pytest.approx(math.sqrt(2), abs=1e-14)
    assert fd.delta == 1
    assert fd.tau == pytest.approx(0.0, abs=1e-14)
    np.testing.assert_allclose(fd.N1, [-math.sqrt(2), 0, -2 * math.cos(s), -2 * math.sin(s)], atol=1e-14)


def test_circle_normals_have_opposite_characters():
    for s in np.linspace(0, 2 * math.pi, 50):
        fd = frenet_at(CIRCLE, s)
        assert pseudo_dot(fd.n2, fd.n2) == pytest.approx(-fd.delta, abs=1e-7)


def test_circle_frenet_residuals():
    for s in np.linspace(0, 2 * math.pi, 50):
        assert max(frenet_residuals(CIRCLE, s).values()) < 1e-6


def test_twisted_curve():
    # <g,g> = -2 + 1 = -1 and <g',g'> = -2 + 3 = 1
    spec = CurveSpec.from_strings("twisted", ["sqrt(2)*cos(s)", "sqrt(2)*sin(s)", "cos(sqrt(3)*s)", "sin(sqrt(3)*s)"])
    for s in np.linspace(-1, 1, 11):
        fd = frenet_at(spec, s)
        assert not fd.geodesic and not fd.degenerate
        assert abs(fd.tau) > 1e-3
        assert pseudo_dot(fd.n2, fd.n2) == pytest.approx(-fd.delta, abs=1e-7)
        assert max(frenet_residuals(spec, s).values()) < 1e-6


def test_example1_is_not_unit_speed():
    g, _, _ = catalog("example1")
    with pytest.raises(NotUnitSpeedError):
        frenet_at(g, 0.0)


def test_off_ads_rejected():
    spec = CurveSpec.from_strings("bad", ["1", "1", "s", "0"])
    with pytest.raises(NotOnAdS3Error):
        frenet_at(spec, 0.0)


def test_degenerate_null_normal():
    # gamma'' - gamma = e2 + e4 is null and nonzero
    spec = CurveSpec.from_strings("nullnormal", ["cosh(s)", "-1", "sinh(s)", "-1"])
    fd = frenet_at(spec, 0.4)
    assert fd.degenerate and not fd.geodesic
    np.testing.assert_allclose(fd.N1, [0, 1, 0, 1], atol=1e-14)
    assert fd.n1 is None and fd.tau is None


def test_row_layout():
    fd = frenet_at(CIRCLE, 0.0)
    row = fd.as_row()
    assert len(row) == len(fd.CSV_HEADER)
