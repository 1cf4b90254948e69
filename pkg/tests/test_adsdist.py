import math

import numpy as np
import pytest

from nullfront.adsdist import alternatives_for, check_conditions, dist_sq_jets, locus_point
from nullfront.errors import NotOnAdS3Error
from nullfront.framed import FramedCurve, curvature_at
from nullfront.geom4 import pseudo_dot
from nullfront.nullcone import FrontSheet, find_singularities, sigma

EXAMPLES = ("example1", "example2", "example3")


@pytest.fixture(scope="module")
def fc():
    return {name: FramedCurve.from_catalog(name) for name in EXAMPLES}


def _ads_points(n, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        x = rng.normal(size=2)
        y = rng.normal(size=2)
        r = math.sqrt(1 + y @ y)
        out.append(np.concatenate([r * x / np.linalg.norm(x), y]))
    return out


def test_value_identity(fc):
    # <g - v0, g - v0> = -2 - 2<g, v0> on AdS3
    for name in EXAMPLES:
        for v0, s0 in zip(_ads_points(10, 5), np.linspace(-0.9, 0.9, 10)):
            ev = dist_sq_jets(fc[name], s0, v0)
            g = fc[name].values(s0)[0]
            assert ev.d[0] == pytest.approx(-2 - 2 * pseudo_dot(g, v0), abs=1e-10)


def test_zero_at_base_point(fc):
    g = fc["example1"].values(0.4)[0]
    ev = dist_sq_jets(fc["example1"], 0.4, g)
    assert ev.d[0] == 0.0
    assert ev.satisfied_levels >= 1


def test_generic_point_has_no_levels(fc):
    rep = check_conditions(fc["example1"], 0.3, [1.0, 0.0, 0.0, 0.0])
    assert rep.levels == 0
    assert rep.alternatives == [] or all(not a.startswith("(1)") for a in rep.alternatives)


def test_off_ads_point_rejected(fc):
    with pytest.raises(NotOnAdS3Error):
        dist_sq_jets(fc["example1"], 0.0, [1.0, 1.0, 0.0, 0.0])


def test_locus_point_example1(fc):
    np.testing.assert_allclose(locus_point(fc["example1"], 0.0), [1 / math.sqrt(2), 1 / math.sqrt(2), 0, 0])


def test_locus_point_example2(fc):
    lam = 3 * math.sqrt(5)
    k = math.sqrt(1.25)
    r = math.sqrt(1.25)
    c = s = 1 / math.sqrt(2)
    expected = [lam, r * (1 + lam * c * s / k), c**3 + s * (1 + c**4) * lam / k, s**3 + c * (1 + s**4) * lam / k]
    np.testing.assert_allclose(locus_point(fc["example2"], math.pi / 4), expected, atol=1e-12)


def test_example1_null_ray_point(fc):
    g, v1, v2 = fc["example1"].values(0.0)
    rep = check_conditions(fc["example1"], 0.0, g + 0.5 * (v1 + v2))
    assert rep.levels == 3
    np.testing.assert_allclose(rep.d[:3], 0.0, atol=1e-15)
    assert rep.d[3] == pytest.approx(3 * math.sqrt(2), abs=1e-12)
    assert "(2) alpha(s0) = 0 [as-amended]" in rep.alternatives
    assert "(2) v0 on the null ray gamma + lambda(v1 + v2)" in rep.alternatives
    assert any(a.startswith("(3)(ii)") for a in rep.alternatives)
    assert not any(a.startswith("(3)(iii)") for a in rep.alternatives)


def test_example2_swallowtail_point(fc):
    # the distance-squared function has an A4 singularity at a swallowtail point:
    # d^(0..3) vanish and d^(4) does not
    s0 = math.pi / 4
    rep = check_conditions(fc["example2"], s0, locus_point(fc["example2"], s0))
    np.testing.assert_allclose(rep.d[:4], 0.0, atol=1e-12)
    assert rep.d[4] == pytest.approx(-244.8, abs=1e-9)
    assert rep.levels == 4
    assert alternatives_for(rep, 3) == ["(3)(iii) v0 is the singular locus point (+)"]
    assert alternatives_for(rep, 4) == ["(4)(iv) v0 is the singular locus point (+) and sigma = 0"]


def test_example3_base_point(fc):
    g = fc["example3"].values(0.0)[0]
    rep = check_conditions(fc["example3"], 0.0, g)
    np.testing.assert_allclose(rep.d, 0.0, atol=1e-12)
    assert rep.levels == 5
    assert "(4)(iii) alpha = 0 and v0 = gamma(s0)" in rep.alternatives
    assert "(5)(iii) alpha = alpha' = 0 and v0 = gamma(s0)" in rep.alternatives
    assert not alternatives_for(rep, 5)[0].startswith("(5)(i) ")


def test_report_dict(fc):
    d = check_conditions(fc["example1"], 0.0, locus_point(fc["example1"], 0.0)).to_dict()
    assert set(d) == {"s0", "v0", "d", "levels", "alternatives"}
    assert len(d["d"]) == 5


def test_scale_aware_tolerance(fc):
    s0 = math.pi / 4
    p = locus_point(fc["example2"], s0)
    plain = dist_sq_jets(fc["example2"], s0, p, tol=1e-15)
    scaled = dist_sq_jets(fc["example2"], s0, p, tol=1e-15, scale_aware=True)
    assert scaled.satisfied_levels >= plain.satisfied_levels


@pytest.mark.parametrize("name", EXAMPLES)
@pytest.mark.parametrize("sheet", list(FrontSheet))
def test_wavefront_consistency(fc, name, sheet):
    c = fc[name]
    checked = 0
    for s0 in c.grid(50):
        try:
            p = locus_point(c, s0, sheet)
        except ArithmeticError:
            continue
        ev = dist_sq_jets(c, s0, p)
        assert ev.satisfied_levels >= 2
        # d''' also vanishes where alpha = 0, since then p = gamma(s0) and gamma' = 0
        if abs(sigma(c, s0, sheet)[0]) > 1e-3 and abs(curvature_at(c, s0).alpha) > 1e-3:
            assert abs(ev.d[3]) > 1e-7
            assert ev.satisfied_levels == 2
        checked += 1
    assert checked >= 45
    for rep in find_singularities(c, sheet).by_origin("alpha"):
        ev = dist_sq_jets(c, rep.s0, locus_point(c, rep.s0, sheet))
        assert ev.satisfied_levels >= 3
    for rep in find_singularities(c, sheet).by_origin("sigma"):
        ev = dist_sq_jets(c, rep.s0, locus_point(c, rep.s0, sheet))
        assert ev.satisfied_levels >= 3
