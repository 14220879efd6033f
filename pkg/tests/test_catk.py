import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from buildgeom import catk
from buildgeom.catk import (
    ModelPoint,
    Quadruple,
    alexandrov_angle_estimate,
    blowup_metric,
    cat_check,
    comparison_triangle,
    geodesic_point,
    law_of_sines_residual,
    model_distance,
    point_at,
    random_model_point,
    random_quadruple,
    random_triangle,
    spherical_witness,
)

KAPPAS = [-2.0, -1.0, 0.0, 1.0, 2.0]
NORTH = ModelPoint((0.0, 0.0, 1.0), "sphere")
EQUATOR = ModelPoint((1.0, 0.0, 0.0), "sphere")


# --- distances and geodesics --------------------------------------------------

def test_sphere_distance():
    assert model_distance(1, NORTH, EQUATOR) == pytest.approx(math.pi / 2, abs=1e-12)
    assert model_distance(4, NORTH, EQUATOR) == pytest.approx(math.pi / 4, abs=1e-12)


def test_hyperboloid_distance():
    p = ModelPoint((1.0, 0.0, 0.0), "hyperboloid")
    q = ModelPoint((math.cosh(1), math.sinh(1), 0.0), "hyperboloid")
    assert model_distance(-1, p, q) == pytest.approx(1.0, abs=1e-12)


def test_invalid_points():
    with pytest.raises(ValueError):
        ModelPoint((1.0, 1.0, 0.0), "sphere")
    with pytest.raises(ValueError):
        model_distance(0, NORTH, EQUATOR)


def test_geodesic_endpoints_and_midpoint():
    a = ModelPoint((0.0, 0.0, 0.0), "plane")
    b = ModelPoint((2.0, 0.0, 0.0), "plane")
    assert geodesic_point(0, a, b, 0) == a and geodesic_point(0, a, b, 1) == b
    assert geodesic_point(0, a, b, 0.5).coords == pytest.approx((1.0, 0.0, 0.0))
    mid = geodesic_point(1, NORTH, EQUATOR, 0.5)
    expected = np.array([1.0, 0.0, 1.0]) / math.sqrt(2)
    assert np.allclose(mid.vec, expected, atol=1e-12)


def test_antipodal_geodesic_not_unique():
    south = ModelPoint((0.0, 0.0, -1.0), "sphere")
    with pytest.raises(ValueError, match="geodesic not unique"):
        geodesic_point(1, NORTH, south, 0.5)


@pytest.mark.parametrize("kappa", KAPPAS)
def test_triangle_inequality_and_geodesics(kappa):
    rng = np.random.default_rng(int(kappa * 10) + 100)
    for _ in range(10_000):
        p, q, r = (random_model_point(kappa, rng) for _ in range(3))
        d = lambda u, v: model_distance(kappa, u, v)
        assert d(p, r) <= d(p, q) + d(q, r) + 1e-9
    for _ in range(500):
        p, q = random_model_point(kappa, rng), random_model_point(kappa, rng)
        if kappa > 0 and model_distance(kappa, p, q) > catk.diameter(kappa) - 1e-6:
            continue
        t, u = sorted(rng.random(2))
        g1, g2 = geodesic_point(kappa, p, q, t), geodesic_point(kappa, p, q, u)
        total = model_distance(kappa, p, q)
        assert model_distance(kappa, p, g1) == pytest.approx(t * total, abs=1e-9)
        assert model_distance(kappa, g1, g2) == pytest.approx((u - t) * total, abs=1e-9)


# --- comparison triangles -----------------------------------------------------

def test_equilateral_flat():
    tri = comparison_triangle(0, 1, 1, 1)
    assert tri.angles == pytest.approx((math.pi / 3,) * 3)
    assert law_of_sines_residual(0, tri).value == 0


def test_octant_triangle():
    h = math.pi / 2
    tri = comparison_triangle(1, h, h, h)
    assert tri.angles == pytest.approx((h, h, h), abs=1e-12)
    res = law_of_sines_residual(1, tri)
    assert res.ratio_residual < 1e-12
    assert res.determinant == pytest.approx(1.0, abs=1e-12)
    assert res.determinant_residual < 1e-12


def test_perimeter_error():
    with pytest.raises(ValueError, match="exceeds comparison perimeter"):
        comparison_triangle(1, math.pi, math.pi, math.pi)


def test_triangle_inequality_error():
    with pytest.raises(ValueError, match="triangle inequality"):
        comparison_triangle(0, 1, 1, 3)


def test_degenerate_rejected():
    with pytest.raises(ValueError):
        comparison_triangle(0, 0, 1, 1)


def test_vertices_realize_sides():
    for kappa in KAPPAS:
        tri = comparison_triangle(kappa, 0.7, 0.8, 0.9)
        A, B, C = tri.vertices()
        assert model_distance(kappa, B, C) == pytest.approx(0.7, abs=1e-12)
        assert model_distance(kappa, A, C) == pytest.approx(0.8, abs=1e-12)
        assert model_distance(kappa, A, B) == pytest.approx(0.9, abs=1e-12)


@pytest.mark.parametrize("kappa", KAPPAS)
def test_law_of_sines_random(kappa):
    rng = np.random.default_rng(7)
    worst = max(law_of_sines_residual(kappa, random_triangle(kappa, rng)).value for _ in range(2000))
    assert worst < 1e-9


@settings(max_examples=200, deadline=None)
@given(
    st.floats(0.05, 1.0), st.floats(0.05, 1.0), st.floats(0.05, 1.0),
    st.sampled_from([(-1.0, 0.0), (0.0, 1.0), (-2.0, 2.0), (1.0, 2.0)]),
)
def test_angles_monotone_in_kappa(a, b, c, kappas):
    assume(a < b + c - 1e-3 and b < a + c - 1e-3 and c < a + b - 1e-3)
    lo, hi = kappas
    t_lo, t_hi = comparison_triangle(lo, a, b, c), comparison_triangle(hi, a, b, c)
    for x, y in zip(t_lo.angles, t_hi.angles):
        assert x <= y + 1e-9


# --- CAT check ----------------------------------------------------------------

def test_model_quadruples_pass():
    rng = np.random.default_rng(3)
    for kappa in KAPPAS:
        for _ in range(1000):
            assert cat_check(kappa, random_quadruple(kappa, rng)).holds


def test_tree_quadruple():
    # p=(0,1), q=(1,1), r=(-1,1), m=(0,0) in T2
    quad = Quadruple(pq=3, pr=3, qr=4, qm=2, mr=2, pm=1)
    res = cat_check(0, quad)
    assert res.holds
    assert res.comparison_distance == pytest.approx(math.sqrt(5), abs=1e-12)


def test_spherical_witness():
    quad, points = spherical_witness()
    flat = cat_check(0, quad)
    assert not flat.holds
    assert flat.distance == pytest.approx(math.pi / 2)
    assert cat_check(1, quad).holds
    assert set(points) == {"p", "q", "r", "m"}


def test_cat_precondition():
    with pytest.raises(ValueError):
        cat_check(0, Quadruple(pq=1, pr=1, qr=1, qm=0.2, mr=0.2, pm=0.5))


# --- angles and blow-up -------------------------------------------------------

def _plane_ray(direction):
    d = np.array(direction, dtype=float)
    return lambda s: np.array([0.0, 0.0]) + s * d


def _euclid(p, q):
    return float(np.linalg.norm(p - q))


def test_orthogonal_rays():
    est = alexandrov_angle_estimate(_plane_ray((1, 0)), _plane_ray((0, 1)), _euclid)
    assert est.angle == pytest.approx(math.pi / 2, abs=1e-9)
    assert est.monotone


def test_opposite_rays():
    est = alexandrov_angle_estimate(_plane_ray((1, 0)), _plane_ray((-1, 0)), _euclid)
    assert est.angle == pytest.approx(math.pi, abs=1e-9)


def test_sphere_rays_extrapolate():
    # geodesics from the north pole at angle 1 radian apart
    c1 = lambda s: point_at(1.0, s, 0.0)
    c2 = lambda s: point_at(1.0, s, 1.0)
    est = alexandrov_angle_estimate(c1, c2, lambda p, q: model_distance(1.0, p, q), catk.geometric_schedule(0.5))
    assert est.angle == pytest.approx(1.0, abs=1e-9)
    assert abs(est.raw[-1] - 1.0) > abs(est.angle - 1.0)


def test_tree_rays_give_pi():
    from fractions import Fraction

    from buildgeom.rtree import TreePoint, tree_distance, T2

    c1 = lambda s: TreePoint(Fraction(s), Fraction(0))
    c2 = lambda s: TreePoint(Fraction(0), Fraction(s))
    est = alexandrov_angle_estimate(c1, c2, lambda p, q: float(tree_distance(T2, p, q)))
    assert est.angle == pytest.approx(math.pi, abs=1e-12)


def test_lipschitz_violation():
    with pytest.raises(ValueError, match="not geodesics from a common point"):
        alexandrov_angle_estimate(lambda s: 0.0, lambda s: 3 * s, lambda a, b: abs(a - b))


def test_bad_schedule():
    with pytest.raises(ValueError):
        alexandrov_angle_estimate(_plane_ray((1, 0)), _plane_ray((0, 1)), _euclid, [0.1, 0.2])


def test_blowup():
    assert blowup_metric(0, 0) == 0
    assert blowup_metric(3, 4) == 5
    s = 0.25
    assert blowup_metric(2 * s, math.pi) == pytest.approx(math.sqrt(4 * s * s + math.pi ** 2))
    with pytest.raises(ValueError):
        blowup_metric(-1, 0)
    with pytest.raises(ValueError):
        blowup_metric(1, -0.5)


@given(st.floats(0, 100), st.floats(0, math.pi))
def test_blowup_dominates(d, theta):
    assert blowup_metric(d, theta) >= max(d, theta)
