"""Tests for the theta LPs, the Delsarte code bound and the explicit codes."""
import math
import sys
from pathlib import Path

import numpy as np

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.bounds.codes import cross_polytope, e8_roots, icosahedron, regular_polygon, regular_simplex
from src.bounds.theta import SphereGraph, sphere_area, theta_of
from src.lp.programs import delsarte_code_bound, dual_theta_lp, primal_theta_lp, theta_bar_single
from src.special.jacobi import get_family
from src.utils.errors import DegreeTooSmallError, ParameterRangeError


def test_dual_lp_matches_closed_form():
    for n, t in [(3, 0.0), (4, 0.3), (8, 0.7)]:
        closed = theta_of(n, t).theta
        result = dual_theta_lp(SphereGraph.single(n, t), 128)
        assert result.status == 'optimal'
        assert abs(result.bound - closed) <= 1e-5 * closed


def test_dual_lp_record():
    result = dual_theta_lp(SphereGraph.single(3, 0.0), 16)
    record = result.to_dict()
    assert record['t'] == [0.0]
    assert record['truncation_only'] == (not record['certified'])
    assert len(record['z']) == 2
    assert record['chi_lower'] == 3


def test_more_inner_products_never_raise_the_bound():
    single = dual_theta_lp(SphereGraph.single(3, 0.5), 40)
    double = dual_theta_lp(SphereGraph(3, (-0.5, 0.5)), 40)
    assert double.bound <= single.bound * (1 + 1e-9)


def test_primal_lp_orthogonal_points():
    result = primal_theta_lp(3, 0.0, 10)
    assert abs(result.value - 4 * math.pi / 3) < 1e-10
    assert result.support == (0, 2)
    assert abs(result.f.sum() - 1 / sphere_area(3)) < 1e-12


def test_primal_and_dual_sandwich_theta():
    n, t = 8, 0.7
    closed = theta_of(n, t).theta
    primal = primal_theta_lp(n, t, 40)
    dual = dual_theta_lp(SphereGraph.single(n, t), 40)
    assert primal.value <= closed * (1 + 1e-9)
    assert dual.bound >= closed * (1 - 1e-9)
    assert abs(primal.value - closed) < 1e-9 * closed


def test_truncated_primal_uses_the_truncated_minimum():
    n, degree = 10, 3
    for t in (0.1, 0.3):
        values = get_family(3.5).values(degree, t)
        m_truncated = min(values[1:])
        expected = sphere_area(n) * m_truncated / (m_truncated - 1)
        assert m_truncated < 0
        assert abs(primal_theta_lp(n, t, degree).value - expected) < 1e-10 * expected
    # R_3 vanishes at t = 1/2 for alpha = 7/2, so nothing positive is left for f_0.
    assert abs(primal_theta_lp(n, 0.5, degree).value) < 1e-12


def test_theta_bar_single():
    assert abs(theta_bar_single(3, 0.0) - 3.0) < 1e-12
    result = theta_of(10, 0.5)
    assert abs(theta_bar_single(10, 0.5) - result.theta_bar) < 1e-12 * result.theta_bar


def test_delsarte_pentagon():
    t = math.cos(2 * math.pi / 5)
    result = delsarte_code_bound(2, t, 3)
    assert abs(result.certified_bound - 5.0) < 1e-6
    assert result.certified


def test_delsarte_e8_kissing_configuration():
    result = delsarte_code_bound(8, 0.5, 6)
    assert abs(result.certified_bound - 240.0) < 1e-6
    assert result.certified


def test_delsarte_three_dimensional_kissing():
    result = delsarte_code_bound(3, 0.5, 9)
    assert 12.0 <= result.certified_bound < 14.0


def test_delsarte_bounds_explicit_codes():
    cases = [
        (regular_simplex(5), 1),
        (cross_polytope(4), 3),
        (icosahedron(), 9),
        (regular_polygon(5), 3),
        (e8_roots(), 6),
    ]
    for code, degree in cases:
        t = code.max_inner_product() + 1e-9
        result = delsarte_code_bound(code.dimension, t, degree)
        assert result.certified, code.name
        assert result.certified_bound >= code.size - 1e-9, code.name


def _dense_profile_maximum(result, points=200001):
    alpha = (result.n - 3) / 2.0
    us = np.linspace(-1.0, result.t, points)
    return float((get_family(alpha, alpha).table(result.degree, us)[1:].T @ result.certified_f).max())


def test_delsarte_certificate_holds_between_grid_points():
    for n, t, degree in [(3, 0.5, 9), (8, 0.5, 6), (2, math.cos(2 * math.pi / 5), 3)]:
        result = delsarte_code_bound(n, t, degree)
        assert result.certified
        assert np.all(result.certified_f >= 0.0)
        assert _dense_profile_maximum(result) <= -1.0 + 1e-12, (n, t, degree)


def test_delsarte_bound_does_not_grow_with_degree():
    bounds = [delsarte_code_bound(3, 0.5, degree).certified_bound for degree in range(9, 14)]
    for lower, higher in zip(bounds, bounds[1:]):
        assert higher <= lower + 1e-8, bounds


def test_delsarte_degree_errors():
    try:
        delsarte_code_bound(3, 0.5, 0)
    except DegreeTooSmallError as e:
        assert "increase degree" in str(e)
    else:
        raise AssertionError("degree 0 should raise DegreeTooSmallError")
    try:
        delsarte_code_bound(3, 0.5, 1)
    except DegreeTooSmallError as e:
        assert "increase degree" in str(e)
    else:
        raise AssertionError("degree 1 is infeasible for t = 1/2")
    try:
        delsarte_code_bound(3, 0.5, 4, grid_size=10)
    except ParameterRangeError:
        pass
    else:
        raise AssertionError("grid below 10 (K + 1) should be rejected")


def test_simplex_code():
    code = regular_simplex(6)
    assert code.size == 7 and code.dimension == 6
    gram = code.gram()
    off_diagonal = gram[~np.eye(7, dtype=bool)]
    assert np.allclose(off_diagonal, -1.0 / 6.0, atol=1e-12)
    assert np.allclose(np.diag(gram), 1.0, atol=1e-12)


def test_other_codes():
    assert cross_polytope(5).size == 10
    assert abs(cross_polytope(5).max_inner_product()) < 1e-15
    assert abs(icosahedron().max_inner_product() - 1 / math.sqrt(5)) < 1e-12
    assert abs(regular_polygon(9).max_inner_product() - math.cos(2 * math.pi / 9)) < 1e-12


def test_e8_roots():
    code = e8_roots()
    assert code.size == 240
    assert abs(code.max_inner_product() - 0.5) < 1e-12
    assert code.inner_product_distribution() == {-1.0: 120, -0.5: 6720, 0.0: 15120, 0.5: 6720}


if __name__ == "__main__":
    tests = [value for name, value in sorted(globals().items()) if name.startswith("test_")]
    failures = 0
    for test in tests:
        try:
            test()
            print(f"[OK] {test.__name__}")
        except Exception as e:
            failures += 1
            print(f"[FAIL] {test.__name__}: {e}")
    print("=" * 60)
    print(f"{len(tests) - failures}/{len(tests)} tests passed")
    sys.exit(0 if failures == 0 else 1)
