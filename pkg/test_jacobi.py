"""Tests for the normalized Jacobi polynomials and their zeros."""
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.special.jacobi import JacobiFamily, get_family, harm_dim, to_exact
from src.utils.errors import ParameterRangeError, RationalInputError


GRID = np.linspace(-1.0, 1.0, 101)
IDENTITY_ALPHAS = (0.0, 0.5, 1.0, 10.5)
IDENTITY_DEGREE = 50


def _agree(left, right, *terms):
    """Pointwise agreement to 1e-10 relative to the size of the terms involved."""
    scale = np.maximum(1.0, sum(np.abs(term) for term in terms))
    return bool(np.all(np.abs(left - right) <= 1e-10 * scale))


def test_normalized_at_one():
    for alpha, beta in [(0.0, 0.0), (10.5, 10.5), (2.0, 0.5), (-0.5, -0.5)]:
        family = JacobiFamily(alpha, beta)
        for k in range(0, 201):
            assert family.eval(k, 1.0) == 1.0
        # The raw recurrence, without the endpoint shortcut, must land on 1 as well.
        column = family.table(200, [1.0])[:, 0]
        assert np.all(np.abs(column - 1.0) < 1e-10)
    assert JacobiFamily(Fraction(3, 2), backend='rational').eval(200, 1) == 1


def test_degree_two_closed_form():
    alpha = 10.5
    family = JacobiFamily(alpha)
    for u in np.linspace(-1.0, 1.0, 21):
        expected = ((2 * alpha + 3) * u * u - 1) / (2 * alpha + 2)
        assert abs(family.eval(2, u) - expected) < 1e-14


def test_first_degree_is_identity_for_symmetric_families():
    family = JacobiFamily(3.5)
    for u in (-0.9, -0.25, 0.0, 0.4, 0.99):
        assert abs(family.eval(1, u) - u) < 1e-15


def test_symmetric_parity():
    family = JacobiFamily(1.5)
    for k in range(0, 12):
        assert family.eval(k, -1.0) == (1.0 if k % 2 == 0 else -1.0)
    for alpha in IDENTITY_ALPHAS:
        family = JacobiFamily(alpha)
        plus = family.table(IDENTITY_DEGREE, GRID)
        minus = family.table(IDENTITY_DEGREE, -GRID)
        for k in range(IDENTITY_DEGREE + 1):
            assert np.all(np.abs(minus[k] - (-1) ** k * plus[k]) <= 1e-12)


def test_reflection_between_shifted_families():
    # (-1)^k (alpha + 1) R_k^(alpha, alpha+1)(-u) = (k + alpha + 1) R_k^(alpha+1, alpha)(u)
    for alpha in IDENTITY_ALPHAS:
        lower = JacobiFamily(alpha, alpha + 1).table(IDENTITY_DEGREE, -GRID)
        upper = JacobiFamily(alpha + 1, alpha).table(IDENTITY_DEGREE, GRID)
        for k in range(IDENTITY_DEGREE + 1):
            left = (-1) ** k * (alpha + 1) * lower[k]
            right = (k + alpha + 1) * upper[k]
            assert _agree(left, right, left, right), (alpha, k)


def test_shifted_families_from_the_derivative_family():
    # (2 alpha + 2) R_k^(alpha, alpha+1) = (k + 2 alpha + 2) S_k - k S_(k-1)
    # (2k + 2 alpha + 2) R_k^(alpha+1, alpha) = (k + 2 alpha + 2) S_k + k S_(k-1)
    # with S the (alpha+1, alpha+1) family.
    for alpha in IDENTITY_ALPHAS:
        down = JacobiFamily(alpha, alpha + 1).table(IDENTITY_DEGREE, GRID)
        up = JacobiFamily(alpha + 1, alpha).table(IDENTITY_DEGREE, GRID)
        shifted = JacobiFamily(alpha + 1).table(IDENTITY_DEGREE, GRID)
        for k in range(1, IDENTITY_DEGREE + 1):
            first = (k + 2 * alpha + 2) * shifted[k]
            second = k * shifted[k - 1]
            left = (2 * alpha + 2) * down[k]
            assert _agree(left, first - second, left, first, second), (alpha, k)
            left = (2 * k + 2 * alpha + 2) * up[k]
            assert _agree(left, first + second, left, first, second), (alpha, k)


def test_rational_backend_is_exact():
    legendre = JacobiFamily(0, backend='rational')
    # P_3(1/2) = (5/8 - 3/2) / 2
    assert legendre.eval(3, Fraction(1, 2)) == Fraction(-7, 16)
    assert legendre.eval(2, '1/3') == Fraction(-1, 3)

    family = JacobiFamily(Fraction(21, 2), backend='rational')
    u = Fraction(3, 7)
    assert family.eval(2, u) == (24 * u * u - 1) / 23


def test_rational_and_float_agree():
    exact = JacobiFamily(Fraction(3, 2), backend='rational')
    approximate = JacobiFamily(1.5)
    for k in (5, 17, 40):
        assert abs(float(exact.eval(k, Fraction(1, 3))) - approximate.eval(k, 1 / 3)) < 1e-12


def test_rational_rejects_inexact_floats():
    try:
        to_exact(0.1)
    except RationalInputError:
        pass
    else:
        raise AssertionError("0.1 is not exactly representable and must be rejected")
    assert to_exact(0.5) == Fraction(1, 2)
    assert to_exact('0.1') == Fraction(1, 10)


def test_parameter_validation():
    for alpha, beta in [(-1.0, 0.0), (0.0, -1.5)]:
        try:
            JacobiFamily(alpha, beta)
        except ParameterRangeError:
            continue
        raise AssertionError(f"alpha={alpha}, beta={beta} should be rejected")
    try:
        JacobiFamily(0.0).eval(2, 1.5)
    except ParameterRangeError:
        pass
    else:
        raise AssertionError("u outside [-1, 1] should be rejected")


def test_table_matches_pointwise_eval():
    family = get_family(0.5)
    us = np.array([-0.7, 0.0, 0.3, 0.95])
    table = family.table(25, us)
    assert table.shape == (26, 4)
    for k in (0, 1, 7, 25):
        for i, u in enumerate(us):
            assert abs(table[k, i] - family.eval(k, u)) < 1e-12


def test_values_and_iter_values():
    family = get_family(2.0)
    values = family.values(10, 0.6)
    assert len(values) == 11
    assert values[0] == 1.0
    for k, value in enumerate(values):
        assert abs(value - family.eval(k, 0.6)) < 1e-13


def test_derivative_at_one():
    family = JacobiFamily(10.5)
    assert abs(family.eval_derivative(2, 1.0) - 24 / 11.5) < 1e-13
    assert family.eval_derivative(0, 0.3) == 0.0


def test_derivative_matches_finite_difference():
    family = JacobiFamily(2.5)
    step = 1e-6
    for k in (3, 8, 15):
        for u in (-0.6, 0.1, 0.7):
            numeric = (family.eval(k, u + step) - family.eval(k, u - step)) / (2 * step)
            assert abs(family.eval_derivative(k, u) - numeric) < 1e-6 * max(1.0, abs(numeric))


def test_differential_equation():
    # (1 - u^2) R'' - (2 alpha + 2) u R' + k (k + 2 alpha + 1) R = 0
    for alpha in (0.0, 0.5, 1.0, 10.5):
        family = JacobiFamily(alpha)
        for k in (3, 10, 20):
            scale = k * (k + 2 * alpha + 1) / (2 * alpha + 2)
            for u in np.linspace(-0.95, 0.95, 21):
                second = scale * family.derivative_family().eval_derivative(k - 1, u)
                residual = ((1 - u * u) * second - (2 * alpha + 2) * u * family.eval_derivative(k, u)
                            + k * (k + 2 * alpha + 1) * family.eval(k, u))
                assert abs(residual) <= 1e-9 * k ** 4


def test_contiguity_relation():
    # (k + alpha + 1) R_k^(alpha+1, alpha) = (alpha + 1) (R_k - R_(k+1)) / (1 - u)
    us = GRID[:-1]
    for alpha in IDENTITY_ALPHAS:
        symmetric = JacobiFamily(alpha).table(IDENTITY_DEGREE + 1, us)
        shifted = JacobiFamily(alpha + 1, alpha).table(IDENTITY_DEGREE, us)
        for k in range(1, IDENTITY_DEGREE + 1):
            left = (k + alpha + 1) * shifted[k]
            right = (alpha + 1) * (symmetric[k] - symmetric[k + 1]) / (1 - us)
            assert _agree(left, right, left, right), (alpha, k)


def test_orthogonality():
    # u = cos(theta) turns the weight (1 - u^2)^alpha du into sin(theta)^(2 alpha + 1) dtheta,
    # which Gauss-Legendre integrates to full accuracy for half-integer and integer alpha.
    degree = 30
    nodes, weights = np.polynomial.legendre.leggauss(max(4 * degree, 256))
    thetas = 0.5 * np.pi * (nodes + 1.0)
    for alpha in IDENTITY_ALPHAS:
        weighted = 0.5 * np.pi * weights * np.sin(thetas) ** (2 * alpha + 1)
        table = JacobiFamily(alpha).table(degree, np.cos(thetas))
        gram = (table * weighted) @ table.T
        for j in range(degree + 1):
            for k in range(degree + 1):
                if j != k:
                    assert abs(gram[j, k]) <= 1e-9 * math.sqrt(gram[j, j] * gram[k, k]), (alpha, j, k)


def test_legendre_zeros():
    zeros = JacobiFamily(0.0).zeros(2)
    assert len(zeros) == 2
    assert abs(zeros[0].value + 0.5773502691896258) < 1e-13
    assert abs(zeros[1].value - 0.5773502691896258) < 1e-13


def test_symmetric_odd_degree_has_zero_in_the_middle():
    zeros = JacobiFamily(1.0).zeros(3)
    assert zeros[1].value == 0.0
    assert zeros[0].value == -zeros[2].value
    family = JacobiFamily(1.0)
    for record in zeros:
        assert abs(family.eval(3, record.value)) < 1e-12


def test_zeros_are_sorted_and_interlace():
    for alpha, beta in [(2.0, 0.5), (0.0, 0.0), (10.5, 10.5)]:
        family = JacobiFamily(alpha, beta)
        for k in (2, 3, 10, 25, 50, 99, 100):
            lower = [record.value for record in family.zeros(k - 1)]
            upper = [record.value for record in family.zeros(k)]
            assert len(upper) == k
            assert upper == sorted(upper)
            for i, value in enumerate(lower):
                assert upper[i] < value < upper[i + 1], (alpha, beta, k, i)


def test_largest_zero_agrees_with_full_zero_set():
    for alpha, beta, k in [(0.0, 0.0, 7), (11.5, 11.5, 30), (3.0, 2.0, 12), (-0.5, -0.5, 5)]:
        family = JacobiFamily(alpha, beta)
        largest = family.largest_zero(k)
        assert largest.degree == k
        assert abs(largest.value - family.zeros(k)[-1].value) < 1e-12
        assert largest.bracket_width <= 1e-13


def test_chebyshev_zeros_are_cosines():
    # alpha = beta = -1/2 is the Chebyshev family T_k.
    k = 6
    family = JacobiFamily(-0.5)
    expected = sorted(math.cos((2 * i - 1) * math.pi / (2 * k)) for i in range(1, k + 1))
    for record, value in zip(family.zeros(k), expected):
        assert abs(record.value - value) < 1e-13


def test_sign_variations_count_zeros_above():
    family = JacobiFamily(0.0)
    assert family.sign_variations(4, 0.0) == 2
    assert family.sign_variations(4, 0.9) == 0
    assert family.sign_variations(4, -0.9) == 4


def test_harmonic_dimensions():
    assert harm_dim(24, 2) == 299
    assert harm_dim(2, 0) == 1
    for k in range(1, 10):
        assert harm_dim(2, k) == 2
        assert harm_dim(3, k) == 2 * k + 1
    assert harm_dim(8, 4) == math.comb(11, 7) - math.comb(9, 7)


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
