"""Tests for the t -> 1 limit and the Euclidean chromatic number table."""
import math
import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.bounds.limit import bound_table, chi_limit_lower, convergence_check, growth_floor, limit_m
from src.utils.config import load_known_bounds
from src.utils.errors import ParameterRangeError

PUBLISHED_BOUNDS = [48, 64, 85, 113, 147, 191, 248, 319, 408, 521, 662, 839, 1060, 1336, 1679]
# The guarded ceiling of 662.0034, 839.063 and 1060.21 is one above the printed value.
ROUNDING_DEVIATIONS = {20: 663, 21: 840, 22: 1061}


def test_table_for_dimensions_10_to_24():
    rows = bound_table(range(10, 25))
    assert [row.n for row in rows] == list(range(10, 25))
    for row, published in zip(rows, PUBLISHED_BOUNDS):
        assert row.published == published
        if row.n in ROUNDING_DEVIATIONS:
            assert row.chi_bound_int == ROUNDING_DEVIATIONS[row.n]
            assert row.matches_published is False
            assert published < row.chi_bound_real < published + 1
        else:
            assert row.chi_bound_int == published
            assert row.matches_published is True


def test_published_column_is_loaded():
    published = load_known_bounds(column='published')
    assert [published[n] for n in range(10, 25)] == PUBLISHED_BOUNDS
    assert bound_table([9])[0].matches_published is None


def test_dimension_nine():
    assert chi_limit_lower(9).chi_bound_int == 35


def test_rows_improve_on_previous_bounds():
    known = load_known_bounds()
    rows = bound_table(range(10, 25))
    for row in rows:
        assert row.previous_best == known[row.n]
        assert row.improves


def test_rows_keep_input_order_with_workers():
    rows = bound_table([14, 10, 12], workers=3)
    assert [row.n for row in rows] == [14, 10, 12]
    assert [row.chi_bound_int for row in rows] == [147, 48, 85]


def test_limit_in_three_dimensions():
    # alpha = 0: the limit is J_0(j_1).
    assert abs(limit_m(3) + 0.402759) < 1e-6


def test_limit_lies_in_open_interval():
    for n in (3, 4, 10, 24, 60):
        assert -1.0 < limit_m(n) < 0.0


def test_row_fields_are_consistent():
    row = chi_limit_lower(16)
    assert abs(row.chi_bound_real - (1.0 - 1.0 / row.limit_m)) < 1e-9 * row.chi_bound_real
    assert row.chi_bound_int == math.ceil(row.chi_bound_real)
    record = row.to_dict()
    assert record['chi_int'] == 248
    assert record['improves'] is None


def test_dimension_range():
    try:
        limit_m(2)
    except ParameterRangeError:
        pass
    else:
        raise AssertionError("n = 2 has no limit bound")


def test_convergence_gaps_decrease():
    for n in (3, 10, 24):
        points = convergence_check(n, [50, 100, 200, 400])
        gaps = [point.limit_gap for point in points]
        assert all(later < earlier for earlier, later in zip(gaps, gaps[1:]))
        ts = [point.t_k for point in points]
        assert ts == sorted(ts)


def test_growth_floor_at_four():
    assert abs(growth_floor(4) - math.sqrt(2.0 / math.pi)) < 1e-14


def test_bound_exceeds_growth_floor():
    for n in list(range(4, 129, 4)) + [5, 127]:
        assert chi_limit_lower(n).chi_bound_real - 1.0 > growth_floor(n)


def test_growth_rate_approaches_e_over_two():
    # growth_floor(n + 2) / growth_floor(n) = (1 + 1/alpha)^alpha / 2 with alpha = (n - 3) / 2.
    for n in (24, 64, 128):
        alpha = (n - 3) / 2.0
        ratio = growth_floor(n + 2) / growth_floor(n)
        assert abs(ratio - (1.0 + 1.0 / alpha) ** alpha / 2.0) < 1e-12
    ratio = growth_floor(203) / growth_floor(201)
    assert abs(ratio - math.e / 2.0) < 0.01


def test_exponential_rate_of_the_bound():
    for n in (40, 48, 64, 96, 128):
        assert chi_limit_lower(n).chi_bound_real ** (1.0 / n) >= 1.16


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
