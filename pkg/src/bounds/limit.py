"""Limit of m(t) as t -> 1 and the resulting bounds for Euclidean space.

    lim m(t) = 2^alpha Gamma(alpha + 1) J_alpha(j_(alpha+1)) / j_(alpha+1)^alpha,

with alpha = (n - 3) / 2, gives chi_m(R^n) >= 1 - 1 / lim m(t).
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional

import mpmath

from src.bounds.theta import analytic_t
from src.special.bessel import MP_LOCK, bessel_j, first_zero
from src.special.gamma import log_gamma
from src.utils.config import load_known_bounds, setting
from src.utils.console import log_status
from src.utils.errors import ParameterRangeError

_ROUNDING_WINDOW = 1e-6


@dataclass(frozen=True)
class BoundTableRow:
    """One row of the Euclidean chromatic number table."""
    n: int
    alpha: float
    j_alpha_plus_1: float
    limit_m: float
    chi_bound_real: float
    chi_bound_int: int
    rounding_checked: bool = False
    previous_best: Optional[int] = None
    published: Optional[int] = None

    @property
    def improves(self) -> Optional[bool]:
        if self.previous_best is None:
            return None
        return self.chi_bound_int > self.previous_best

    @property
    def matches_published(self) -> Optional[bool]:
        """False where the printed table differs from the guarded ceiling."""
        if self.published is None:
            return None
        return self.chi_bound_int == self.published

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'alpha': self.alpha,
            'j_alpha_plus_1': self.j_alpha_plus_1,
            'limit_m': self.limit_m,
            'chi_real': self.chi_bound_real,
            'chi_int': self.chi_bound_int,
            'rounding_checked': self.rounding_checked,
            'previous_best': self.previous_best,
            'improves': self.improves,
            'published': self.published,
            'matches_published': self.matches_published,
        }


class ConvergencePoint(NamedTuple):
    k: int
    t_k: float
    m_k: float
    limit_gap: float


def _check_dimension(n, minimum: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < minimum:
        raise ParameterRangeError(f"Dimension n must be an integer >= {minimum}, got {n!r}")
    return n


def limit_m(n: int) -> float:
    """
    2^alpha Gamma(alpha+1) J_alpha(j_(alpha+1)) / j_(alpha+1)^alpha, evaluated in log space.

    Args:
        n: Dimension, >= 3

    Returns:
        The limit, a negative number in (-1, 0)
    """
    _check_dimension(n, 3)
    alpha = (n - 3) / 2.0
    j = first_zero(alpha + 1.0).value
    value = bessel_j(alpha, j)
    if value == 0.0:
        raise ParameterRangeError(f"J_alpha vanishes at j_(alpha+1) for n={n}")
    log_magnitude = (alpha * math.log(2.0) + log_gamma(alpha + 1.0)
                     + math.log(abs(value)) - (alpha * math.log(j) if alpha > 0 else 0.0))
    return math.copysign(math.exp(log_magnitude), value)


def _high_precision_chi(n: int) -> float:
    """1 - 1 / lim m(t) at 40 digits with mpmath's own Bessel routines."""
    with MP_LOCK, mpmath.workdps(40):
        alpha = mpmath.mpf(n - 3) / 2
        j = mpmath.besseljzero(alpha + 1, 1)
        limit = mpmath.power(2, alpha) * mpmath.gamma(alpha + 1) * mpmath.besselj(alpha, j)
        limit /= mpmath.power(j, alpha)
        return float(1 - 1 / limit)


def chi_limit_lower(n: int) -> BoundTableRow:
    """
    Lower bound 1 + j^alpha / (2^alpha Gamma(alpha+1) |J_alpha(j)|) for chi_m(R^n).

    The integer bound is the guarded ceiling. When the real bound lies within
    1e-6 of an integer it is recomputed at high precision before rounding.
    """
    _check_dimension(n, 3)
    alpha = (n - 3) / 2.0
    j = first_zero(alpha + 1.0).value
    limit = limit_m(n)
    chi_real = 1.0 - 1.0 / limit
    chi_int = math.ceil(chi_real - setting('ceil_guard'))

    checked = False
    if abs(chi_real - round(chi_real)) < _ROUNDING_WINDOW:
        checked = True
        precise = _high_precision_chi(n)
        precise_int = math.ceil(precise - setting('ceil_guard'))
        if precise_int != chi_int:
            log_status('WARNING', f"n={n}: rounding of {chi_real!r} corrected to {precise_int}")
            chi_int = precise_int
        else:
            log_status('INFO', f"n={n}: bound {chi_real!r} is close to an integer; rounding confirmed")

    return BoundTableRow(n, alpha, j, limit, chi_real, chi_int, checked)


def bound_table(n_values: Iterable[int], workers: Optional[int] = None,
                known_bounds: Optional[Dict[int, int]] = None,
                published_bounds: Optional[Dict[int, int]] = None) -> List[BoundTableRow]:
    """
    Table rows for every dimension in n_values, in input order.

    Args:
        n_values: Dimensions, each >= 3
        workers: Thread count (defaults to table_workers)
        known_bounds: Previous best bounds by dimension (defaults to config/known_bounds.yaml)
        published_bounds: Printed table values by dimension (same default file)

    Returns:
        List of BoundTableRow
    """
    n_values = [_check_dimension(n, 3) for n in n_values]
    workers = int(setting('table_workers', workers))
    if known_bounds is None:
        known_bounds = load_known_bounds()
    if published_bounds is None:
        published_bounds = load_known_bounds(column='published')

    if workers > 1 and len(n_values) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(chi_limit_lower, n_values))
    else:
        rows = [chi_limit_lower(n) for n in n_values]

    table = [
        BoundTableRow(row.n, row.alpha, row.j_alpha_plus_1, row.limit_m, row.chi_bound_real,
                      row.chi_bound_int, row.rounding_checked, known_bounds.get(row.n),
                      published_bounds.get(row.n))
        for row in rows
    ]
    for row in table:
        if row.matches_published is False:
            log_status('WARNING', f"n={row.n}: real bound {row.chi_bound_real:.6f} rounds up to "
                                  f"{row.chi_bound_int}; the published table lists {row.published}")
    return table


def convergence_check(n: int, k_list: Iterable[int]) -> List[ConvergencePoint]:
    """
    Distance between m at the analytic points t_k and the limit value.

    Args:
        n: Dimension, >= 3
        k_list: Degrees, each >= 2

    Returns:
        One ConvergencePoint per degree, in input order
    """
    _check_dimension(n, 3)
    limit = limit_m(n)
    points = []
    for k in k_list:
        t_k, m_k = analytic_t(n, k)
        points.append(ConvergencePoint(k, t_k, m_k, abs(m_k - limit)))
    return points


def growth_floor(n: int) -> float:
    """sqrt(2) alpha^alpha / (2^alpha Gamma(alpha + 1)), which grows like (e/2)^alpha."""
    _check_dimension(n, 4)
    alpha = (n - 3) / 2.0
    return math.exp(0.5 * math.log(2.0) + alpha * math.log(alpha)
                    - alpha * math.log(2.0) - log_gamma(alpha + 1.0))
