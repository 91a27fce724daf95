"""Theta function of the graph G(n, t) on the unit sphere S^(n-1).

Two points are adjacent when their inner product equals t. With
alpha = (n - 3) / 2 and R_k the normalized Jacobi polynomials of parameters
(alpha, alpha),

    m(t) = min_k R_k(t),   theta = omega_n m / (m - 1),   theta_bar = omega_n / theta,

and omega_n / theta lower-bounds the measurable chromatic number of G(n, t).
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple, Union

from src.special.bessel import first_zero
from src.special.gamma import gamma, log_gamma
from src.special.jacobi import get_family, to_exact
from src.utils.config import setting
from src.utils.console import log_status
from src.utils.errors import ParameterRangeError, RationalInputError

Real = Union[float, Fraction]

_TIE_RELATIVE = 1e-12
_FIRST_ENVELOPE_DEGREE = 2


@dataclass(frozen=True)
class SphereGraph:
    """
    Graph on S^(n-1) whose edges join points with inner product in a finite set.

    Inner products are stored sorted and without duplicates.
    """
    n: int
    inner_products: Tuple[Real, ...]

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
            raise ParameterRangeError(f"Dimension n must be an integer >= 2, got {self.n!r}")
        values = tuple(sorted(set(self.inner_products)))
        if not values:
            raise ParameterRangeError("A sphere graph needs at least one inner product")
        for t in values:
            if not -1 < t < 1:
                raise ParameterRangeError(f"Inner products must lie in (-1, 1), got {t}")
        object.__setattr__(self, 'inner_products', values)

    @classmethod
    def single(cls, n: int, t: Real) -> 'SphereGraph':
        return cls(n, (t,))

    @property
    def t(self) -> Real:
        """The inner product of a single-distance graph."""
        if len(self.inner_products) != 1:
            raise ParameterRangeError("Graph has more than one inner product")
        return self.inner_products[0]

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.n - 3, 2)


class MinimumScan(NamedTuple):
    """Outcome of scanning R_k(t) over degrees."""
    k_star: int
    m_value: Real
    certified: bool
    scanned_degree: int
    tied_degrees: Tuple[int, ...] = ()


class AnalyticPoint(NamedTuple):
    t: float
    m_value: float


class MBracket(NamedTuple):
    """lower <= m(t) <= upper, with t between the zeros bracketing degree k."""
    lower: float
    upper: float
    degree: int


@dataclass(frozen=True)
class ThetaResult:
    graph: SphereGraph
    alpha_param: Fraction
    m_value: Real
    k_star: int
    theta: float
    theta_bar: float
    chi_lower: int
    certified: bool
    m_bracket: Optional[MBracket]
    backend: str = 'float'
    scanned_degree: int = 0
    tied_degrees: Tuple[int, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        record = {
            'n': self.graph.n,
            't': float(self.graph.t),
            'alpha': float(self.alpha_param),
            'm': float(self.m_value),
            'k_star': self.k_star,
            'theta': self.theta,
            'theta_bar': self.theta_bar,
            'chi_lower': self.chi_lower,
            'certified': self.certified,
            'scanned_degree': self.scanned_degree,
            'm_bracket': ([self.m_bracket.lower, self.m_bracket.upper]
                          if self.m_bracket is not None else None),
        }
        if isinstance(self.m_value, Fraction):
            record['m_exact'] = str(self.m_value)
        if self.tied_degrees:
            record['tied_degrees'] = list(self.tied_degrees)
        return record


def sphere_area(n: int) -> float:
    """Surface area omega_n = 2 pi^(n/2) / Gamma(n/2) of S^(n-1)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise ParameterRangeError(f"sphere_area needs an integer n >= 2, got {n!r}")
    if n <= 340:
        return 2.0 * math.pi ** (n / 2) / gamma(Fraction(n, 2))
    return math.exp(math.log(2.0) + 0.5 * n * math.log(math.pi) - log_gamma(Fraction(n, 2)))


def _alpha_for(n: int, backend: str) -> Real:
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise ParameterRangeError(f"Dimension n must be an integer >= 2, got {n!r}")
    if backend == 'rational':
        if n % 2 == 0:
            raise RationalInputError(
                f"n={n} gives a half-integer alpha; the rational backend needs odd n"
            )
        return Fraction(n - 3, 2)
    if backend != 'float':
        raise ValueError(f"Unknown backend '{backend}'")
    return (n - 3) / 2.0


def _inner_product(t, backend: str) -> Real:
    value = to_exact(t) if backend == 'rational' else float(t)
    if not -1 < value < 1:
        raise ParameterRangeError(f"Inner product t must lie in (-1, 1), got {t}")
    return value


def _next_envelope_degree(degree: int) -> int:
    return max(degree + 1, math.ceil(1.25 * degree))


def _is_tie(value: float, best: float) -> bool:
    return abs(value - best) <= _TIE_RELATIVE * abs(best)


def m_of_t(n: int, t, backend: str = 'float', max_degree: Optional[int] = None) -> MinimumScan:
    """
    Minimum over k of R_k(t) for alpha = (n - 3) / 2.

    For t >= 0 the scan stops once it is certified: the minimum of R_j over
    [0, 1] is attained at the largest zero z_(j-1) of the (alpha+1, alpha+1)
    family and those minima increase with j, so once R_K(z_(K-1)) is above the
    running minimum no later degree can undercut it. Envelope checks run on a
    geometric schedule of degrees.

    For t < 0 the scan covers a fixed number of degrees and is not certified.

    Args:
        n: Dimension, >= 2 (n = 2 is never certified)
        t: Inner product in (-1, 1)
        backend: 'float' or 'rational' (odd n only)
        max_degree: Scan cap (defaults to theta_max_degree)

    Returns:
        MinimumScan with the smallest minimizing degree
    """
    alpha = _alpha_for(n, backend)
    t = _inner_product(t, backend)
    max_degree = int(setting('theta_max_degree', max_degree))
    family = get_family(alpha, alpha, backend)
    envelope_family = get_family(float(alpha) + 1.0, float(alpha) + 1.0)
    value_family = get_family(float(alpha), float(alpha))

    if t >= 0:
        stop_degree = max_degree
        next_check = _FIRST_ENVELOPE_DEGREE
    else:
        j = first_zero(float(alpha) + 1.0).value
        stop_degree = min(max_degree, max(256, math.ceil(8.0 * j / math.acos(abs(float(t))))))
        next_check = None

    best_k, best_value = 0, None
    best_float = math.inf
    ties = []
    certified = False
    degree = 0

    for degree, value in enumerate(family.iter_values(t)):
        value_float = float(value)
        if degree == 1:
            best_k, best_value, best_float = degree, value, value_float
        elif degree > 1:
            if value_float < best_float and not _is_tie(value_float, best_float):
                best_k, best_value, best_float = degree, value, value_float
                ties = []
            elif _is_tie(value_float, best_float):
                ties.append(degree)
                if value < best_value:
                    best_value, best_float = value, value_float

        if next_check is not None and degree == next_check:
            zero = envelope_family.largest_zero(degree - 1).value
            if zero > t:
                envelope = value_family.eval(degree, zero)
                if envelope > best_float + _TIE_RELATIVE * abs(best_float):
                    certified = True
                    break
            next_check = _next_envelope_degree(degree)

        if degree >= stop_degree:
            break

    if n == 2:
        log_status('WARNING', "n=2 uses alpha=-1/2; the scan is not certified")
        certified = False
    elif t >= 0 and not certified:
        log_status('WARNING', f"Scan for n={n}, t={float(t)} reached degree {degree} without a certificate")
    if ties:
        log_status('WARNING', f"Degrees {[best_k] + ties} tie for the minimum at n={n}, t={float(t)}")

    return MinimumScan(best_k, best_value, certified, degree, tuple(ties))


def analytic_t(n: int, k: int) -> AnalyticPoint:
    """
    The inner product t = z_(k-1), largest zero of R_(k-1)^(alpha+1, alpha+1),
    at which m(t) = R_k(t) is attained exactly at degree k.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 2:
        raise ParameterRangeError(f"analytic_t needs an integer degree k >= 2, got {k!r}")
    alpha = _alpha_for(n, 'float')
    t = get_family(alpha + 1.0, alpha + 1.0).largest_zero(k - 1).value
    return AnalyticPoint(t, get_family(alpha, alpha).eval(k, t))


def _bracket_degree(alpha: float, t: float) -> int:
    """Degree k with z_(k-1) <= t < z_k for the largest zeros of the (alpha+1, alpha+1) family."""
    family = get_family(alpha + 1.0, alpha + 1.0)
    j = first_zero(alpha + 1.0).value
    theta = math.acos(t)
    k = 2 if theta == 0 else max(2, int(round(j / theta - (alpha + 1.5))))
    while k > 2 and family.largest_zero(k - 1).value > t:
        k -= 1
    while family.largest_zero(k).value <= t:
        k += 1
    return k


def m_bracket(n: int, t) -> MBracket:
    """
    Enclosure of m(t) for 0 <= t < 1.

    With z_(k-1) <= t < z_k (largest zeros of the (alpha+1, alpha+1) family),
    R_k(z_(k-1)) <= m(t) <= R_(k+1)(w_k), where w_k is the largest zero of
    R_k^(alpha+1, alpha).
    """
    alpha = _alpha_for(n, 'float')
    t = float(t)
    if not 0 <= t < 1:
        raise ParameterRangeError(
            f"m_bracket needs 0 <= t < 1 (the smallest applicable zero is 0), got {t}"
        )
    k = _bracket_degree(alpha, t)
    family = get_family(alpha, alpha)
    lower_zero = get_family(alpha + 1.0, alpha + 1.0).largest_zero(k - 1).value
    upper_zero = get_family(alpha + 1.0, alpha).largest_zero(k).value
    return MBracket(family.eval(k, lower_zero), family.eval(k + 1, upper_zero), k)


def chi_from_m(m_value: Real) -> int:
    """ceil((m - 1) / m), guarded against roundoff for floats and exact for Fractions."""
    if isinstance(m_value, Fraction):
        return math.ceil((m_value - 1) / m_value)
    return math.ceil((m_value - 1.0) / m_value - setting('ceil_guard'))


def theta_of(n: int, t, backend: str = 'float', max_degree: Optional[int] = None) -> ThetaResult:
    """
    Theta function of G(n, t) and the chromatic lower bound it gives.

    Args:
        n: Dimension, >= 2
        t: Inner product in (-1, 1)
        backend: 'float' or 'rational'
        max_degree: Scan cap

    Returns:
        ThetaResult
    """
    scan = m_of_t(n, t, backend=backend, max_degree=max_degree)
    t_value = _inner_product(t, backend)
    graph = SphereGraph.single(n, t_value)
    omega = sphere_area(n)
    m = float(scan.m_value)
    theta = omega * m / (m - 1.0)
    theta_bar = omega / theta

    certified = scan.certified
    bracket = None
    if t_value >= 0 and n >= 3:
        bracket = m_bracket(n, float(t_value))
        slack = 1e-12 * max(1.0, abs(m))
        if certified and not bracket.lower - slack <= m <= bracket.upper + slack:
            log_status('WARNING', f"m(t)={m} falls outside its bracket {bracket[:2]}; not certified")
            certified = False

    return ThetaResult(
        graph=graph,
        alpha_param=graph.alpha,
        m_value=scan.m_value,
        k_star=scan.k_star,
        theta=theta,
        theta_bar=theta_bar,
        chi_lower=chi_from_m(scan.m_value),
        certified=certified,
        m_bracket=bracket,
        backend=backend,
        scanned_degree=scan.scanned_degree,
        tied_degrees=scan.tied_degrees,
    )


def theta_from_m(n: int, m_value: float) -> float:
    """omega_n m / (m - 1)."""
    omega = sphere_area(n)
    return omega * m_value / (m_value - 1.0)
