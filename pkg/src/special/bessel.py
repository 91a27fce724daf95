"""Bessel functions of the first kind and their first positive zeros.

J_nu(x) = sum_m (-1)^m (x/2)^(nu+2m) / (m! Gamma(nu+m+1)).

The alternating series loses about x / ln(10) decimal digits to cancellation
near x = nu + 60, so terms are summed in mpmath at a working precision that
grows with x and the result is rounded to a float at the end.
"""
import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from src.utils.config import setting
from src.utils.console import log_status
from src.utils.errors import BesselRangeError, ConvergenceError, ParameterRangeError

ENVELOPE = 60.0
_GUARD_DIGITS = 25
_MAX_TERMS = 20000

# mpmath precision is process-global; every precision change happens under this lock.
MP_LOCK = threading.RLock()


@dataclass(frozen=True)
class BesselZero:
    """First positive zero j_nu of J_nu."""
    order: float
    value: float
    residual: float
    certified_first: bool = True

    def to_dict(self) -> dict:
        return {
            'nu': self.order,
            'j': self.value,
            'residual': self.residual,
            'certified_first': self.certified_first,
        }


def _check_order(nu) -> float:
    nu = float(nu)
    if not math.isfinite(nu) or nu < 0:
        raise ParameterRangeError(f"Bessel order must be a finite real >= 0, got {nu}")
    return nu


def bessel_j(nu: float, x: float) -> float:
    """
    Evaluate J_nu(x) by its power series.

    Args:
        nu: Order, >= 0
        x: Argument, 0 <= x <= nu + 60

    Returns:
        J_nu(x) as a float

    Raises:
        BesselRangeError: If x lies outside the series envelope
    """
    nu = _check_order(nu)
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise ParameterRangeError(f"Bessel argument must be a finite real >= 0, got {x}")
    if x > nu + ENVELOPE:
        raise BesselRangeError(
            f"J_{nu}({x}) is outside the series envelope x <= nu + {ENVELOPE:g}"
        )
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0

    digits = _GUARD_DIGITS + int(math.ceil(2.0 * x / math.log(10.0)))
    with MP_LOCK, mpmath.workdps(digits):
        half = mpmath.mpf(x) / 2
        square = half * half
        term = mpmath.power(half, nu) / mpmath.gamma(nu + 1)
        terms = [term]
        largest = abs(term)
        cutoff = mpmath.mpf(10) ** (-digits)
        m = 0
        while True:
            m += 1
            term = -term * square / (m * (m + nu))
            terms.append(term)
            largest = max(largest, abs(term))
            if m > half and abs(term) <= cutoff * largest:
                break
            if m >= _MAX_TERMS:
                raise ConvergenceError(f"Series for J_{nu}({x}) did not converge in {_MAX_TERMS} terms")
        return float(mpmath.fsum(terms))


def bessel_j_derivative(nu: float, x: float) -> float:
    """dJ_nu/dx from neighbouring orders."""
    nu = _check_order(nu)
    if nu >= 1.0:
        return 0.5 * (bessel_j(nu - 1.0, x) - bessel_j(nu + 1.0, x))
    if x == 0.0:
        return 0.5 if nu == 1.0 else 0.0
    return (nu / x) * bessel_j(nu, x) - bessel_j(nu + 1.0, x)


def first_zero_estimate(nu: float) -> float:
    """Olver-McMahon style estimate of j_nu, accurate to about 1e-3 for nu >= 1."""
    nu = _check_order(nu)
    if nu < 1.0:
        return 2.404825557695773 + 1.4268741 * nu
    cube = nu ** (1.0 / 3.0)
    return (nu + 1.8557571 * cube + 1.033150 / cube - 0.00397 / nu
            - 0.0908 / cube ** 5 + 0.043 / cube ** 7)


def _newton(nu: float, x: float, residual: float, max_iterations: int):
    for _ in range(max_iterations):
        value = bessel_j(nu, x)
        if abs(value) <= residual:
            return x, abs(value)
        slope = bessel_j_derivative(nu, x)
        if slope == 0.0 or not math.isfinite(slope):
            return None
        x -= value / slope
        if not (nu < x <= nu + ENVELOPE):
            return None
    return None


def _scan_bracket(nu: float):
    """First sign change of J_nu scanning upward from max(nu, 1) in steps of 0.5."""
    lower = max(nu, 1.0)
    lower_value = bessel_j(nu, lower)
    while lower + 0.5 <= nu + ENVELOPE:
        upper = lower + 0.5
        upper_value = bessel_j(nu, upper)
        if lower_value * upper_value <= 0.0:
            return lower, upper
        lower, lower_value = upper, upper_value
    raise ConvergenceError(f"No sign change of J_{nu} found below nu + {ENVELOPE:g}")


def _bisect(nu: float, lower: float, upper: float, width: float = 1e-3):
    lower_value = bessel_j(nu, lower)
    while upper - lower > width:
        middle = 0.5 * (lower + upper)
        value = bessel_j(nu, middle)
        if value * lower_value > 0.0:
            lower, lower_value = middle, value
        else:
            upper = middle
    return 0.5 * (lower + upper)


def _first_sign_change(nu: float, end: float, step: float):
    """
    Walk a grid of the given step over (nu, end) and return the first cell in
    which J_nu changes sign, or None. J_nu has no zero in (0, nu].
    """
    with MP_LOCK, mpmath.workdps(30):
        count = max(1, int(math.ceil((end - nu) / step)))
        previous_x = nu
        previous = mpmath.besselj(nu, nu) if nu > 0 else mpmath.mpf(1)
        for i in range(1, count):
            x = nu + i * (end - nu) / count
            value = mpmath.besselj(nu, x)
            if previous * value <= 0:
                return previous_x, x
            previous_x, previous = x, value
    return None


@lru_cache(maxsize=1024)
def _first_zero(nu: float, residual: float, max_iterations: int, grid_step: float) -> BesselZero:
    result = _newton(nu, first_zero_estimate(nu), residual, max_iterations)
    if result is None:
        log_status('INFO', f"Newton from the asymptotic guess failed for nu={nu}; scanning")
        lower, upper = _scan_bracket(nu)
        result = _newton(nu, _bisect(nu, lower, upper), residual, max_iterations)
        if result is None:
            raise ConvergenceError(
                f"Newton iteration for j_{nu} did not converge in {max_iterations} steps"
            )
    value, error = result

    earlier = _first_sign_change(nu, value - 0.5 * grid_step, grid_step)
    if earlier is not None:
        log_status('WARNING', f"Newton reached a later zero of J_{nu}; refining the first one")
        result = _newton(nu, _bisect(nu, *earlier), residual, max_iterations)
        if result is None:
            raise ConvergenceError(f"Newton iteration for j_{nu} did not converge")
        value, error = result
        if _first_sign_change(nu, value - 0.5 * grid_step, grid_step) is not None:
            return BesselZero(nu, value, error, certified_first=False)

    return BesselZero(nu, value, error)


def first_zero(nu: float) -> BesselZero:
    """
    First positive zero j_nu of J_nu.

    The zero is refined by Newton from the asymptotic estimate (falling back to
    a scan), then certified as the first one by checking that J_nu keeps its
    sign on a fine grid over (nu, j_nu).

    Raises:
        ConvergenceError: If Newton does not reach the residual tolerance
    """
    nu = _check_order(nu)
    return _first_zero(
        nu,
        float(setting('bessel_residual')),
        int(setting('bessel_max_iterations')),
        float(setting('bessel_grid_step')),
    )
