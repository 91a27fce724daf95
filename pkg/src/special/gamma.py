"""Gamma function for the real arguments used by the sphere and Bessel formulas.

Integers up to 171 go through exact factorials, half-integers through the
exact double-factorial identity, everything else through the Lanczos
approximation (g = 7, nine coefficients), whose relative error stays below
1e-13 on the positive axis.
"""
import math
from fractions import Fraction
from typing import Union

from src.utils.errors import ParameterRangeError

Real = Union[int, float, Fraction]

LANCZOS_G = 7
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_EXACT_FACTORIAL_LIMIT = 171


def _integer_or_half(x: Real):
    """Return ('int', m) for x = m, ('half', m) for x = m + 1/2, else None."""
    doubled = Fraction(x) * 2 if not isinstance(x, float) else None
    if doubled is None:
        if not math.isfinite(x) or (2.0 * x) != math.floor(2.0 * x):
            return None
        doubled = Fraction(int(2.0 * x))
    if doubled.denominator != 1:
        return None
    twice = doubled.numerator
    if twice % 2 == 0:
        return ('int', twice // 2)
    return ('half', (twice - 1) // 2)


def _lanczos_log_gamma(x: float) -> float:
    """log Gamma(x) for x >= 0.5 by the Lanczos series."""
    x -= 1.0
    series = math.fsum(
        [LANCZOS_COEFFICIENTS[0]]
        + [c / (x + i) for i, c in enumerate(LANCZOS_COEFFICIENTS[1:], start=1)]
    )
    t = x + LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (x + 0.5) * math.log(t) - t + math.log(series)


def log_gamma(x: Real) -> float:
    """
    Natural logarithm of Gamma(x) for x > 0.

    Args:
        x: Positive real argument

    Returns:
        log Gamma(x) as a float
    """
    if x <= 0:
        raise ParameterRangeError(f"log_gamma requires x > 0, got {x}")

    kind = _integer_or_half(x)
    if kind is not None:
        label, m = kind
        if label == 'int' and m <= _EXACT_FACTORIAL_LIMIT:
            return math.log(math.factorial(m - 1))
        if label == 'half' and m <= _EXACT_FACTORIAL_LIMIT // 2:
            # Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!)
            exact = Fraction(math.factorial(2 * m), 4 ** m * math.factorial(m))
            return math.log(exact.numerator) - math.log(exact.denominator) + 0.5 * math.log(math.pi)

    value = float(x)
    if value < 0.5:
        # Reflection keeps the Lanczos series on its accurate half-line.
        return math.log(math.pi / abs(math.sin(math.pi * value))) - _lanczos_log_gamma(1.0 - value)
    return _lanczos_log_gamma(value)


def gamma(x: Real) -> float:
    """
    Gamma(x) for x > 0.

    Raises ParameterRangeError when the result overflows a float instead of
    returning inf.
    """
    if x <= 0:
        raise ParameterRangeError(f"gamma requires x > 0, got {x}")

    kind = _integer_or_half(x)
    if kind is not None:
        label, m = kind
        if label == 'int' and m <= _EXACT_FACTORIAL_LIMIT:
            return float(math.factorial(m - 1))
        if label == 'half' and m <= _EXACT_FACTORIAL_LIMIT // 2:
            exact = Fraction(math.factorial(2 * m), 4 ** m * math.factorial(m))
            return float(exact) * math.sqrt(math.pi)

    log_value = log_gamma(x)
    if log_value > 709.0:
        raise ParameterRangeError(f"gamma({x}) overflows a double; use log_gamma")
    return math.exp(log_value)
