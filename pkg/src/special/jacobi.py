"""Jacobi polynomials normalized to take the value 1 at u = 1.

R_k(u) = P_k^(alpha,beta)(u) / P_k^(alpha,beta)(1) is produced directly by the
normalized three-term recurrence

    R_{k+1}(u) = (a_k u + b_k) R_k(u) - c_k R_{k-1}(u),

so the binomial P_k(1) = C(k + alpha, k) is never formed. Two backends are
available: binary floats (default) and exact ``fractions.Fraction``.
"""
import math
import threading
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Union

import numpy as np

from src.special.bessel import first_zero_estimate
from src.utils.config import setting
from src.utils.errors import BracketNotFoundError, ParameterRangeError, RationalInputError

Real = Union[int, float, Fraction]

BACKENDS = ('float', 'rational')
_COEFFICIENT_BLOCK = 256


def to_exact(value) -> Fraction:
    """
    Convert value to a Fraction without silently changing it.

    Strings ("0.9999", "21/2"), ints, Fractions and Decimals are exact. A float
    is accepted only when its binary value equals its shortest decimal form
    (0.5, 10.5, 0.25); 0.9999 as a float is rejected because the float is not
    9999/10000.
    """
    if isinstance(value, bool):
        raise RationalInputError(f"Cannot use boolean {value!r} as a rational number")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise RationalInputError(f"Non-finite value {value!r} has no rational form")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise RationalInputError(f"Cannot parse {value!r} as an exact rational number")
    if isinstance(value, float):
        if not math.isfinite(value):
            raise RationalInputError(f"Non-finite value {value!r} has no rational form")
        exact = Fraction(value)
        if exact != Fraction(repr(value)):
            raise RationalInputError(
                f"Float {value!r} is not exactly {repr(value)}; pass it as the string "
                f"'{value!r}' or as a Fraction for the rational backend"
            )
        return exact
    raise RationalInputError(f"Unsupported type {type(value).__name__} for the rational backend")


@dataclass(frozen=True)
class JacobiParams:
    """Parameters (alpha, beta) of the weight (1 - u)^alpha (1 + u)^beta."""
    alpha: Real
    beta: Real

    def __post_init__(self):
        if not self.alpha > -1 or not self.beta > -1:
            raise ParameterRangeError(
                f"Jacobi parameters must satisfy alpha > -1 and beta > -1, "
                f"got alpha={self.alpha}, beta={self.beta}"
            )

    @property
    def symmetric(self) -> bool:
        return self.alpha == self.beta


@dataclass(frozen=True)
class ZeroRecord:
    """The j-th smallest zero of R_k, with the width of its verified bracket."""
    params: JacobiParams
    degree: int
    index: int
    value: float
    bracket_width: float

    def to_dict(self) -> dict:
        return {
            'alpha': float(self.params.alpha),
            'beta': float(self.params.beta),
            'degree': self.degree,
            'index': self.index,
            'value': self.value,
            'bracket_width': self.bracket_width,
        }


def _check_degree(k, minimum: int = 0) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < minimum:
        raise ParameterRangeError(f"Degree must be an integer >= {minimum}, got {k!r}")
    return int(k)


class JacobiFamily:
    """Normalized Jacobi polynomials R_k for fixed (alpha, beta)."""

    def __init__(self, alpha: Real, beta: Optional[Real] = None, backend: str = 'float'):
        """
        Initialize the family.

        Args:
            alpha: First weight parameter, > -1
            beta: Second weight parameter, > -1 (defaults to alpha)
            backend: 'float' or 'rational'
        """
        if backend not in BACKENDS:
            raise ValueError(f"Unknown backend '{backend}', expected one of {BACKENDS}")
        if beta is None:
            beta = alpha

        if backend == 'rational':
            alpha, beta = to_exact(alpha), to_exact(beta)
        else:
            alpha, beta = float(alpha), float(beta)

        self.params = JacobiParams(alpha, beta)
        self.backend = backend
        self._a: List[Real] = []
        self._b: List[Real] = []
        self._c: List[Real] = []
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return (f"JacobiFamily(alpha={self.params.alpha}, beta={self.params.beta}, "
                f"backend='{self.backend}')")

    @property
    def alpha(self) -> Real:
        return self.params.alpha

    @property
    def beta(self) -> Real:
        return self.params.beta

    # ------------------------------------------------------------------
    # Recurrence coefficients
    # ------------------------------------------------------------------
    def _coefficients(self, k: int):
        """(a_k, b_k, c_k) producing R_{k+1} from R_k and R_{k-1}."""
        a, b = self.alpha, self.beta
        one = Fraction(1) if self.backend == 'rational' else 1.0
        two = 2 * one
        if k == 0:
            lead = (a + b + two) / (two * (a + one))
            return lead, one - lead, 0 * one

        n = k + 1
        s = 2 * n + a + b
        lead = (s - one) * s / (two * (n + a + b) * (n + a))
        shift = (s - one) * (a * a - b * b) / (two * (n + a + b) * (s - two) * (n + a))
        back = (n - 1) * (n + b - one) * s / ((n + a + b) * (s - two) * (n + a))
        return lead, shift, back

    def ensure_coefficients(self, k: int):
        """Extend the coefficient tables so that a_j, b_j, c_j exist for j < k."""
        if len(self._a) >= k:
            return
        with self._lock:
            target = max(k, len(self._a) + _COEFFICIENT_BLOCK)
            for j in range(len(self._a), target):
                lead, shift, back = self._coefficients(j)
                self._a.append(lead)
                self._b.append(shift)
                self._c.append(back)

    def coefficients(self, k: int):
        """Public view of (a_k, b_k, c_k)."""
        k = _check_degree(k)
        self.ensure_coefficients(k + 1)
        return self._a[k], self._b[k], self._c[k]

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------
    def _coerce_point(self, u) -> Real:
        if self.backend == 'rational':
            u = to_exact(u)
        else:
            u = float(u)
            if not math.isfinite(u):
                raise ParameterRangeError(f"Evaluation point must be finite, got {u}")
        if u < -1 or u > 1:
            raise ParameterRangeError(f"Evaluation point must lie in [-1, 1], got {u}")
        return u

    def _step(self, j: int, u: Real, current: Real, previous: Real) -> Real:
        if self.backend == 'rational':
            return (self._a[j] * u + self._b[j]) * current - self._c[j] * previous
        return math.fsum((self._a[j] * u * current, self._b[j] * current, -self._c[j] * previous))

    def eval(self, k: int, u) -> Real:
        """
        Evaluate R_k(u).

        Args:
            k: Degree, >= 0
            u: Point in [-1, 1]

        Returns:
            float for the float backend, Fraction for the rational backend
        """
        k = _check_degree(k)
        u = self._coerce_point(u)
        one = Fraction(1) if self.backend == 'rational' else 1.0
        if k == 0 or u == 1:
            return one
        if u == -1 and self.params.symmetric:
            return one if k % 2 == 0 else -one

        self.ensure_coefficients(k)
        previous, current = one, self._a[0] * u + self._b[0]
        for j in range(1, k):
            previous, current = current, self._step(j, u, current, previous)
        return current

    def iter_values(self, u) -> Iterator[Real]:
        """Yield R_0(u), R_1(u), R_2(u), ... without end."""
        u = self._coerce_point(u)
        one = Fraction(1) if self.backend == 'rational' else 1.0
        yield one
        self.ensure_coefficients(1)
        previous, current = one, self._a[0] * u + self._b[0]
        yield current
        j = 1
        while True:
            self.ensure_coefficients(j + 1)
            previous, current = current, self._step(j, u, current, previous)
            yield current
            j += 1

    def values(self, kmax: int, u) -> List[Real]:
        """Return [R_0(u), ..., R_kmax(u)]."""
        kmax = _check_degree(kmax)
        values = []
        for k, value in enumerate(self.iter_values(u)):
            values.append(value)
            if k == kmax:
                break
        return values

    def eval_array(self, k: int, us) -> np.ndarray:
        """Vectorized float evaluation of R_k at every point of us."""
        k = _check_degree(k)
        us = np.asarray(us, dtype=float)
        if k == 0:
            return np.ones_like(us)
        self.ensure_coefficients(k)
        a, b, c = self._float_coefficients(k)
        previous = np.ones_like(us)
        current = a[0] * us + b[0]
        for j in range(1, k):
            previous, current = current, (a[j] * us + b[j]) * current - c[j] * previous
        return current

    def table(self, kmax: int, us) -> np.ndarray:
        """
        Evaluate R_0..R_kmax at every point of us.

        Returns:
            Array of shape (kmax + 1, len(us)); row k holds R_k
        """
        kmax = _check_degree(kmax)
        us = np.asarray(us, dtype=float).reshape(-1)
        result = np.ones((kmax + 1, us.size))
        if kmax == 0:
            return result
        self.ensure_coefficients(kmax)
        a, b, c = self._float_coefficients(kmax)
        result[1, :] = a[0] * us + b[0]
        for j in range(1, kmax):
            result[j + 1, :] = (a[j] * us + b[j]) * result[j, :] - c[j] * result[j - 1, :]
        return result

    def _float_coefficients(self, k: int):
        if self.backend == 'rational':
            return ([float(x) for x in self._a[:k]],
                    [float(x) for x in self._b[:k]],
                    [float(x) for x in self._c[:k]])
        return self._a, self._b, self._c

    def eval_derivative(self, k: int, u) -> Real:
        """
        dR_k/du through (2 alpha + 2) dR_k/du = k (k + 2 alpha + 1) R_{k-1}^(alpha+1, alpha+1).

        Only defined for alpha = beta.
        """
        k = _check_degree(k)
        if not self.params.symmetric:
            raise ParameterRangeError(
                f"eval_derivative needs alpha == beta, got alpha={self.alpha}, beta={self.beta}"
            )
        if k == 0:
            self._coerce_point(u)
            return Fraction(0) if self.backend == 'rational' else 0.0
        scale = k * (k + 2 * self.alpha + 1) / (2 * self.alpha + 2)
        return scale * self.derivative_family().eval(k - 1, u)

    def derivative_family(self) -> 'JacobiFamily':
        """The family with parameters (alpha + 1, beta + 1)."""
        return get_family(self.alpha + 1, self.beta + 1, self.backend)

    def _derivative_array(self, k: int, us: np.ndarray) -> np.ndarray:
        if self.params.symmetric:
            alpha = float(self.alpha)
            scale = k * (k + 2 * alpha + 1) / (2 * alpha + 2)
            return scale * get_family(alpha + 1, alpha + 1).eval_array(k - 1, us)
        step = 1e-7
        upper = np.minimum(us + step, 1.0)
        lower = np.maximum(us - step, -1.0)
        return (self.eval_array(k, upper) - self.eval_array(k, lower)) / (upper - lower)

    # ------------------------------------------------------------------
    # Zeros
    # ------------------------------------------------------------------
    def _float_twin(self) -> 'JacobiFamily':
        if self.backend == 'float':
            return self
        return get_family(float(self.alpha), float(self.beta), 'float')

    def sign_variations(self, k: int, u: float) -> int:
        """
        Number of sign changes in R_0(u), ..., R_k(u), zeros skipped.

        The R_j form a Sturm sequence, so this equals the number of zeros of
        R_k lying strictly above u.
        """
        k = _check_degree(k)
        family = self._float_twin()
        u = float(u)
        if k == 0:
            return 0
        family.ensure_coefficients(k)
        a, b, c = family._a, family._b, family._c
        previous, current = 1.0, a[0] * u + b[0]
        changes = 0
        last_sign = 1.0
        if current != 0.0:
            if current < 0.0:
                changes += 1
            last_sign = math.copysign(1.0, current)
        for j in range(1, k):
            previous, current = current, (a[j] * u + b[j]) * current - c[j] * previous
            if current != 0.0:
                sign = math.copysign(1.0, current)
                if sign != last_sign:
                    changes += 1
                last_sign = sign
        return changes

    def zeros(self, k: int, tolerance: Optional[float] = None) -> List[ZeroRecord]:
        """
        All k zeros of R_k in increasing order.

        Zeros are built degree by degree: the zeros of R_{j-1} together with
        -1 and 1 cut [-1, 1] into j intervals holding exactly one zero of R_j
        each. Every interval is bisected to the tolerance, then polished by
        one Newton step that is kept only if it stays inside the bracket.
        """
        k = _check_degree(k, minimum=1)
        tolerance = setting('zero_tolerance', tolerance)
        family = self._float_twin()

        previous = np.array([], dtype=float)
        widths = np.array([], dtype=float)
        for j in range(1, k + 1):
            edges = np.concatenate(([-1.0], previous, [1.0]))
            previous, widths = family._refine_brackets(j, edges[:-1], edges[1:], tolerance)

        return [
            ZeroRecord(self.params, k, i + 1, float(value), float(width))
            for i, (value, width) in enumerate(zip(previous, widths))
        ]

    def _refine_brackets(self, k: int, lower: np.ndarray, upper: np.ndarray, tolerance: float):
        lower = lower.copy()
        upper = upper.copy()
        # Above its i-th zero from the top R_k has sign (-1)^(i-1).
        left_sign = np.array([(-1.0) ** (k - i) for i in range(k)])

        for _ in range(200):
            width = upper - lower
            if np.all(width <= tolerance):
                break
            middle = 0.5 * (lower + upper)
            values = self.eval_array(k, middle)
            same = values * left_sign > 0
            exact = values == 0
            lower = np.where(same, middle, lower)
            upper = np.where(same | exact, upper, middle)
            lower = np.where(exact, middle, lower)
            upper = np.where(exact, middle, upper)

        roots = 0.5 * (lower + upper)
        values = self.eval_array(k, roots)
        slopes = self._derivative_array(k, roots)
        with np.errstate(divide='ignore', invalid='ignore'):
            newton = roots - values / slopes
        keep = np.isfinite(newton) & (newton >= lower) & (newton <= upper)
        roots = np.where(keep, newton, roots)

        if self.params.symmetric:
            roots = 0.5 * (roots - roots[::-1])
        return roots, upper - lower

    def largest_zero(self, k: int, tolerance: Optional[float] = None) -> ZeroRecord:
        """
        The largest zero of R_k.

        The starting point cos(j / (k + (alpha + beta + 1) / 2)) comes from the
        Bessel asymptotics of the extreme zero; the bracket is verified with the
        Sturm count before bisecting.
        """
        k = _check_degree(k, minimum=1)
        tolerance = setting('zero_tolerance', tolerance)
        family = self._float_twin()
        alpha, beta = float(self.alpha), float(self.beta)

        if k == 1:
            lead, shift, _ = family.coefficients(0)
            return ZeroRecord(self.params, 1, 1, -shift / lead, 0.0)

        theta = first_zero_estimate(max(alpha, 0.0)) / (k + (alpha + beta + 1.0) / 2.0)
        theta = min(theta, math.pi)
        guess = math.cos(theta)

        lower, upper = -1.0, 1.0
        if family.sign_variations(k, guess) >= 1:
            lower = guess
            trial = theta
            for _ in range(60):
                trial *= 0.75
                x = math.cos(trial)
                if family.sign_variations(k, x) == 0:
                    upper = x
                    break
                lower = x
        else:
            upper = guess
            trial = theta
            for _ in range(60):
                trial = min(trial * 1.5, math.pi)
                x = math.cos(trial)
                if family.sign_variations(k, x) >= 1:
                    lower = x
                    break
                upper = x
            else:
                raise BracketNotFoundError(
                    f"No sign change found below {upper} for degree {k} of {self!r}"
                )

        for _ in range(200):
            if upper - lower <= tolerance:
                break
            middle = 0.5 * (lower + upper)
            if family.sign_variations(k, middle) >= 1:
                lower = middle
            else:
                upper = middle

        if float(family.eval_array(k, lower)) * float(family.eval_array(k, upper)) > 0.0:
            raise BracketNotFoundError(
                f"Bracket [{lower}, {upper}] for the largest zero of degree {k} lost its "
                f"sign change; switch to the rational backend"
            )
        return ZeroRecord(self.params, k, k, 0.5 * (lower + upper), upper - lower)


@lru_cache(maxsize=256)
def _cached_family(alpha, beta, backend: str) -> JacobiFamily:
    return JacobiFamily(alpha, beta, backend)


def get_family(alpha: Real, beta: Optional[Real] = None, backend: str = 'float') -> JacobiFamily:
    """Shared JacobiFamily for (alpha, beta, backend); coefficient tables are reused."""
    if beta is None:
        beta = alpha
    if backend == 'rational':
        return _cached_family(to_exact(alpha), to_exact(beta), backend)
    return _cached_family(float(alpha), float(beta), backend)


def harm_dim(n: int, k: int) -> int:
    """
    Dimension h_k of the space of degree-k harmonic polynomials in n variables.

    Python integers are unbounded, so large results are exact rather than wrapped.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise ParameterRangeError(f"harm_dim needs an integer n >= 2, got {n!r}")
    k = _check_degree(k)
    total = math.comb(n + k - 1, n - 1)
    if n + k - 3 >= n - 1:
        total -= math.comb(n + k - 3, n - 1)
    return total
