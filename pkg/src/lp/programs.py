"""Linear programming bounds on the sphere.

- dual_theta_lp: upper bound on theta of a graph joining points at any of
  the inner products t_1..t_s, from the dual of the harmonic-coefficient LP.
- primal_theta_lp: the truncated primal LP for a single inner product.
- delsarte_code_bound: upper bound on the size of a spherical code with
  pairwise inner products in [-1, t].
- theta_bar_single: omega_n / theta(G(n, t)).
"""
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from src.bounds.theta import SphereGraph, sphere_area, theta_of
from src.lp.simplex import INFEASIBLE, LinearProgram, lp_solve
from src.special.jacobi import get_family
from src.utils.config import setting
from src.utils.console import log_status
from src.utils.errors import ConvergenceError, DegreeTooSmallError, ParameterRangeError

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_EXCHANGE_TARGET = 1e-12
_NEAR_ACTIVE = 1e-6
_MARGIN_ATTEMPTS = 30


@dataclass
class DualThetaResult:
    graph: SphereGraph
    degree: int
    status: str
    bound: float
    z: np.ndarray
    certified: bool
    checked_degree: int
    tail_envelope: float
    chi_lower: Optional[int]

    def to_dict(self) -> dict:
        return {
            'n': self.graph.n,
            't': [float(t) for t in self.graph.inner_products],
            'degree': self.degree,
            'status': self.status,
            'bound_on_theta': self.bound,
            'z': [float(v) for v in self.z],
            'certified': self.certified,
            'truncation_only': not self.certified,
            'checked_degree': self.checked_degree,
            'tail_envelope': self.tail_envelope,
            'chi_lower': self.chi_lower,
        }


@dataclass
class PrimalThetaResult:
    n: int
    t: float
    degree: int
    value: float
    f: np.ndarray
    support: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            't': self.t,
            'degree': self.degree,
            'value': self.value,
            'support': list(self.support),
        }


@dataclass
class DelsarteResult:
    n: int
    t: float
    degree: int
    f: np.ndarray
    bound: float
    max_violation: float
    certified_bound: float
    certified: bool = True
    grid_size: int = 0
    exchange_rounds: int = 0
    margin: float = 0.0
    certified_f: np.ndarray = field(default=None)

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            't': self.t,
            'degree': self.degree,
            'f': [float(v) for v in self.f],
            'bound': self.bound,
            'max_violation': self.max_violation,
            'certified_bound': self.certified_bound,
            'certified': self.certified,
            'grid_size': self.grid_size,
            'exchange_rounds': self.exchange_rounds,
            'margin': self.margin,
        }


def _check_degree(k, minimum: int) -> int:
    if isinstance(k, bool) or not isinstance(k, int) or k < minimum:
        raise ParameterRangeError(f"Degree must be an integer >= {minimum}, got {k!r}")
    return k


def _alpha(n: int) -> float:
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise ParameterRangeError(f"Dimension n must be an integer >= 2, got {n!r}")
    return (n - 3) / 2.0


# ----------------------------------------------------------------------
# Theta function LPs
# ----------------------------------------------------------------------
def dual_theta_lp(graph: SphereGraph, degree: int, tail_factor: Optional[int] = None) -> DualThetaResult:
    """
    Minimize z_1 / omega_n over free z_1, z_(t_1), ..., z_(t_s) subject to

        z_1 + sum_i z_(t_i)           >= omega_n^2,
        z_1 + sum_i z_(t_i) R_k(t_i)  >= 0          for k = 1..degree.

    Constraints are divided by omega_n^2 before solving. Afterwards the
    degree constraints are checked up to tail_factor * degree; the bound is
    certified when z_1 >= sum_i |z_(t_i)| times the largest |R_k(t_i)| seen
    beyond the truncation, and flagged truncation-only otherwise.
    """
    degree = _check_degree(degree, 1)
    tail_factor = int(setting('dual_tail_factor', tail_factor))
    n = graph.n
    alpha = _alpha(n)
    omega = sphere_area(n)
    ts = np.array([float(t) for t in graph.inner_products])
    s = ts.size

    checked_degree = tail_factor * degree
    values = get_family(alpha, alpha).table(checked_degree, ts)

    matrix = np.hstack([np.ones((degree + 1, 1)), values[:degree + 1]])
    senses = ['>='] * (degree + 1)
    rhs = np.zeros(degree + 1)
    rhs[0] = 1.0
    objective = np.zeros(s + 1)
    objective[0] = 1.0
    program = LinearProgram(objective, matrix, senses, rhs, free=np.ones(s + 1, dtype=bool))
    solution = lp_solve(program)

    if not solution.optimal:
        log_status('WARNING', f"Dual theta LP for n={n} ended with status {solution.status}")
        return DualThetaResult(graph, degree, solution.status, math.nan,
                               solution.x * omega ** 2, False, checked_degree, math.nan, None)

    w = solution.x
    bound = omega * w[0]
    tolerance = float(setting('lp_feasibility_tolerance'))

    constraint_values = w[0] + values @ w[1:]
    tail_ok = bool(np.all(constraint_values[1:] >= -tolerance))
    tail = values[degree + 1:]
    envelope = float(np.abs(tail).max()) if tail.size else 0.0
    certified = tail_ok and w[0] >= float(np.abs(w[1:]).sum()) * envelope
    if not certified:
        log_status('WARNING', f"Dual theta LP bound for n={n} is truncation-only at degree {degree}")

    chi_lower = math.ceil(omega / bound - setting('ceil_guard')) if bound > 0 else None
    return DualThetaResult(graph, degree, solution.status, bound, w * omega ** 2,
                           certified, checked_degree, envelope, chi_lower)


def primal_theta_lp(n: int, t: float, degree: int) -> PrimalThetaResult:
    """
    Maximize omega_n^2 f_0 subject to f_k >= 0, sum_k f_k = 1 / omega_n and
    f_0 + sum_(k>=1) f_k R_k(t) = 0 for k <= degree.

    The optimum is omega_n m_K / (m_K - 1), with m_K the minimum of R_k(t)
    over 1 <= k <= degree; the optimal f is supported on {0, k*}.
    """
    degree = _check_degree(degree, 1)
    alpha = _alpha(n)
    t = float(t)
    if not -1 < t < 1:
        raise ParameterRangeError(f"Inner product t must lie in (-1, 1), got {t}")
    omega = sphere_area(n)
    values = get_family(alpha, alpha).table(degree, [t])[:, 0]

    # Scaled variables g = omega f.
    objective = np.zeros(degree + 1)
    objective[0] = -1.0
    matrix = np.vstack([np.ones(degree + 1), np.concatenate([[1.0], values[1:]])])
    solution = lp_solve(LinearProgram(objective, matrix, ['=', '='], [1.0, 0.0]))
    if not solution.optimal:
        raise ConvergenceError(f"Primal theta LP ended with status {solution.status}")

    g = solution.x
    support = tuple(int(k) for k in np.flatnonzero(g > 1e-12))
    return PrimalThetaResult(n, t, degree, omega * g[0], g / omega, support)


def theta_bar_single(n: int, t, backend: str = 'float') -> float:
    """
    omega_n / theta(G(n, t)), the second theta of G(n, t).

    No finite subgraph H of G(n, t) has theta of its complement above this value.
    """
    result = theta_of(n, t, backend=backend)
    omega = sphere_area(n)
    value = omega / result.theta
    if abs(value * result.theta - omega) > 1e-10 * omega:
        raise ConvergenceError(f"theta * theta_bar differs from omega_{n} for t={t}")
    return value


# ----------------------------------------------------------------------
# Delsarte bound
# ----------------------------------------------------------------------
def _chebyshev_lobatto(lower: float, upper: float, count: int) -> np.ndarray:
    angles = np.pi * np.arange(count) / (count - 1)
    points = 0.5 * (lower + upper) + 0.5 * (upper - lower) * np.cos(angles)
    points[0], points[-1] = upper, lower
    return np.sort(points)


def _golden_maximum(func, lower: float, upper: float, tolerance: float = 1e-13) -> float:
    c = upper - _GOLDEN * (upper - lower)
    d = lower + _GOLDEN * (upper - lower)
    fc, fd = func(c), func(d)
    while upper - lower > tolerance:
        if fc > fd:
            upper, d, fd = d, c, fc
            c = upper - _GOLDEN * (upper - lower)
            fc = func(c)
        else:
            lower, c, fc = c, d, fd
            d = lower + _GOLDEN * (upper - lower)
            fd = func(d)
    return 0.5 * (lower + upper)


class _DelsarteProfile:
    """u -> sum_k f_k R_k(u) for k = 1..degree."""

    def __init__(self, alpha: float, degree: int):
        self.family = get_family(alpha, alpha)
        self.degree = degree

    def matrix(self, points: np.ndarray) -> np.ndarray:
        return self.family.table(self.degree, points)[1:].T

    def values(self, f: np.ndarray, points: np.ndarray) -> np.ndarray:
        return self.matrix(points) @ f

    def at(self, f: np.ndarray, u: float) -> float:
        return float(self.values(f, np.array([u]))[0])


def _solve_delsarte(profile: _DelsarteProfile, grid: np.ndarray, level: float):
    matrix = profile.matrix(grid)
    program = LinearProgram(np.ones(profile.degree), matrix, ['<='] * grid.size,
                             np.full(grid.size, level))
    return lp_solve(program)


def _exchange_points(profile: _DelsarteProfile, f: np.ndarray, fine: np.ndarray,
                     excess: np.ndarray, limit: int) -> np.ndarray:
    """
    Refine every local maximum of the sampled constraint excess on the continuum.

    A maximum at an end node is searched between that node and its neighbour,
    an interior one between its two neighbours.
    """
    last = fine.size - 1
    interior = np.arange(1, last)
    peaks = list(interior[(excess[interior] >= excess[interior - 1])
                          & (excess[interior] >= excess[interior + 1])])
    if excess[0] >= excess[1]:
        peaks.append(0)
    if excess[last] >= excess[last - 1]:
        peaks.append(last)
    peaks = np.array(peaks, dtype=int)
    if peaks.size > limit:
        peaks = peaks[np.argsort(excess[peaks])[::-1][:limit]]
    points = [
        _golden_maximum(lambda u: profile.at(f, u), fine[max(i - 1, 0)], fine[min(i + 1, last)])
        for i in peaks
    ]
    return np.array(points, dtype=float)


def _continuum_excess(profile: _DelsarteProfile, f: np.ndarray, fine: np.ndarray,
                      limit: int) -> Tuple[float, np.ndarray]:
    """
    Largest value of sum_k f_k R_k(u) + 1 over [-1, t], from the fine grid and
    the refined local maxima, together with the refined points that are near active.
    """
    excess = profile.values(f, fine) + 1.0
    points = _exchange_points(profile, f, fine, excess, limit)
    peak = float(excess.max())
    if points.size:
        refined = profile.values(f, points) + 1.0
        peak = max(peak, float(refined.max()))
        points = points[refined > -_NEAR_ACTIVE]
    return max(peak, 0.0), points


def delsarte_code_bound(n: int, t: float, degree: int, grid_size: Optional[int] = None,
                        exchange_rounds: Optional[int] = None) -> DelsarteResult:
    """
    Upper bound on the size of a code on S^(n-1) with inner products in [-1, t].

    Solves min 1 + sum_k f_k subject to f_k >= 0 and
    sum_k f_k R_k(u) <= -1 at Chebyshev points u of [-1, t]. Local maxima of the
    constraint on a finer grid are then refined and added to the
    discretization until the excess is negligible. Any excess left on the
    fine grid is removed by tightening the right-hand side to -1 - 2 delta.

    Args:
        n: Dimension, >= 2
        t: Largest allowed inner product, in (-1, 1)
        degree: Largest polynomial degree K, >= 1
        grid_size: Discretization points, at least 10 (K + 1)
        exchange_rounds: Refinement rounds (defaults to delsarte_exchange_rounds)

    Raises:
        DegreeTooSmallError: If the LP is infeasible at this degree
    """
    alpha = _alpha(n)
    if isinstance(degree, bool) or not isinstance(degree, int) or degree < 0:
        raise ParameterRangeError(f"Degree must be a non-negative integer, got {degree!r}")
    t = float(t)
    if not -1 < t < 1:
        raise ParameterRangeError(f"Inner product t must lie in (-1, 1), got {t}")
    if degree == 0:
        raise DegreeTooSmallError("Delsarte LP has no variables at degree 0; increase degree")

    minimum_grid = 10 * (degree + 1)
    if grid_size is None:
        grid_size = int(setting('delsarte_grid_factor')) * (degree + 1)
    if grid_size < minimum_grid:
        raise ParameterRangeError(f"grid_size must be at least {minimum_grid}, got {grid_size}")
    exchange_rounds = int(setting('delsarte_exchange_rounds', exchange_rounds))
    fine_factor = int(setting('delsarte_fine_factor'))

    profile = _DelsarteProfile(alpha, degree)
    grid = _chebyshev_lobatto(-1.0, t, grid_size)
    fine = np.union1d(_chebyshev_lobatto(-1.0, t, fine_factor * grid_size), grid)
    peak_limit = 2 * degree + 2

    rounds = 0
    while True:
        solution = _solve_delsarte(profile, grid, -1.0)
        if solution.status == INFEASIBLE:
            raise DegreeTooSmallError(
                f"Delsarte LP is infeasible at degree {degree} for n={n}, t={t}; increase degree"
            )
        if not solution.optimal:
            raise ConvergenceError(f"Delsarte LP ended with status {solution.status}")
        f = np.maximum(solution.x, 0.0)
        violation, points = _continuum_excess(profile, f, fine, peak_limit)
        if violation <= _EXCHANGE_TARGET or rounds >= exchange_rounds or points.size == 0:
            break
        grid = np.union1d(grid, points)
        fine = np.union1d(fine, points)
        rounds += 1

    bound = 1.0 + float(f.sum())
    certified_f, margin, certified = f, 0.0, True
    remaining = violation
    attempts = 0
    while remaining > 0.0:
        if attempts >= _MARGIN_ATTEMPTS:
            log_status('WARNING', f"Delsarte margin did not clear the refined maxima (excess {remaining:.3e})")
            certified = False
            break
        margin = 2.0 * (margin + remaining)
        log_status('INFO', f"Re-solving the Delsarte LP with margin {margin:.3e}")
        solution = _solve_delsarte(profile, grid, -1.0 - margin)
        if not solution.optimal:
            raise ConvergenceError(f"Delsarte margin LP ended with status {solution.status}")
        certified_f = np.maximum(solution.x, 0.0)
        remaining, points = _continuum_excess(profile, certified_f, fine, peak_limit)
        if points.size:
            grid = np.union1d(grid, points)
            fine = np.union1d(fine, points)
        attempts += 1

    return DelsarteResult(
        n=n,
        t=t,
        degree=degree,
        f=f,
        bound=bound,
        max_violation=violation,
        certified_bound=1.0 + float(certified_f.sum()),
        certified=certified,
        grid_size=int(grid.size),
        exchange_rounds=rounds,
        margin=margin,
        certified_f=certified_f,
    )
