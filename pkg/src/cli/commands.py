"""Command implementations behind theta_bounds.py.

Every command returns an output record: a plain dict with the keys
command, parameters, results, certified, backend, wall_time_s and version.
"""
import re
import time
from typing import Dict, Iterable, List, Optional

from src import __version__
from src.bounds.limit import bound_table, convergence_check
from src.bounds.theta import SphereGraph, theta_of
from src.lp.programs import delsarte_code_bound, dual_theta_lp, theta_bar_single
from src.special.bessel import bessel_j, first_zero
from src.special.jacobi import JacobiFamily, to_exact
from src.utils.console import log_status
from src.utils.errors import ParameterRangeError

_RANGE_PATTERN = re.compile(r'^\s*(\d+)\s*(?:\.\.|-|:)\s*(\d+)\s*$')


def parse_dimension_range(text: str) -> List[int]:
    """
    Parse '10..24', '9', or '10,12,14' into a list of dimensions.

    Raises:
        ParameterRangeError: For malformed or empty ranges
    """
    text = str(text).strip()
    match = _RANGE_PATTERN.match(text)
    if match:
        start, end = int(match.group(1)), int(match.group(2))
        if end < start:
            raise ParameterRangeError(f"Empty dimension range '{text}'")
        return list(range(start, end + 1))
    try:
        values = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise ParameterRangeError(f"Cannot parse dimension range '{text}'; use e.g. 10..24")
    if not values:
        raise ParameterRangeError("Dimension range is empty")
    return values


def parse_inner_products(values: Iterable[str]) -> List[float]:
    """Flatten repeated or comma-separated inner products."""
    result = []
    for value in values:
        for part in str(value).split(','):
            if part.strip():
                try:
                    result.append(float(part))
                except ValueError:
                    raise ParameterRangeError(f"Cannot parse inner product '{part}'")
    if not result:
        raise ParameterRangeError("At least one inner product --t is required")
    return result


def parse_integer_list(values: Iterable[str]) -> List[int]:
    result = []
    for value in values:
        for part in str(value).split(','):
            if part.strip():
                try:
                    result.append(int(part))
                except ValueError:
                    raise ParameterRangeError(f"Cannot parse degree '{part}'")
    return result


def _record(command: str, parameters: Dict, results: Dict, certified: bool, backend: str,
            started: float, deterministic: bool) -> Dict:
    record = {
        'command': command,
        'parameters': parameters,
        'results': results,
        'certified': bool(certified),
        'backend': backend,
    }
    if not deterministic:
        record['wall_time_s'] = round(time.perf_counter() - started, 6)
    record['version'] = __version__
    return record


def cmd_theta(n: int, t: str, backend: str = 'float', max_degree: Optional[int] = None,
              deterministic: bool = False) -> Dict:
    """Theta function of G(n, t) and its chromatic lower bound."""
    started = time.perf_counter()
    value = t if backend == 'rational' else float(t)
    result = theta_of(n, value, backend=backend, max_degree=max_degree)
    return _record('theta', {'n': n, 't': t, 'max_degree': max_degree}, result.to_dict(),
                   result.certified, backend, started, deterministic)


def cmd_table(n_values: List[int], annotate_shift: bool = False, workers: Optional[int] = None,
              deterministic: bool = False) -> Dict:
    """Limit bounds for chi_m(R^n) over a range of dimensions."""
    started = time.perf_counter()
    table = bound_table(n_values, workers=workers)
    rows = []
    for row in table:
        entry = row.to_dict()
        if annotate_shift:
            entry['bound_dimension'] = row.n - 1
            entry['chi_int_shifted'] = entry.pop('chi_int')
        rows.append(entry)
    certified = all(first_zero(row.alpha + 1.0).certified_first for row in table)
    results = {'rows': rows, 'annotate_shift': annotate_shift}
    return _record('table', {'n': n_values, 'annotate_shift': annotate_shift}, results,
                   certified, 'float', started, deterministic)


def cmd_delsarte(n: int, t: float, degree: int, grid: Optional[int] = None,
                 deterministic: bool = False) -> Dict:
    """Delsarte upper bound for codes with inner products in [-1, t]."""
    started = time.perf_counter()
    result = delsarte_code_bound(n, t, degree, grid_size=grid)
    return _record('delsarte', {'n': n, 't': t, 'degree': degree, 'grid': grid},
                   result.to_dict(), result.certified, 'float', started, deterministic)


def cmd_dual_lp(n: int, ts: List[float], degree: int, deterministic: bool = False) -> Dict:
    """Dual LP bound on theta for the graph with inner products ts."""
    started = time.perf_counter()
    result = dual_theta_lp(SphereGraph(n, tuple(ts)), degree)
    results = result.to_dict()
    if len(result.graph.inner_products) == 1:
        results['theta_bar'] = theta_bar_single(n, result.graph.t)
    return _record('dual-lp', {'n': n, 't': ts, 'degree': degree}, results,
                   result.certified, 'float', started, deterministic)


def cmd_zeros(alpha: str, beta: Optional[str], k: int, backend: str = 'float',
              deterministic: bool = False) -> Dict:
    """All zeros of the normalized Jacobi polynomial of degree k."""
    started = time.perf_counter()
    if beta is None:
        beta = alpha
    if backend == 'rational':
        family = JacobiFamily(to_exact(alpha), to_exact(beta), backend)
    else:
        family = JacobiFamily(float(alpha), float(beta), backend)
    zeros = family.zeros(k)
    results = {
        'rows': [record.to_dict() for record in zeros],
        'largest': zeros[-1].value if zeros else None,
    }
    return _record('zeros', {'alpha': str(alpha), 'beta': str(beta), 'k': k}, results,
                   True, backend, started, deterministic)


def cmd_bessel(nu: float, deterministic: bool = False) -> Dict:
    """First positive zero of J_nu."""
    started = time.perf_counter()
    zero = first_zero(nu)
    results = zero.to_dict()
    results['j_value_check'] = bessel_j(nu, zero.value)
    if not zero.certified_first:
        log_status('WARNING', f"Zero {zero.value} of J_{nu} could not be certified as the first")
    return _record('bessel-zero', {'nu': nu}, results, zero.certified_first, 'float',
                   started, deterministic)


def cmd_convergence(n: int, k_list: List[int], deterministic: bool = False) -> Dict:
    """Gap between m at the analytic points t_k and the t -> 1 limit."""
    started = time.perf_counter()
    points = convergence_check(n, k_list)
    rows = [point._asdict() for point in points]
    gaps = [point.limit_gap for point in points]
    decreasing = all(later < earlier for earlier, later in zip(gaps, gaps[1:]))
    if not decreasing:
        log_status('WARNING', f"Gaps for n={n} are not strictly decreasing along {k_list}")
    return _record('convergence', {'n': n, 'k': k_list}, {'rows': rows, 'decreasing': decreasing},
                   decreasing, 'float', started, deterministic)
