"""Dense two-phase primal simplex.

Problems are stated as

    minimize c.x  subject to  A_i.x (<=, >=, =) b_i,  x_j >= 0 or free,

and brought to standard form by splitting free variables and adding slack,
surplus and artificial columns. Phase one minimizes the sum of artificials;
phase two the original objective. Dantzig pricing is used until a run of
degenerate pivots, then Bland's rule takes over so the method cannot cycle.
The tableau is rebuilt from the original data every ``lp_refactor_every``
pivots to stop roundoff from accumulating.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from src.utils.config import setting
from src.utils.console import log_status
from src.utils.errors import ParameterRangeError

SENSES = ('<=', '>=', '=')

OPTIMAL = 'optimal'
INFEASIBLE = 'infeasible'
UNBOUNDED = 'unbounded'
ITERATION_LIMIT = 'iteration-limit'

_PIVOT_TOLERANCE = 1e-11
_COST_TOLERANCE = 1e-10
_DEGENERATE_RUN = 50
_SINGULAR_SHIFT = 1e-12
_SINGULAR_RESIDUAL = 1e-8


@dataclass
class LinearProgram:
    """minimize objective.x subject to matrix rows with senses and rhs."""
    objective: np.ndarray
    matrix: np.ndarray
    senses: List[str]
    rhs: np.ndarray
    free: np.ndarray = None

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float).reshape(-1)
        n = self.objective.size
        self.matrix = np.asarray(self.matrix, dtype=float).reshape(-1, n)
        self.rhs = np.asarray(self.rhs, dtype=float).reshape(-1)
        self.senses = list(self.senses)
        self.free = (np.zeros(n, dtype=bool) if self.free is None
                     else np.asarray(self.free, dtype=bool).reshape(-1))

        m = self.matrix.shape[0]
        if self.rhs.size != m or len(self.senses) != m:
            raise ParameterRangeError(
                f"Constraint data disagree: {m} rows, {self.rhs.size} right-hand sides, "
                f"{len(self.senses)} senses"
            )
        if self.free.size != n:
            raise ParameterRangeError(f"Expected {n} free flags, got {self.free.size}")
        for sense in self.senses:
            if sense not in SENSES:
                raise ParameterRangeError(f"Unknown constraint sense '{sense}'")
        for name, values in (('objective', self.objective), ('matrix', self.matrix), ('rhs', self.rhs)):
            if not np.all(np.isfinite(values)):
                raise ParameterRangeError(f"Linear program {name} has non-finite entries")

    @property
    def num_variables(self) -> int:
        return self.objective.size

    @property
    def num_constraints(self) -> int:
        return self.matrix.shape[0]

    def violation(self, x: np.ndarray) -> float:
        """Largest constraint or sign violation of x."""
        x = np.asarray(x, dtype=float)
        worst = 0.0
        if self.num_constraints:
            residual = self.matrix @ x - self.rhs
            for sense, r in zip(self.senses, residual):
                if sense == '<=':
                    worst = max(worst, r)
                elif sense == '>=':
                    worst = max(worst, -r)
                else:
                    worst = max(worst, abs(r))
        bounded = ~self.free
        if np.any(bounded):
            worst = max(worst, float(np.max(-x[bounded], initial=0.0)))
        return float(worst)


@dataclass
class LpSolution:
    status: str
    x: np.ndarray
    objective_value: float
    iterations: int
    max_violation: float = 0.0
    basis: List[int] = field(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Working tableau over a standard-form system A x = b, x >= 0."""

    def __init__(self, matrix: np.ndarray, rhs: np.ndarray, basis: List[int], refactor_every: int):
        self.matrix = matrix
        self.rhs = rhs
        self.rows = list(range(matrix.shape[0]))
        self.columns = list(range(matrix.shape[1]))
        self.basis = list(basis)
        self.refactor_every = refactor_every
        self.cost = np.zeros(matrix.shape[1])
        self.body = np.hstack([matrix, rhs[:, None]])
        self.reduced = np.zeros(matrix.shape[1] + 1)
        self.pivots = 0

    def set_cost(self, cost: np.ndarray):
        self.cost = cost
        self._price()

    def _price(self):
        active = self.cost[self.columns]
        basic = np.array([self.cost[j] for j in self.basis])
        self.reduced = np.append(active, 0.0) - basic @ self.body

    def refactor(self):
        basis_matrix = self.matrix[np.ix_(self.rows, self.basis)]
        full = np.hstack([self.matrix[np.ix_(self.rows, self.columns)], self.rhs[self.rows, None]])
        try:
            self.body = np.linalg.solve(basis_matrix, full)
        except np.linalg.LinAlgError:
            body = self._perturbed_solve(basis_matrix, full)
            if body is None:
                log_status('WARNING', "Basis matrix is singular; keeping the updated tableau")
                return
            log_status('WARNING', "Basis matrix is singular; refactored with a perturbed diagonal")
            self.body = body
        self._price()

    @staticmethod
    def _perturbed_solve(basis_matrix: np.ndarray, full: np.ndarray) -> Optional[np.ndarray]:
        """Solve with the diagonal shifted by _SINGULAR_SHIFT; None if the residual is too large."""
        scale = max(1.0, float(np.abs(basis_matrix).max()))
        shifted = basis_matrix + _SINGULAR_SHIFT * scale * np.eye(basis_matrix.shape[0])
        try:
            body = np.linalg.solve(shifted, full)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(body)):
            return None
        residual = float(np.abs(basis_matrix @ body - full).max())
        if residual > _SINGULAR_RESIDUAL * max(1.0, float(np.abs(full).max())):
            return None
        return body

    def pivot(self, row: int, position: int):
        pivot_row = self.body[row] / self.body[row, position]
        self.body -= np.outer(self.body[:, position], pivot_row)
        self.body[row] = pivot_row
        self.reduced -= self.reduced[position] * pivot_row
        self.basis[row] = self.columns[position]
        self.pivots += 1
        if self.pivots % self.refactor_every == 0:
            self.refactor()

    def entering(self, bland: bool) -> Optional[int]:
        candidates = np.flatnonzero(self.reduced[:-1] < -_COST_TOLERANCE)
        if candidates.size == 0:
            return None
        if bland:
            return int(min(candidates, key=lambda p: self.columns[p]))
        return int(candidates[np.argmin(self.reduced[candidates])])

    def leaving(self, position: int, bland: bool) -> Optional[int]:
        column = self.body[:, position]
        rows = np.flatnonzero(column > _PIVOT_TOLERANCE)
        if rows.size == 0:
            return None
        ratios = self.body[rows, -1] / column[rows]
        best = ratios.min()
        tied = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
        if bland or tied.size > 1:
            return int(min(tied, key=lambda r: self.basis[r]))
        return int(tied[0])

    def run(self, iteration_cap: int) -> str:
        degenerate = 0
        while True:
            if self.pivots >= iteration_cap:
                return ITERATION_LIMIT
            bland = degenerate >= _DEGENERATE_RUN
            position = self.entering(bland)
            if position is None:
                return OPTIMAL
            row = self.leaving(position, bland)
            if row is None:
                return UNBOUNDED
            degenerate = degenerate + 1 if self.body[row, -1] <= _PIVOT_TOLERANCE else 0
            self.pivot(row, position)

    def drop_columns(self, drop: set):
        keep = [p for p, column in enumerate(self.columns) if column not in drop]
        self.body = np.hstack([self.body[:, keep], self.body[:, -1:]])
        self.columns = [self.columns[p] for p in keep]
        self._price()

    def drop_row(self, row: int):
        self.body = np.delete(self.body, row, axis=0)
        del self.rows[row]
        del self.basis[row]

    def solution(self) -> np.ndarray:
        x = np.zeros(self.matrix.shape[1])
        for row, column in enumerate(self.basis):
            x[column] = self.body[row, -1]
        return x


def _standard_form(prog: LinearProgram):
    """Return (matrix, rhs, cost, basis, artificial columns, column map) in equality form."""
    m, n = prog.matrix.shape
    free = np.flatnonzero(prog.free)
    split = np.hstack([prog.matrix, -prog.matrix[:, free]])
    cost = np.concatenate([prog.objective, -prog.objective[free]])

    matrix_rows, rhs, senses = [], [], []
    for row, sense, b in zip(split, prog.senses, prog.rhs):
        if b < 0 or (b == 0 and sense == '>='):
            row, b = -row, -b
            sense = {'<=': '>=', '>=': '<=', '=': '='}[sense]
        matrix_rows.append(row)
        rhs.append(b)
        senses.append(sense)

    width = split.shape[1]
    slack_count = sum(1 for s in senses if s != '=')
    artificial_count = sum(1 for s in senses if s != '<=')
    total = width + slack_count + artificial_count
    matrix = np.zeros((m, total))
    basis, artificial = [], set()
    slack, art = width, width + slack_count
    for i, (row, sense) in enumerate(zip(matrix_rows, senses)):
        matrix[i, :width] = row
        if sense == '<=':
            matrix[i, slack] = 1.0
            basis.append(slack)
            slack += 1
        else:
            if sense == '>=':
                matrix[i, slack] = -1.0
                slack += 1
            matrix[i, art] = 1.0
            basis.append(art)
            artificial.add(art)
            art += 1

    full_cost = np.zeros(total)
    full_cost[:width] = cost
    return matrix, np.array(rhs, dtype=float), full_cost, basis, artificial, free


def _recover(prog: LinearProgram, x_standard: np.ndarray, free: np.ndarray) -> np.ndarray:
    n = prog.num_variables
    x = x_standard[:n].copy()
    x[free] -= x_standard[n:n + free.size]
    return x


def lp_solve(prog: LinearProgram, iteration_cap: Optional[int] = None,
             refactor_every: Optional[int] = None) -> LpSolution:
    """
    Solve a linear program with the two-phase dense simplex method.

    Args:
        prog: The program
        iteration_cap: Pivot limit over both phases (defaults to lp_iteration_cap)
        refactor_every: Pivots between tableau rebuilds (defaults to lp_refactor_every)

    Returns:
        LpSolution; status is one of optimal, infeasible, unbounded, iteration-limit
    """
    iteration_cap = int(setting('lp_iteration_cap', iteration_cap))
    refactor_every = int(setting('lp_refactor_every', refactor_every))
    feasibility = float(setting('lp_feasibility_tolerance'))
    n = prog.num_variables

    if prog.num_constraints == 0:
        free_cost = prog.objective[prog.free]
        if np.any(prog.objective[~prog.free] < 0) or np.any(free_cost != 0):
            return LpSolution(UNBOUNDED, np.zeros(n), -np.inf, 0)
        return LpSolution(OPTIMAL, np.zeros(n), 0.0, 0)

    matrix, rhs, cost, basis, artificial, free = _standard_form(prog)
    tableau = _Tableau(matrix, rhs, basis, refactor_every)

    if artificial:
        phase_one = np.zeros(matrix.shape[1])
        phase_one[list(artificial)] = 1.0
        tableau.set_cost(phase_one)
        status = tableau.run(iteration_cap)
        if status == ITERATION_LIMIT:
            x = _recover(prog, tableau.solution(), free)
            return LpSolution(ITERATION_LIMIT, x, float(prog.objective @ x), tableau.pivots)
        tableau.refactor()
        infeasibility = float(tableau.solution()[list(artificial)].sum())
        if infeasibility > feasibility * max(1.0, float(np.abs(rhs).max())):
            x = _recover(prog, tableau.solution(), free)
            return LpSolution(INFEASIBLE, x, float(prog.objective @ x), tableau.pivots)

        # Drive zero-level artificials out of the basis, or drop their redundant rows.
        row = 0
        while row < len(tableau.basis):
            if tableau.basis[row] in artificial:
                candidates = [p for p, column in enumerate(tableau.columns)
                              if column not in artificial and abs(tableau.body[row, p]) > 1e-9]
                if candidates:
                    tableau.pivot(row, candidates[0])
                else:
                    tableau.drop_row(row)
                    continue
            row += 1
        tableau.drop_columns(artificial)

    tableau.set_cost(cost)
    status = tableau.run(iteration_cap)
    tableau.refactor()
    x = _recover(prog, tableau.solution(), free)
    violation = prog.violation(x)
    if status == OPTIMAL and violation > feasibility:
        log_status('WARNING', f"Optimal basis violates constraints by {violation:.3e}")
    return LpSolution(status, x, float(prog.objective @ x), tableau.pivots,
                      max_violation=violation, basis=list(tableau.basis))


def solve_dense(objective: Sequence[float], matrix, senses: Sequence[str], rhs: Sequence[float],
                free=None) -> LpSolution:
    """Convenience wrapper building the LinearProgram."""
    return lp_solve(LinearProgram(np.asarray(objective, dtype=float), matrix, list(senses),
                                  np.asarray(rhs, dtype=float), free))
