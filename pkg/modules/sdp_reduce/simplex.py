"""
Two-phase tableau simplex with Bland's rule for

    maximize cᵀx  subject to  A·x = b,  x ≥ 0.

Exact Fraction arithmetic when every datum is exact, floats with a pivot tolerance otherwise.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from core.config import Tolerances
from core.core_report import Status
from core.errors import DimensionMismatchError
from core.scalars import Scalar, format_scalar, is_exact, to_scalar

logger = logging.getLogger("SdpReduce")


@dataclass
class LPProblem:
    """
    Standard-form LP; every variable is non-negative.
    """
    objective: List[Scalar]
    rows: List[List[Scalar]]
    rhs: List[Scalar]
    names: List[str] = field(default_factory=list)

    def __post_init__(self):
        self.objective = [to_scalar(v) for v in self.objective]
        self.rows = [[to_scalar(v) for v in row] for row in self.rows]
        self.rhs = [to_scalar(v) for v in self.rhs]
        width = len(self.objective)
        if any(len(row) != width for row in self.rows):
            raise DimensionMismatchError(f"Every LP row needs {width} entries")
        if len(self.rows) != len(self.rhs):
            raise DimensionMismatchError(f"{len(self.rows)} rows but {len(self.rhs)} right-hand sides")
        if not self.names:
            self.names = [f"x{j}" for j in range(width)]

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self.objective + self.rhs) and \
            all(is_exact(v) for row in self.rows for v in row)

    def value(self, x: Sequence[Scalar]) -> Scalar:
        return sum((c * v for c, v in zip(self.objective, x)), Fraction(0))

    def to_json(self) -> dict:
        return {"names": self.names, "objective": [format_scalar(v) for v in self.objective],
                "rows": [[format_scalar(v) for v in row] for row in self.rows],
                "rhs": [format_scalar(v) for v in self.rhs]}


@dataclass
class LPResult:
    status: Status
    value: Optional[Scalar] = None
    solution: Optional[List[Scalar]] = None
    iterations: int = 0

    def to_json(self) -> dict:
        return {"status": self.status.value,
                "value": None if self.value is None else format_scalar(self.value),
                "solution": None if self.solution is None else [format_scalar(v) for v in self.solution],
                "iterations": self.iterations}


class _Tableau:
    """Rows [a_1 .. a_k | rhs] kept in canonical form for the current basis."""

    def __init__(self, rows: List[List[Scalar]], basis: List[int], exact: bool, tol: float):
        self.rows = rows
        self.basis = basis
        self.exact = exact
        self.tol = 0 if exact else tol
        self.iterations = 0

    def positive(self, v) -> bool:
        return v > self.tol

    def pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        p = row[j]
        self.rows[r] = row = [v / p for v in row]
        for i, other in enumerate(self.rows):
            if i != r and other[j] != 0:
                factor = other[j]
                self.rows[i] = [a - factor * b for a, b in zip(other, row)]
        self.basis[r] = j
        self.iterations += 1

    def reduced_costs(self, costs: List[Scalar], columns: int) -> List[Scalar]:
        out = []
        for j in range(columns):
            total = costs[j]
            for i, b in enumerate(self.basis):
                if costs[b] != 0 and self.rows[i][j] != 0:
                    total = total - costs[b] * self.rows[i][j]
            out.append(total)
        return out

    def run(self, costs: List[Scalar], columns: int) -> Status:
        """
        Maximize over the first `columns` columns with Bland's rule.

        :return: Status.OPTIMAL or Status.UNBOUNDED
        """
        while True:
            reduced = self.reduced_costs(costs, columns)
            entering = next((j for j in range(columns) if j not in self.basis and self.positive(reduced[j])), None)
            if entering is None:
                return Status.OPTIMAL
            best, leaving = None, None
            for i, row in enumerate(self.rows):
                if self.positive(row[entering]):
                    ratio = row[-1] / row[entering]
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leaving]):
                        best, leaving = ratio, i
            if leaving is None:
                return Status.UNBOUNDED
            self.pivot(leaving, entering)


def simplex_solve(lp: LPProblem, tol: float = Tolerances.LP_PIVOT) -> LPResult:
    """
    Solve a standard-form LP.

    :param lp: LPProblem
    :param tol: Pivot and feasibility tolerance for float data
    :return: LPResult with status optimal, infeasible or unbounded
    """
    exact = lp.is_exact
    zero = Fraction(0) if exact else 0.0
    m, n = len(lp.rows), lp.num_vars

    def cast(v):
        return v if exact else float(v)

    rows = []
    for row, b in zip(lp.rows, lp.rhs):
        sign = -1 if b < 0 else 1
        rows.append([cast(sign * v) for v in row] + [zero] * m + [cast(sign * b)])
    for i in range(m):
        rows[i][n + i] = cast(Fraction(1))
    tableau = _Tableau(rows, [n + i for i in range(m)], exact, tol)

    # phase 1: maximize -Σ artificials
    phase_one = [zero] * n + [cast(Fraction(-1))] * m
    tableau.run(phase_one, n + m)
    infeasibility = sum((r[-1] for i, r in enumerate(tableau.rows) if tableau.basis[i] >= n), zero)
    if infeasibility > (0 if exact else max(tol, Tolerances.FLOAT)):
        logger.debug(f"LP infeasible, phase-one residual {infeasibility}")
        return LPResult(Status.INFEASIBLE, iterations=tableau.iterations)

    # drive zero-level artificials out of the basis; rows without a real pivot are redundant
    keep = []
    for i in range(len(tableau.rows)):
        if tableau.basis[i] >= n:
            column = next((j for j in range(n) if abs(tableau.rows[i][j]) > tableau.tol), None)
            if column is None:
                continue
            tableau.pivot(i, column)
        keep.append(i)
    tableau.rows = [[v for v in tableau.rows[i][:n]] + [tableau.rows[i][-1]] for i in keep]
    tableau.basis = [tableau.basis[i] for i in keep]

    costs = [cast(v) for v in lp.objective]
    status = tableau.run(costs, n)
    if status == Status.UNBOUNDED:
        return LPResult(Status.UNBOUNDED, iterations=tableau.iterations)
    solution = [zero] * n
    for i, b in enumerate(tableau.basis):
        solution[b] = tableau.rows[i][-1]
    value = sum((c * v for c, v in zip(costs, solution)), zero)
    logger.debug(f"LP optimal after {tableau.iterations} pivots: {value}")
    return LPResult(Status.OPTIMAL, value, solution, tableau.iterations)
