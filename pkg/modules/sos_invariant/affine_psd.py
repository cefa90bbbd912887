"""
Feasibility of {A_1 ⪰ 0, ..., A_k ⪰ 0} on an affine slice cut out by linear equations in
the upper-triangular entries of the blocks. Shared by the Gram method and the invariant
block method.

The decision is exact whenever the data is exact:
  * an inconsistent linear system or a diagonal entry forced below zero is infeasible;
  * a unique solution is checked with LDLᵀ;
  * otherwise alternating projections find a numeric point, whose free parameters are
    rounded to rationals and re-verified exactly. A failed search is undecided, never infeasible.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.core_report import Status
from core.errors import DimensionMismatchError, InconsistentSystemError
from core.matrices import exact_solve, ldlt_psd_check, matrix_to_json, zeros
from core.scalars import Scalar, is_exact, to_scalar
from modules.sdp_reduce.sdpa import SdpaData
from modules.sos_invariant.sos_invariant_config import (EPSILON_SCHEDULE, PROJECTION_ITERATIONS, ROUNDING_CAPS,
                                                        SEARCH_TOL)

logger = logging.getLogger("SosInvariant")

Variable = Tuple[int, int, int]


@dataclass
class AffinePsdProblem:
    """
    Variables are the entries (block, u, v), u ≤ v, block after block in row-major order.

    :param block_sizes: Size of every PSD block
    :param rows: One coefficient row per linear equation
    :param rhs: Right-hand sides
    :param block_labels: Names of the blocks (for reasons and logs)
    :param diagonal_names: Optional per-block names of the diagonal positions
    """
    block_sizes: List[int]
    rows: List[List[Scalar]]
    rhs: List[Scalar]
    block_labels: List[str] = field(default_factory=list)
    diagonal_names: List[List[str]] = field(default_factory=list)

    def __post_init__(self):
        self.variables: List[Variable] = [(b, u, v) for b, size in enumerate(self.block_sizes)
                                          for u in range(size) for v in range(u, size)]
        self._index = {var: k for k, var in enumerate(self.variables)}
        if any(len(row) != len(self.variables) for row in self.rows):
            raise DimensionMismatchError(f"Every row needs {len(self.variables)} coefficients")
        if len(self.rows) != len(self.rhs):
            raise DimensionMismatchError(f"{len(self.rows)} rows but {len(self.rhs)} right-hand sides")
        if not self.block_labels:
            self.block_labels = [f"block{b}" for b in range(len(self.block_sizes))]

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self.rhs) and all(is_exact(v) for row in self.rows for v in row)

    def index(self, block: int, u: int, v: int) -> int:
        return self._index[(block, min(u, v), max(u, v))]

    def describe_diagonal(self, block: int, u: int) -> str:
        if self.diagonal_names and self.diagonal_names[block]:
            return f"{self.block_labels[block]} diagonal entry at {self.diagonal_names[block][u]}"
        return f"{self.block_labels[block]} diagonal entry {u}"

    def to_sdpa(self, name: str = "sos") -> SdpaData:
        """
        Feasibility SDP with zero objective; the coefficient c of an off-diagonal entry becomes c/2
        on both symmetric positions of the constraint matrix.
        """
        objective = [zeros(s, s) for s in self.block_sizes]
        constraints = []
        for row, rhs in zip(self.rows, self.rhs):
            blocks = [zeros(s, s) for s in self.block_sizes]
            for (b, u, v), c in zip(self.variables, row):
                if u == v:
                    blocks[b][u, u] = to_scalar(c)
                else:
                    blocks[b][u, v] = blocks[b][v, u] = to_scalar(c) / 2
            constraints.append((blocks, rhs))
        return SdpaData.from_blocks("max", objective, constraints, name)

    def assemble(self, x: Sequence) -> List[np.ndarray]:
        """Symmetric blocks from a variable vector (exact object arrays for exact values)."""
        exact = all(is_exact(v) for v in x)
        blocks = [zeros(s, s) if exact else np.zeros((s, s)) for s in self.block_sizes]
        for (b, u, v), value in zip(self.variables, x):
            blocks[b][u, v] = value if exact else float(value)
            blocks[b][v, u] = blocks[b][u, v]
        return blocks


@dataclass
class PsdSearchResult:
    status: Status
    blocks: Optional[List[np.ndarray]] = None
    reason: Optional[str] = None
    dof: int = 0
    iterations: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == Status.FEASIBLE

    def to_json(self) -> dict:
        return {"status": self.status.value, "reason": self.reason, "dof": self.dof, "iterations": self.iterations,
                "blocks": None if self.blocks is None else [matrix_to_json(b) for b in self.blocks]}


def _psd_project(m: np.ndarray, floor: float) -> np.ndarray:
    values, vectors = np.linalg.eigh(m)
    return (vectors * np.maximum(values, floor)) @ vectors.T


def _min_eigenvalue(blocks: List[np.ndarray]) -> float:
    return min((float(np.linalg.eigvalsh(b)[0]) for b in blocks if b.size), default=0.0)


def _float_solve(problem: AffinePsdProblem, tol: float) -> Tuple[np.ndarray, np.ndarray]:
    a = np.array([[float(v) for v in row] for row in problem.rows]).reshape(len(problem.rows), problem.num_vars)
    b = np.array([float(v) for v in problem.rhs])
    if a.shape[0] == 0:
        return np.zeros(problem.num_vars), np.eye(problem.num_vars)
    particular, *_ = np.linalg.lstsq(a, b, rcond=None)
    if np.max(np.abs(a @ particular - b), initial=0.0) > max(tol, 1e-9) * max(1.0, np.max(np.abs(b), initial=0.0)):
        raise InconsistentSystemError("Linear identification is inconsistent")
    _, s, vt = np.linalg.svd(a)
    rank = int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
    return particular, vt[rank:].T


def _forced_reason(problem: AffinePsdProblem, particular: Sequence, null: np.ndarray, tol: float) -> Optional[str]:
    """A diagonal entry fixed below zero, or fixed at zero while its row carries a fixed nonzero."""
    fixed = [bool(np.all(np.abs(null[k]) <= tol)) if null.size else True for k in range(problem.num_vars)]
    for b, size in enumerate(problem.block_sizes):
        for u in range(size):
            k = problem.index(b, u, u)
            if not fixed[k]:
                continue
            value = particular[k]
            if value < -tol:
                return f"{problem.describe_diagonal(b, u)} forced to {_format_value(value)} < 0"
            if abs(value) <= tol:
                for v in range(size):
                    j = problem.index(b, u, v)
                    if v != u and fixed[j] and abs(particular[j]) > tol:
                        return (f"{problem.describe_diagonal(b, u)} forced to 0 while entry ({u}, {v}) "
                                f"is forced to {_format_value(particular[j])}")
    return None


def _format_value(v) -> str:
    v = to_scalar(v)
    return str(v) if is_exact(v) else f"{float(v):.6g}"


def _check_unique(problem: AffinePsdProblem, x: Sequence, tol: float) -> PsdSearchResult:
    blocks = problem.assemble(x)
    for b, block in enumerate(blocks):
        check = ldlt_psd_check(block, None if problem.is_exact else tol)
        if not check.psd:
            witness = ", ".join(_format_value(v) for v in check.witness)
            return PsdSearchResult(Status.INFEASIBLE, reason=(
                f"{problem.block_labels[b]} is determined uniquely and is not PSD: witness ({witness}) "
                f"gives {_format_value(check.witness_value)}"))
    return PsdSearchResult(Status.FEASIBLE, blocks)


def _round_parameters(problem: AffinePsdProblem, particular: List[Fraction], null_exact: List[np.ndarray],
                      t: np.ndarray) -> Optional[List[np.ndarray]]:
    for cap in ROUNDING_CAPS:
        rounded = [Fraction(float(v)).limit_denominator(cap) for v in t]
        x = list(particular)
        for coeff, vector in zip(rounded, null_exact):
            if coeff != 0:
                x = [a + coeff * b for a, b in zip(x, vector)]
        blocks = problem.assemble(x)
        if all(ldlt_psd_check(b).psd for b in blocks):
            logger.debug(f"Rounded Gram parameters verified with denominator cap {cap}")
            return blocks
    return None


def solve_affine_psd(problem: AffinePsdProblem, tol: float = SEARCH_TOL,
                     iterations: int = PROJECTION_ITERATIONS) -> PsdSearchResult:
    """
    Decide whether the affine slice meets the product of PSD cones.

    :param problem: AffinePsdProblem
    :param tol: Float tolerance for numeric steps
    :param iterations: Total alternating-projection budget
    :return: PsdSearchResult with status feasible, infeasible or undecided
    """
    exact = problem.is_exact
    try:
        if exact:
            particular, null_exact = exact_solve(problem.rows, problem.rhs) if problem.num_vars else ([], [])
            particular = [to_scalar(v) for v in particular]
            null = (np.array([[float(v) for v in vec] for vec in null_exact]).T if null_exact
                    else np.zeros((problem.num_vars, 0)))
        else:
            particular, null = _float_solve(problem, tol)
            null_exact = []
    except InconsistentSystemError:
        return PsdSearchResult(Status.INFEASIBLE, reason="linear identification is inconsistent")
    dof = null.shape[1]

    reason = _forced_reason(problem, particular, null, 0 if exact else tol)
    if reason:
        logger.info(f"Infeasible: {reason}")
        return PsdSearchResult(Status.INFEASIBLE, reason=reason, dof=dof)
    if dof == 0:
        result = _check_unique(problem, particular, tol)
        result.dof = 0
        return result

    base = np.array([float(v) for v in particular])
    weights = np.array([1.0 if u == v else 2.0 for _, u, v in problem.variables])
    root = np.sqrt(weights)
    solver = np.linalg.pinv(root[:, None] * null)
    t = np.zeros(dof)
    budget = max(1, iterations // len(EPSILON_SCHEDULE))
    used = 0
    for floor in EPSILON_SCHEDULE:
        for _ in range(budget):
            blocks = problem.assemble(base + null @ t)
            if _min_eigenvalue(blocks) >= (floor / 2 if floor else -tol):
                break
            used += 1
            projected = [_psd_project(b, floor) for b in blocks]
            y = np.array([projected[b][u, v] for b, u, v in problem.variables])
            t = solver @ (root * (y - base))
        blocks = problem.assemble(base + null @ t)
        if _min_eigenvalue(blocks) < -tol:
            continue
        if not exact:
            return PsdSearchResult(Status.FEASIBLE, blocks, dof=dof, iterations=used)
        verified = _round_parameters(problem, particular, null_exact, t)
        if verified is not None:
            return PsdSearchResult(Status.FEASIBLE, verified, dof=dof, iterations=used)
    logger.warning(f"No verified PSD point after {used} projections ({dof} free parameters): undecided")
    return PsdSearchResult(Status.UNDECIDED, reason=f"no PSD point found after {used} projections",
                           dof=dof, iterations=used)
