"""
Block reduction of invariant SDPs through zonal matrices.

With X_ij = Σ_l ⟨E_l(i, j), M_l⟩ every ⟨A, X⟩ becomes Σ_l ⟨Ã_l, M_l⟩ with
Ã_l = Σ_ij A_ij·E_l(i, j), and X ⪰ 0 becomes M_l ⪰ 0 for every block.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from core.config import Tolerances
from core.core_report import Status
from core.errors import PreconditionError
from core.matrices import as_matrix, frobenius_inner, matrix_to_json
from core.scalars import Scalar, format_scalar, is_exact, to_scalar
from modules.groups.families import ExplicitGroup
from modules.sdp_reduce.sdp_problem import SDPProblem, check_invariance
from modules.sdp_reduce.sdp_reduce_config import DEDUPE_DIGITS
from modules.sdp_reduce.simplex import LPProblem, LPResult, simplex_solve
from modules.symmetry_adapted.zonal import ZonalMatrices, zonal_matrices

logger = logging.getLogger("SdpReduce")

Blocks = List[np.ndarray]


def _row_key(blocks: Blocks, rhs: Scalar) -> tuple:
    """Hashable key of a reduced constraint, scaled so its first nonzero entry is 1."""
    values = [v for b in blocks for v in b.flat] + [rhs]
    pivot = next((v for v in values if v != 0), None)
    if pivot is None:
        return tuple(values)
    if all(is_exact(v) for v in values):
        return tuple(Fraction(v) / pivot for v in values)
    return tuple(round(complex(v).real / complex(pivot).real, DEDUPE_DIGITS) + 0.0 for v in values)


def _is_zero_row(blocks: Blocks) -> bool:
    return all((v == 0) if is_exact(v) else abs(v) <= Tolerances.FLOAT for b in blocks for v in b.flat)


@dataclass
class ReducedSDP:
    """
    One PSD block per isotypic component; block l has size m_l (2m_l for realified pairs
    with more than one copy).
    """
    sense: str
    objective_blocks: Blocks
    constraints: List[Tuple[Blocks, Scalar]]
    zonal: ZonalMatrices = field(repr=False)
    source: SDPProblem = field(repr=False)
    labels: List[str] = field(default_factory=list)

    @property
    def block_sizes(self) -> List[int]:
        return [b.shape[0] for b in self.objective_blocks]

    @property
    def is_lp(self) -> bool:
        return all(size == 1 for size in self.block_sizes)

    def objective_value(self, blocks: Blocks) -> Scalar:
        return sum((frobenius_inner(c, as_matrix(m)) for c, m in zip(self.objective_blocks, blocks)), Fraction(0))

    def reconstruct(self, blocks: Blocks) -> np.ndarray:
        """Original-size matrix X_ij = Σ_l ⟨E_l(i, j), M_l⟩."""
        return self.zonal.reconstruct(blocks)

    def as_lp(self) -> LPProblem:
        """
        The all-1×1 case: block entries are non-negative LP variables.

        :raises PreconditionError: If some block is larger than 1×1
        """
        if not self.is_lp:
            raise PreconditionError(f"Reduced blocks {self.block_sizes} are not all 1×1")
        sign = 1 if self.sense == "max" else -1
        objective = [sign * to_scalar(b[0, 0]) for b in self.objective_blocks]
        rows = [[to_scalar(b[0, 0]) for b in blocks] for blocks, _ in self.constraints]
        return LPProblem(objective, rows, [rhs for _, rhs in self.constraints], list(self.labels))

    def solve_lp(self, tol: float = Tolerances.LP_PIVOT) -> Tuple[LPResult, np.ndarray]:
        """
        Solve the all-1×1 case exactly (or in floats) and map the optimum back.

        :return: (LPResult in the SDP's own sense, reconstructed X or None)
        """
        result = simplex_solve(self.as_lp(), tol)
        if result.status != Status.OPTIMAL:
            return result, None
        if self.sense == "min":
            result.value = -result.value
        blocks = [as_matrix([[v]]) for v in result.solution]
        return result, self.reconstruct(blocks)

    def to_json(self) -> dict:
        return {"sense": self.sense, "block_sizes": self.block_sizes, "labels": self.labels,
                "objective": [matrix_to_json(b) for b in self.objective_blocks],
                "constraints": [{"blocks": [matrix_to_json(b) for b in blocks], "rhs": format_scalar(rhs)}
                                for blocks, rhs in self.constraints]}


def reduce_sdp(sdp: SDPProblem, tol: float = Tolerances.FLOAT) -> ReducedSDP:
    """
    Rewrite an invariant SDP over the commutant blocks.

    Without an attached group the trivial group is used, giving one block of size n.
    Constraints that become identical after reduction are kept once.

    :param sdp: SDPProblem with its group action
    :param tol: Tolerance for the invariance check
    :return: ReducedSDP
    :raises NotInvariantError: If the objective or the constraint set is not invariant
    """
    if sdp.group is None:
        sdp = SDPProblem(sdp.objective, sdp.constraints, sdp.sense, ExplicitGroup.trivial(sdp.dim), sdp.name)
    check_invariance(sdp, tol)
    zonal = zonal_matrices(sdp.group)
    objective = zonal.reduce(sdp.objective)
    constraints, seen = [], set()
    for k, (a, b) in enumerate(sdp.constraints):
        blocks = zonal.reduce(a)
        if _is_zero_row(blocks):
            if b != 0:
                logger.warning(f"{sdp.name}: constraint {k} reduces to 0 = {b}")
            else:
                continue
        key = _row_key(blocks, b)
        if key in seen:
            continue
        seen.add(key)
        constraints.append((blocks, b))
    labels = [blk.label for blk in zonal.blocks]
    reduced = ReducedSDP(sdp.sense, objective, constraints, zonal, sdp, labels)
    logger.info(f"{sdp.name}: {sdp.dim}×{sdp.dim} SDP with {len(sdp.constraints)} constraints -> "
                f"blocks {reduced.block_sizes} with {len(constraints)} constraints")
    return reduced
