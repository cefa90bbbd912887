"""
Moment relaxation Q_k of an orbit-space problem, built for export only:

    min Σ_α p̃_α y_α  s.t.  y_0 = 1,  M_k(y) ⪰ 0,  M_{k-d_j}(g̃_j y) ⪰ 0,  M_{k-m}(J ⋆ y) ⪰ 0,
                           L_y(z^u·r) = 0 for every relation r,

with d_j = ⌈deg g̃_j / 2⌉ and m = ⌈deg J / 2⌉. The block M_{k-m}(J ⋆ y) has rows indexed by
(J row i, monomial u) and entries Σ_γ J_{ij,γ} y_{u+v+γ}.

In SDPA terms y (without y_0) is the primal vector, the c vector carries p̃_α and F_0 is minus
the y_0 part of every block, so the exported data reads: maximize ⟨F_0, Y⟩ s.t. ⟨F_α, Y⟩ = p̃_α.
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Tuple

import numpy as np

from core.errors import PreconditionError
from core.matrices import zeros
from core.polynomial import Exponent, Polynomial, monomials_up_to
from modules.orbit_space.orbit_space_config import QK_NAME
from modules.orbit_space.reformulation import OrbitSpaceProblem
from modules.sdp_reduce.sdp_problem import SDPProblem
from modules.sdp_reduce.sdpa import SdpaData

logger = logging.getLogger("OrbitSpace")


def _half_degree(p: Polynomial) -> int:
    return (max(p.degree, 0) + 1) // 2


def _add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class MomentBlock:
    label: str
    size: int
    # moment index α -> coefficient matrix of y_α in this block
    matrices: Dict[Exponent, np.ndarray]


@dataclass
class MomentRelaxation:
    """
    :param order: Relaxation order k
    :param moments: Moment indices α with |α| ≤ 2k (the first is α = 0, fixed to 1)
    :param blocks: PSD blocks in the order M_k, localizing blocks, J block, relation rows
    :param objective: p̃
    """
    order: int
    moments: List[Exponent]
    blocks: List[MomentBlock]
    objective: Polynomial

    @property
    def block_sizes(self) -> List[int]:
        return [b.size for b in self.blocks]

    @property
    def offset(self):
        """p̃_0, the constant the exported objective leaves out."""
        return self.objective.constant_term()

    def to_sdpa(self, name: str = QK_NAME) -> SdpaData:
        zero = tuple([0] * self.objective.num_vars)

        def coefficient_blocks(alpha: Exponent) -> List[np.ndarray]:
            return [b.matrices.get(alpha, zeros(b.size, b.size)) for b in self.blocks]

        objective = [m * -1 for m in coefficient_blocks(zero)]
        constraints = [(coefficient_blocks(alpha), self.objective.coefficient(alpha))
                       for alpha in self.moments if alpha != zero]
        return SdpaData.from_blocks("max", objective, constraints, name)

    def to_sdp_problem(self) -> SDPProblem:
        return self.to_sdpa().to_sdp_problem()

    def to_json(self) -> dict:
        return {"order": self.order, "moments": len(self.moments), "offset": str(self.offset),
                "blocks": [{"label": b.label, "size": b.size} for b in self.blocks]}


def _localizing_block(label: str, weights: List[List[Polynomial]], basis: List[Exponent]) -> MomentBlock:
    """Rows (i, u), columns (j, v), entries Σ_γ weights[i][j]_γ y_{u+v+γ}."""
    d, b = len(weights), len(basis)
    size = d * b
    matrices: Dict[Exponent, np.ndarray] = {}
    for i in range(d):
        for j in range(d):
            for gamma, coeff in weights[i][j].terms.items():
                for s, u in enumerate(basis):
                    for t, v in enumerate(basis):
                        alpha = _add(_add(u, v), gamma)
                        m = matrices.setdefault(alpha, zeros(size, size))
                        m[i * b + s, j * b + t] += coeff
    return MomentBlock(label, size, matrices)


def _relation_blocks(k: int, relation: Polynomial, index: int) -> List[MomentBlock]:
    """L_y(z^u·r) = 0 as the pair of 1×1 blocks ℓ ≥ 0 and -ℓ ≥ 0."""
    blocks = []
    for u in monomials_up_to(relation.num_vars, 2 * k - max(relation.degree, 0)):
        row: Dict[Exponent, np.ndarray] = {}
        for gamma, coeff in relation.terms.items():
            m = row.setdefault(_add(u, gamma), zeros(1, 1))
            m[0, 0] += coeff
        blocks.append(MomentBlock(f"relation{index}:{u}+", 1, row))
        blocks.append(MomentBlock(f"relation{index}:{u}-", 1, {a: m * -1 for a, m in row.items()}))
    return blocks


def minimum_order(problem: OrbitSpaceProblem) -> int:
    """Smallest k for which every block of Q_k exists."""
    candidates = [_half_degree(problem.objective), _half_degree_matrix(problem)]
    candidates.extend(_half_degree(g) for g in problem.constraints)
    candidates.extend(_half_degree(r) for r in problem.relations)
    return max(candidates + [1])


def _half_degree_matrix(problem: OrbitSpaceProblem) -> int:
    return (max(problem.j.degree, 0) + 1) // 2


def moment_relaxation_qk(problem: OrbitSpaceProblem, k: int) -> MomentRelaxation:
    """
    :param problem: OrbitSpaceProblem
    :param k: Relaxation order
    :return: MomentRelaxation (export with to_sdpa)
    :raises PreconditionError: If k is below minimum_order(problem)
    """
    needed = minimum_order(problem)
    if k < needed:
        raise PreconditionError(f"Relaxation order {k} is too small, need k ≥ {needed}")
    m = problem.num_vars
    one = Polynomial.constant(1, m)
    blocks = [_localizing_block("moment", [[one]], monomials_up_to(m, k))]
    for index, g in enumerate(problem.constraints):
        blocks.append(_localizing_block(f"g{index + 1}", [[g]], monomials_up_to(m, k - _half_degree(g))))
    blocks.append(_localizing_block("J", problem.j.entries, monomials_up_to(m, k - _half_degree_matrix(problem))))
    for index, r in enumerate(problem.relations):
        blocks.extend(_relation_blocks(k, r, index + 1))
    moments = monomials_up_to(m, 2 * k)
    relaxation = MomentRelaxation(k, moments, blocks, problem.objective)
    logger.info(f"Q_{k}: {len(moments) - 1} moment variables, blocks {relaxation.block_sizes} "
                f"(moment matrix {comb(m + k, k)})")
    return relaxation
