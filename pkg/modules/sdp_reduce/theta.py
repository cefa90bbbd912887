"""
Lovász θ models: the SDP over B ⪰ 0 with trace 1 and B_ij = 0 on edges, its cyclic LP
reduction, the closed form for cycles and a brute-force independence number for the
sandwich α ≤ θ.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from core.core_report import Status
from core.errors import PreconditionError, UnsupportedError
from core.matrices import identity, zeros
from core.scalars import Scalar, cos_2pi
from modules.groups.families import CyclicGroup
from modules.sdp_reduce.reduction import ReducedSDP, reduce_sdp
from modules.sdp_reduce.sdp_problem import SDPProblem
from modules.sdp_reduce.sdp_reduce_config import MAX_INDEPENDENCE_VERTICES
from modules.sdp_reduce.simplex import LPProblem, LPResult

logger = logging.getLogger("SdpReduce")

Edge = Tuple[int, int]


def _edge_set(edges: Iterable[Sequence[int]], n: int) -> Set[FrozenSet[int]]:
    """
    :raises PreconditionError: On self-loops or vertices outside 0..n-1
    """
    out = set()
    for edge in edges:
        i, j = (int(v) for v in edge)
        if i == j:
            raise PreconditionError(f"Self-loop at vertex {i}: θ needs a simple graph")
        if not (0 <= i < n and 0 <= j < n):
            raise PreconditionError(f"Edge ({i}, {j}) leaves the vertex range 0..{n - 1}")
        out.add(frozenset((i, j)))
    return out


def _is_circulant(edges: Set[FrozenSet[int]], n: int) -> bool:
    return all(frozenset(((i + 1) % n, (j + 1) % n)) in edges for i, j in (tuple(e) for e in edges))


def cycle_edges(n: int) -> List[Edge]:
    """Edges {i, i+1 mod n} of the cycle Cₙ."""
    if n < 3:
        raise PreconditionError(f"A cycle needs at least 3 vertices, got {n}")
    return [(i, (i + 1) % n) for i in range(n)]


def theta_sdp(edges: Iterable[Sequence[int]], n: int) -> SDPProblem:
    """
    max ⟨J, B⟩ subject to trace B = 1, B_ij = 0 for every edge, B ⪰ 0.

    The cyclic shift action is attached when the edge set is invariant under i ↦ i+1.

    :param edges: Vertex pairs, 0-based
    :param n: Vertex count
    :return: SDPProblem named "theta"
    :raises PreconditionError: On self-loops or out-of-range vertices
    """
    if n < 1:
        raise PreconditionError(f"θ needs at least one vertex, got {n}")
    edge_set = _edge_set(edges, n)
    objective = np.full((n, n), Fraction(1), dtype=object)
    constraints = [(identity(n), Fraction(1))]
    for i, j in sorted(tuple(sorted(e)) for e in edge_set):
        a = zeros(n, n)
        a[i, j] = a[j, i] = Fraction(1, 2)
        constraints.append((a, Fraction(0)))
    group = CyclicGroup(n) if n > 1 and _is_circulant(edge_set, n) else None
    logger.debug(f"θ model on {n} vertices, {len(edge_set)} edges, "
                 f"{'cyclic action attached' if group else 'no action'}")
    return SDPProblem(objective, constraints, "max", group, "theta")


def theta_cyclic_lp(n: int) -> LPProblem:
    """
    max n·x₀ subject to Σ_j x_j = 1, Σ_j x_j·cos(2πj/n) = 0, x ≥ 0, for j = 0..⌊n/2⌋.

    :raises PreconditionError: For n < 3
    """
    if n < 3:
        raise PreconditionError(f"The cyclic θ LP needs n ≥ 3, got {n}")
    width = n // 2 + 1
    objective = [Fraction(n)] + [Fraction(0)] * (width - 1)
    rows = [[Fraction(1)] * width, [cos_2pi(j, n) for j in range(width)]]
    return LPProblem(objective, rows, [Fraction(1), Fraction(0)], [f"x{j}" for j in range(width)])


def theta_closed_form(n: int) -> Scalar:
    """θ(Cₙ): n/2 for even n, n·cos(π/n)/(1 + cos(π/n)) for odd n."""
    if n < 3:
        raise PreconditionError(f"θ(C_n) needs n ≥ 3, got {n}")
    if n % 2 == 0:
        return Fraction(n, 2)
    c = math.cos(math.pi / n)
    return n * c / (1 + c)


def independence_number(edges: Iterable[Sequence[int]], n: int) -> int:
    """
    α(G) by branching on a vertex of maximum degree.

    :raises PreconditionError: Above MAX_INDEPENDENCE_VERTICES vertices
    """
    if n > MAX_INDEPENDENCE_VERTICES:
        raise PreconditionError(f"Brute-force α is capped at {MAX_INDEPENDENCE_VERTICES} vertices, got {n}")
    adjacency = {v: set() for v in range(n)}
    for e in _edge_set(edges, n):
        i, j = tuple(e)
        adjacency[i].add(j)
        adjacency[j].add(i)

    def alpha(vertices: FrozenSet[int]) -> int:
        if not vertices:
            return 0
        v = max(vertices, key=lambda u: (len(adjacency[u] & vertices), -u))
        if not adjacency[v] & vertices:
            # no edges left
            return len(vertices)
        without = alpha(vertices - {v})
        with_v = 1 + alpha(vertices - {v} - adjacency[v])
        return max(without, with_v)

    return alpha(frozenset(range(n)))


@dataclass
class ThetaSolution:
    status: Status
    value: Optional[Scalar]
    lp: LPResult
    reduced: ReducedSDP = field(repr=False)
    matrix: Optional[np.ndarray] = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {"status": self.status.value, "value": self.value, "block_sizes": self.reduced.block_sizes,
                "lp": self.lp.to_json()}


def solve_theta(edges: Iterable[Sequence[int]], n: int) -> ThetaSolution:
    """
    Build the θ model, reduce it and solve the resulting LP.

    :raises UnsupportedError: When the reduction leaves a block larger than 1×1
    """
    sdp = theta_sdp(edges, n)
    reduced = reduce_sdp(sdp)
    if not reduced.is_lp:
        raise UnsupportedError(f"θ model reduces to blocks {reduced.block_sizes}; only all-1×1 reductions are "
                               f"solved, export the problem to SDPA instead")
    result, x = reduced.solve_lp()
    logger.info(f"θ on {n} vertices: {result.status.value}, value {result.value}")
    return ThetaSolution(result.status, result.value, result, reduced, x)
