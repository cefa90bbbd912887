"""
Degree principle for Sₙ-invariant problems: with r = max(2, ⌊deg f/2⌋, deg g₁, ..., deg g_m),
min {f(x) : g(x) ≥ 0} is attained (when attained at all) at a point with at most r distinct
coordinates. Every orbit type λ = (ℓ₁ ≥ ... ≥ ℓ_k), k ≤ r, turns the problem into one in k
variables T_j, each repeated ℓ_j times.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.desk_search import DeskMinimizer
from core.errors import DimensionMismatchError, NotInvariantError, PreconditionError
from core.polynomial import Polynomial
from modules.groups.families import SymmetricGroup
from modules.groups.polynomial_action import is_invariant
from modules.groups.tableaux import Partition
from modules.degree_principle.degree_principle_config import (DEFAULT_BOX, DEFAULT_WORKERS, GRID_POINTS, MODES,
                                                              SEARCH_TOL, WITNESS_TOL)

logger = logging.getLogger("DegreePrinciple")


def _check_symmetric(f: Polynomial, label: str) -> None:
    if f.num_vars and not is_invariant(SymmetricGroup(f.num_vars), f):
        raise NotInvariantError(f"{label} = {f.format()} is not symmetric", item=label)


def compute_r(f: Polynomial, constraints: Sequence[Polynomial] = ()) -> int:
    """
    :raises NotInvariantError: If f or a constraint is not symmetric
    """
    _check_symmetric(f, "f")
    for k, g in enumerate(constraints):
        if g.num_vars != f.num_vars:
            raise DimensionMismatchError(f"g{k + 1} has {g.num_vars} variables, f has {f.num_vars}")
        _check_symmetric(g, f"g{k + 1}")
    return max([2, f.degree // 2] + [g.degree for g in constraints])


def _partitions(n: int, parts: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    if parts == 0:
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, parts - 1, first):
            yield (first,) + rest


def enumerate_partitions(n: int, r: int, mode: str = "at-most") -> List[Partition]:
    """
    Partitions of n into at most r parts ("at-most") or exactly r parts ("exact"),
    largest first part first.

    :raises PreconditionError: Unless 1 ≤ r ≤ n
    """
    if not 1 <= r <= n:
        raise PreconditionError(f"Need 1 ≤ r ≤ n, got r = {r}, n = {n}")
    if mode not in MODES:
        raise PreconditionError(f"Unknown mode {mode!r}, expected one of {MODES}")
    found = list(_partitions(n, r, n))
    if mode == "exact":
        found = [p for p in found if len(p) == r]
    return found


@dataclass
class SubProblem:
    """
    :param partition: Orbit type λ
    :param objective: f^λ in T₁..T_k
    :param constraints: g_j^λ in T₁..T_k
    """
    partition: Partition
    objective: Polynomial
    constraints: List[Polynomial] = field(default_factory=list)

    @property
    def num_vars(self) -> int:
        return len(self.partition)

    def lift(self, t: Sequence) -> List:
        """x with t_j repeated λ_j times."""
        return [v for v, size in zip(t, self.partition) for _ in range(size)]

    def to_json(self) -> dict:
        return {"partition": list(self.partition), "objective": self.objective.format(prefix="T"),
                "constraints": [g.format(prefix="T") for g in self.constraints]}


def substitute_partition(f: Polynomial, partition: Sequence[int],
                         constraints: Sequence[Polynomial] = ()) -> SubProblem:
    """
    Replace the first λ₁ variables by T₁, the next λ₂ by T₂, and so on.

    :raises PreconditionError: If λ is not a partition of the number of variables
    """
    partition = tuple(int(p) for p in partition)
    if any(p <= 0 for p in partition) or sum(partition) != f.num_vars:
        raise PreconditionError(f"{partition} is not a partition of {f.num_vars} into positive parts")
    if list(partition) != sorted(partition, reverse=True):
        raise PreconditionError(f"{partition} is not non-increasing")
    ts = Polynomial.variables(len(partition))
    images = [ts[j] for j, size in enumerate(partition) for _ in range(size)]
    return SubProblem(partition, f.substitute(images), [g.substitute(images) for g in constraints])


@dataclass
class SubResult:
    partition: Partition
    value: float
    t: Optional[List[float]]
    boundary_hit: bool = False
    unbounded: bool = False

    def to_json(self) -> dict:
        return {"partition": list(self.partition), "value": self.value, "t": self.t,
                "boundary_hit": self.boundary_hit, "unbounded": self.unbounded}


def minimize_subproblem(sub: SubProblem, box: float = DEFAULT_BOX, tol: float = SEARCH_TOL) -> SubResult:
    feasible = None
    if sub.constraints:
        def feasible(points: np.ndarray) -> np.ndarray:
            mask = np.ones(points.shape[0], dtype=bool)
            for g in sub.constraints:
                mask &= np.real(g.evaluate_many(points)) >= -tol
            return mask

    search = DeskMinimizer(sub.objective.evaluate_many, feasible, points=GRID_POINTS, tol=tol)
    found = search.minimize([-box] * sub.num_vars, [box] * sub.num_vars)
    t = None if found.point is None else [float(v) for v in found.point]
    logger.debug(f"λ = {sub.partition}: {found.value:.10g} after {found.evaluations} evaluations")
    return SubResult(sub.partition, found.value, t, found.boundary_hit, found.unbounded)


@dataclass
class DegreeMinimum:
    """
    :param value: Smallest subproblem minimum
    :param partition: Orbit type attaining it
    :param point: Reconstructed n-vector
    :param r: Number of distinct coordinates the search allowed
    :param subresults: Every subproblem outcome
    """
    value: float
    partition: Optional[Partition]
    point: Optional[List[float]]
    r: int
    subresults: List[SubResult] = field(default_factory=list)

    @property
    def unbounded(self) -> bool:
        return any(s.unbounded for s in self.subresults)

    @property
    def boundary_hit(self) -> bool:
        best = next((s for s in self.subresults if s.partition == self.partition), None)
        return bool(best and best.boundary_hit)

    def to_json(self) -> dict:
        return {"value": self.value, "partition": None if self.partition is None else list(self.partition),
                "point": self.point, "r": self.r, "unbounded": self.unbounded, "boundary_hit": self.boundary_hit,
                "subproblems": [s.to_json() for s in self.subresults]}


def _best(results: List[SubResult], tol: float = SEARCH_TOL) -> Optional[SubResult]:
    """
    Smallest value, ties broken by the lexicographically smaller partition.
    Values are compared on a grid of step tol, so minima that differ by search noise count as ties.
    """
    candidates = [s for s in results if s.t is not None]

    def key(s: SubResult):
        level = round(s.value / tol) if math.isfinite(s.value) else s.value
        return level, s.partition

    return min(candidates, key=key, default=None)


def minimize_all(f: Polynomial, constraints: Sequence[Polynomial] = (), box: float = DEFAULT_BOX,
                 mode: str = "at-most", tol: float = SEARCH_TOL, workers: int = DEFAULT_WORKERS) -> DegreeMinimum:
    """
    Minimize a symmetric problem through its orbit-type subproblems.

    :param f: Symmetric objective
    :param constraints: Symmetric g_j, read as g_j ≥ 0
    :param box: Search box half-width for every T_j
    :param mode: Partition enumeration mode
    :param tol: Coordinate-descent tolerance
    :param workers: Subproblems minimized concurrently
    :return: DegreeMinimum
    :raises NotInvariantError: If an input is not symmetric
    :raises PreconditionError: If the reconstructed witness does not reproduce its value
    """
    constraints = list(constraints)
    n = f.num_vars
    r = min(compute_r(f, constraints), n)
    subproblems = [substitute_partition(f, lam, constraints) for lam in enumerate_partitions(n, r, mode)]
    logger.info(f"n = {n}, r = {r}: {len(subproblems)} subproblems")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda sub: minimize_subproblem(sub, box, tol), subproblems))
    else:
        results = [minimize_subproblem(sub, box, tol) for sub in subproblems]

    best = _best(results, tol)
    if best is None:
        logger.warning("No feasible point in any subproblem")
        return DegreeMinimum(float("inf"), None, None, r, results)
    sub = next(s for s in subproblems if s.partition == best.partition)
    point = sub.lift(best.t)
    check = float(np.real(f.evaluate_many(np.array([point]))[0]))
    if abs(check - best.value) > WITNESS_TOL * max(1.0, abs(best.value)):
        raise PreconditionError(f"Witness for {best.partition} evaluates to {check}, not {best.value}")
    if best.boundary_hit:
        logger.warning(f"Minimum {best.value:.6g} at λ = {best.partition} touches the search box ±{box:g}")
    logger.info(f"Minimum {best.value:.10g} at λ = {best.partition}")
    return DegreeMinimum(best.value, best.partition, point, r, results)


def sos_bounds(f: Polynomial) -> Dict[Partition, Tuple]:
    """
    Certified lower bound of every unconstrained subproblem through the Gram bisection; the smallest
    bound is a lower bound of f.
    """
    from modules.sos_invariant.gram import sos_lower_bound

    n = f.num_vars
    r = min(compute_r(f), n)
    bounds = {}
    for lam in enumerate_partitions(n, r):
        sub = substitute_partition(f, lam)
        bound = sos_lower_bound(sub.objective)
        bounds[lam] = (bound.value, bound.certificate)
        logger.debug(f"λ = {lam}: SOS bound {bound.value}")
    return bounds
