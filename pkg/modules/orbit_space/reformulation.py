"""
Invariant polynomial optimization rewritten on the orbit space:

    inf f(x) s.t. g(x) ≥ 0   =   inf p̃(z) s.t. g̃(z) ≥ 0, J(z) ⪰ 0, relations(z) = 0,

with p̃(Π(x)) = f and g̃(Π(x)) = g.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from core.desk_search import DeskMinimizer
from core.errors import DimensionMismatchError, NotInvariantError, UnsupportedError
from core.matrices import ldlt_psd_check, min_eigenvalues
from core.matrix_polynomial import MatrixPolynomial
from core.polynomial import Polynomial
from modules.groups.polynomial_action import is_invariant
from modules.invariant_ring.symmetric_functions import rewrite_in_invariants
from modules.orbit_space.hilbert_map import HilbertMap, j_matrix
from modules.orbit_space.orbit_space_config import (DEFAULT_BOX, FEASIBILITY_TOL, GENERATOR_PREFIX, SAMPLE_BOUND,
                                                    SAMPLE_COUNT, SAMPLE_DENOMINATOR, SAMPLE_SEED, SEARCH_TOL)

logger = logging.getLogger("OrbitSpace")


@dataclass
class OrbitSpaceProblem:
    """
    :param objective: p̃ in z₁..z_m
    :param constraints: g̃_j in z₁..z_m, read as g̃_j ≥ 0
    :param j: J-matrix, read as J ⪰ 0
    :param hilbert: Hilbert map the problem was built from
    :param source_objective: f in x
    :param source_constraints: g_j in x
    """
    objective: Polynomial
    constraints: List[Polynomial]
    j: MatrixPolynomial
    hilbert: HilbertMap
    source_objective: Polynomial
    source_constraints: List[Polynomial] = field(default_factory=list)

    @property
    def relations(self) -> List[Polynomial]:
        return self.hilbert.relations

    @property
    def num_vars(self) -> int:
        return self.hilbert.size

    def to_json(self) -> dict:
        return {"objective": self.objective.format(prefix=GENERATOR_PREFIX),
                "constraints": [g.format(prefix=GENERATOR_PREFIX) for g in self.constraints],
                "J": self.j.format(prefix=GENERATOR_PREFIX),
                "relations": [r.format(prefix=GENERATOR_PREFIX) for r in self.relations],
                "hilbert_map": self.hilbert.to_json(),
                "objective_json": self.objective.to_json()}


def _check_input(hilbert: HilbertMap, f: Polynomial, label: str) -> None:
    if f.num_vars != hilbert.num_vars:
        raise DimensionMismatchError(f"{label} has {f.num_vars} variables, the Hilbert map {hilbert.num_vars}")
    if hilbert.group is not None and not is_invariant(hilbert.group, f):
        raise NotInvariantError(f"{label} = {f.format()} is not invariant under {hilbert.group.name}", item=label)


def reformulate(hilbert: HilbertMap, objective: Polynomial,
                constraints: Sequence[Polynomial] = ()) -> OrbitSpaceProblem:
    """
    :param hilbert: HilbertMap
    :param objective: Invariant f
    :param constraints: Invariant g_j (read as g_j ≥ 0)
    :return: OrbitSpaceProblem
    :raises NotInvariantError: If an input is not invariant under the map's group
    :raises RewriteError: If an input is not in the algebra generated by the map
    """
    constraints = list(constraints)
    _check_input(hilbert, objective, "f")
    for k, g in enumerate(constraints):
        _check_input(hilbert, g, f"g{k + 1}")
    p = rewrite_in_invariants(objective, hilbert.basis)
    gs = [rewrite_in_invariants(g, hilbert.basis) for g in constraints]
    problem = OrbitSpaceProblem(p, gs, j_matrix(hilbert), hilbert, objective, constraints)
    logger.info(f"Orbit-space problem: objective {p.format(prefix=GENERATOR_PREFIX)}, "
                f"{len(gs)} constraints, {len(hilbert.relations)} relations")
    return problem


@dataclass
class SampleCheck:
    count: int
    psd_failures: int = 0
    objective_mismatches: int = 0
    constraint_mismatches: int = 0
    relation_failures: int = 0

    @property
    def ok(self) -> bool:
        return not (self.psd_failures or self.objective_mismatches or self.constraint_mismatches
                    or self.relation_failures)

    def to_json(self) -> dict:
        return {"count": self.count, "ok": self.ok, "psd_failures": self.psd_failures,
                "objective_mismatches": self.objective_mismatches,
                "constraint_mismatches": self.constraint_mismatches, "relation_failures": self.relation_failures}


def random_rational_point(rng: random.Random, n: int, bound: int = SAMPLE_BOUND,
                          denominator: int = SAMPLE_DENOMINATOR) -> List[Fraction]:
    return [Fraction(rng.randint(-bound * denominator, bound * denominator), denominator) for _ in range(n)]


def validate_samples(problem: OrbitSpaceProblem, count: int = SAMPLE_COUNT,
                     rng: Optional[random.Random] = None) -> SampleCheck:
    """
    Exact checks at random rational x: J(Π(x)) ⪰ 0 by LDLᵀ, p̃(Π(x)) = f(x), g̃_j(Π(x)) = g_j(x)
    and every relation vanishes at Π(x).
    """
    rng = rng or random.Random(SAMPLE_SEED)
    check = SampleCheck(count)
    for _ in range(count):
        x = random_rational_point(rng, problem.hilbert.num_vars)
        z = problem.hilbert.evaluate(x)
        if not ldlt_psd_check(problem.j.evaluate(z)).psd:
            check.psd_failures += 1
        if problem.objective.evaluate(z) != problem.source_objective.evaluate(x):
            check.objective_mismatches += 1
        if any(g.evaluate(z) != src.evaluate(x) for g, src in zip(problem.constraints, problem.source_constraints)):
            check.constraint_mismatches += 1
        if any(r.evaluate(z) != 0 for r in problem.relations):
            check.relation_failures += 1
    if not check.ok:
        logger.warning(f"Sample validation failed: {check.to_json()}")
    return check


@dataclass
class OrbitMinimum:
    """
    :param value: Smallest p̃ found on {J ⪰ 0, g̃ ≥ 0} inside the box
    :param point: Its z coordinates
    """
    value: float
    point: Optional[List[float]]
    boundary_hit: bool = False
    unbounded: bool = False
    evaluations: int = 0

    def to_json(self) -> dict:
        return {"value": self.value, "point": self.point, "boundary_hit": self.boundary_hit,
                "unbounded": self.unbounded, "evaluations": self.evaluations}


def minimize(problem: OrbitSpaceProblem, box: float = DEFAULT_BOX, tol: float = SEARCH_TOL,
             slack: float = FEASIBILITY_TOL) -> OrbitMinimum:
    """
    Grid plus refinement over z ∈ [-box, box]^m restricted to J(z) ⪰ 0 and g̃(z) ≥ 0.

    :raises UnsupportedError: If the problem carries relations (equality sets have no grid points)
    """
    if problem.relations:
        raise UnsupportedError("The desk search cannot sample an orbit space cut out by relations")
    constraints = problem.constraints

    def feasible(points: np.ndarray) -> np.ndarray:
        mask = min_eigenvalues(problem.j.evaluate_many(points)) >= -slack
        for g in constraints:
            mask &= np.real(g.evaluate_many(points)) >= -slack
        return mask

    m = problem.num_vars
    search = DeskMinimizer(problem.objective.evaluate_many, feasible, tol=tol)
    result = search.minimize([-box] * m, [box] * m)
    if result.boundary_hit:
        logger.warning(f"Orbit-space minimum {result.value:.6g} touches the search box ±{box:g}")
    point = None if result.point is None else [float(v) for v in result.point]
    return OrbitMinimum(result.value, point, result.boundary_hit, result.unbounded, result.evaluations)
