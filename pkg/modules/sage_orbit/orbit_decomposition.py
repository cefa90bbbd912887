"""
Orbit decomposition of invariant SAGE certificates.

For f invariant under a group acting linearly on exponents, with negative exponents 𝓑 and
orbit representatives 𝓑̂, f is SAGE iff there are AGE signomials h_β (β ∈ 𝓑̂), each invariant
under Stab(β), with

    f = Σ_{β ∈ 𝓑̂} Σ_{ρ ∈ G/Stab(β)} ρ·h_β = Σ_β (1/|Stab(β)|) Σ_{g ∈ G} g·h_β.
"""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from core.core_report import Status
from core.errors import (ConvergenceError, DimensionMismatchError, InconsistentSystemError, NotInvariantError,
                         PreconditionError, UnderdeterminedError)
from core.matrices import exact_solve
from core.scalars import Scalar, format_scalar
from modules.groups.group_representation import GroupRepresentation
from modules.sage_orbit.age import AGECandidate, AGEResult, age_feasible, verify_age
from modules.sage_orbit.sage_orbit_config import (BISECTION_STEPS, BISECTION_TOL, BRACKET, DEFAULT_WORKERS,
                                                  SAMPLE_BOUND, SAMPLE_COUNT, SAMPLE_SEED)
from modules.sage_orbit.signomial import Exponent, Signomial, act, format_exponent

logger = logging.getLogger("Sage")


class ExponentAction:
    """Exact matrices of every group element, applied to exponent vectors."""

    def __init__(self, rep: GroupRepresentation):
        self.rep = rep
        self.elements = rep.elements()
        self.matrices = [rep.matrix(g) for g in self.elements]
        self.generators = [(rep.label(g), rep.matrix(g)) for g in rep.generators()]

    @property
    def order(self) -> int:
        return len(self.elements)

    def orbit(self, alpha: Exponent) -> List[Exponent]:
        return sorted({act(m, alpha) for m in self.matrices})

    def stabilizer(self, alpha: Exponent) -> List[int]:
        return [i for i, m in enumerate(self.matrices) if act(m, alpha) == alpha]


def check_signomial_invariant(f: Signomial, action: ExponentAction) -> None:
    """
    :raises NotInvariantError: If some generator moves a coefficient
    """
    for label, m in action.generators:
        for alpha, c in f.terms.items():
            if f.coefficient(act(m, alpha)) != c:
                raise NotInvariantError(f"Coefficient of {format_exponent(alpha)} is not preserved by {label}",
                                        generator=label, item=format_exponent(alpha))


@dataclass
class OrbitTemplate:
    """
    AGE template for one orbit representative β̂: unknown c on 𝒜, tied along Stab(β̂)-orbits.

    :param beta: Orbit representative β̂ (lexicographically smallest element of its orbit)
    :param d: Coefficient of f at β̂
    :param orbit: Orbit of β̂
    :param stabilizer: Indices of the elements fixing β̂
    :param support: Positive support 𝒜 of f
    :param unknown_of: Index of the unknown carried by each support exponent
    :param classes: Stab(β̂)-orbits of 𝒜, one per unknown
    """
    beta: Exponent
    d: Scalar
    orbit: List[Exponent]
    stabilizer: List[int]
    support: List[Exponent]
    unknown_of: List[int]
    classes: List[List[Exponent]]

    @property
    def num_unknowns(self) -> int:
        return len(self.classes)

    def to_json(self) -> dict:
        return {"beta": format_exponent(self.beta), "d": format_scalar(self.d), "orbit_size": len(self.orbit),
                "stabilizer_order": len(self.stabilizer),
                "unknowns": [[format_exponent(a) for a in cls] for cls in self.classes]}


def orbit_decompose(f: Signomial, rep: GroupRepresentation) -> List[OrbitTemplate]:
    """
    Split the negative support of an invariant signomial into orbits and build one template each.

    :param f: Invariant signomial
    :param rep: Group acting on exponents through its matrices
    :return: Templates ordered by representative (empty when f has no negative coefficient)
    :raises NotInvariantError: If f is not invariant
    """
    if rep.degree != f.num_vars:
        raise DimensionMismatchError(f"{rep.name} acts on {rep.degree} coordinates, f has {f.num_vars}")
    action = ExponentAction(rep)
    check_signomial_invariant(f, action)
    support = f.positive_support()
    templates, seen = [], set()
    for beta in sorted(f.negative_support()):
        if beta in seen:
            continue
        orbit = action.orbit(beta)
        seen.update(orbit)
        representative = orbit[0]
        stabilizer = action.stabilizer(representative)
        unknown_of, classes, index = [], [], {}
        for alpha in support:
            if alpha not in index:
                cls = sorted({act(action.matrices[i], alpha) for i in stabilizer}, reverse=True)
                for member in cls:
                    index[member] = len(classes)
                classes.append(cls)
            unknown_of.append(index[alpha])
        templates.append(OrbitTemplate(representative, f.coefficient(representative), orbit, stabilizer, support,
                                       unknown_of, classes))
        logger.debug(f"β̂ = {format_exponent(representative)}: orbit {len(orbit)}, "
                     f"stabilizer {len(stabilizer)}, {len(classes)} unknowns")
    logger.info(f"{len(templates)} orbit representatives over {len(support)} positive exponents")
    return templates


@dataclass
class SolvedTemplate:
    template: OrbitTemplate
    values: List[Scalar]

    @property
    def coefficients(self) -> List[Scalar]:
        return [self.values[u] for u in self.template.unknown_of]

    def candidate(self) -> AGECandidate:
        """
        :raises PreconditionError: If an identified coefficient is negative
        """
        kept = [(a, c) for a, c in zip(self.template.support, self.coefficients) if c != 0]
        return AGECandidate([a for a, _ in kept], [c for _, c in kept], self.template.beta, self.template.d)

    def to_json(self) -> dict:
        return {**self.template.to_json(), "values": [format_scalar(v) for v in self.values]}


def identify_coefficients(f: Signomial, templates: List[OrbitTemplate], rep: GroupRepresentation,
                          pins: Optional[Dict[int, Scalar]] = None) -> List[SolvedTemplate]:
    """
    Match the coefficients of f on 𝒜 against the orbit sums of the templates.

    :param f: Invariant signomial
    :param templates: Output of orbit_decompose
    :param rep: The same group
    :param pins: Fixed values for unknowns, keyed by their position across all templates
    :return: One SolvedTemplate per template
    :raises UnderdeterminedError: If the identification leaves free unknowns
    :raises InconsistentSystemError: If no assignment reproduces f
    """
    if not templates:
        return []
    pins = pins or {}
    offsets, total = [], 0
    for t in templates:
        offsets.append(total)
        total += t.num_unknowns
    if any(not 0 <= u < total for u in pins):
        raise PreconditionError(f"Pinned unknowns must lie in 0..{total - 1}")
    if total == 0:
        return [SolvedTemplate(t, []) for t in templates]

    action = ExponentAction(rep)
    support = templates[0].support
    rows, rhs = [], []
    for alpha in support:
        row = [Fraction(0)] * total
        images = [act(m, alpha) for m in action.matrices]
        for t, offset in zip(templates, offsets):
            position = {a: u for a, u in zip(t.support, t.unknown_of)}
            weight = Fraction(1, len(t.stabilizer))
            for image in images:
                row[offset + position[image]] += weight
        rows.append(row)
        rhs.append(f.coefficient(alpha))
    for u, value in sorted(pins.items()):
        rows.append([Fraction(1) if j == u else Fraction(0) for j in range(total)])
        rhs.append(value)
    particular, null = exact_solve(rows, rhs)
    if null:
        raise UnderdeterminedError(f"Coefficient identification leaves {len(null)} free unknowns; pin them "
                                   f"to select a decomposition", dof=len(null))
    solved = [SolvedTemplate(t, [particular[offset + u] for u in range(t.num_unknowns)])
              for t, offset in zip(templates, offsets)]
    logger.debug(f"Identified {total} unknowns from {len(support)} coefficients and {len(pins)} pins")
    return solved


def orbit_sum(solved: List[SolvedTemplate], rep: GroupRepresentation, num_vars: int) -> Signomial:
    """Σ_β (1/|Stab β|) Σ_g g·h_β, exactly."""
    action = ExponentAction(rep)
    terms: Dict[Exponent, Scalar] = {}
    for s in solved:
        weight = Fraction(1, len(s.template.stabilizer))
        h = dict(zip(s.template.support, s.coefficients))
        h[s.template.beta] = s.template.d
        for m in action.matrices:
            for alpha, c in h.items():
                image = act(m, alpha)
                terms[image] = terms.get(image, Fraction(0)) + weight * c
    return Signomial(num_vars, terms)


@dataclass
class SageCertificate:
    """
    :param signomial: The certified signomial
    :param solved: Identified templates
    :param results: AGE outcome per template
    """
    signomial: Signomial
    solved: List[SolvedTemplate] = field(default_factory=list)
    results: List[AGEResult] = field(default_factory=list)
    reason: Optional[str] = None

    @property
    def feasible(self) -> bool:
        return self.reason is None and all(r.feasible for r in self.results)

    def verify(self, rep: GroupRepresentation) -> bool:
        """Exact orbit-sum identity plus every entropy condition."""
        if not self.feasible:
            return False
        if not self.solved:
            return all(c > 0 for c in self.signomial.terms.values())
        if orbit_sum(self.solved, rep, self.signomial.num_vars) != self.signomial:
            return False
        return all(verify_age(s.candidate(), r.certificate) for s, r in zip(self.solved, self.results))

    def to_json(self) -> dict:
        return {"feasible": self.feasible, "reason": self.reason,
                "templates": [s.to_json() for s in self.solved],
                "age": [r.to_json() for r in self.results]}


def certify_sage(f: Signomial, rep: GroupRepresentation, pins: Optional[Dict[int, Scalar]] = None,
                 workers: int = DEFAULT_WORKERS) -> SageCertificate:
    """
    Decide SAGE membership of an invariant signomial through its orbit decomposition.

    :raises UnderdeterminedError: If the identification is not unique (see identify_coefficients)
    :raises InconsistentSystemError: If the templates cannot reproduce f
    """
    templates = orbit_decompose(f, rep)
    if not templates:
        return SageCertificate(f)
    solved = identify_coefficients(f, templates, rep, pins)
    try:
        candidates = [s.candidate() for s in solved]
    except PreconditionError as e:
        return SageCertificate(f, solved, reason=str(e))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(age_feasible, candidates))
    else:
        results = [age_feasible(c) for c in candidates]
    certificate = SageCertificate(f, solved, results)
    logger.info(f"SAGE check over {len(candidates)} AGE candidates: "
                f"{'feasible' if certificate.feasible else 'infeasible'}")
    return certificate


@dataclass
class SageBound:
    """
    :param value: Largest λ with f - λ certified SAGE (None when even the lower end failed)
    :param certificate: Certificate of f - value
    :param upper: Smallest sampled value of f
    """
    value: Optional[Fraction]
    certificate: Optional[SageCertificate]
    upper: Fraction
    steps: int = 0
    reason: Optional[str] = None

    @property
    def status(self) -> Status:
        return Status.OK if self.value is not None else Status.UNDECIDED

    def to_json(self) -> dict:
        return {"value": None if self.value is None else float(self.value),
                "exact": None if self.value is None else format_scalar(self.value),
                "upper": float(self.upper), "steps": self.steps, "reason": self.reason,
                "certificate": None if self.certificate is None else self.certificate.to_json()}


def sample_minimum(f: Signomial, count: int = SAMPLE_COUNT, bound: float = SAMPLE_BOUND,
                   seed: int = SAMPLE_SEED) -> float:
    """Smallest value of f over the origin and `count` uniform points of [-bound, bound]^n."""
    rng = np.random.default_rng(seed)
    points = np.vstack([np.zeros((1, f.num_vars)), rng.uniform(-bound, bound, size=(count, f.num_vars))])
    return float(np.min(f.evaluate_many(points)))


def sage_bound(f: Signomial, rep: GroupRepresentation, pins: Optional[Dict[int, Scalar]] = None,
               tol: float = BISECTION_TOL, bracket: float = BRACKET) -> SageBound:
    """
    Bisection for the largest λ such that f - λ is SAGE.

    :param f: Invariant signomial
    :param rep: Group acting on exponents
    :param pins: Passed to identify_coefficients for every λ
    :param tol: Final bracket width
    :param bracket: The search starts at λ = -bracket (or lower when f samples below it)
    :return: SageBound
    """
    upper = Fraction(sample_minimum(f))
    last_failure = None

    def certify(lam: Fraction) -> Optional[SageCertificate]:
        nonlocal last_failure
        try:
            certificate = certify_sage(f.shift(lam), rep, pins)
        except (UnderdeterminedError, InconsistentSystemError, ConvergenceError) as e:
            last_failure = str(e)
            logger.debug(f"λ = {float(lam):.9g}: {e}")
            return None
        if not certificate.feasible:
            last_failure = certificate.reason or "an AGE candidate is infeasible"
        return certificate if certificate.feasible else None

    best = certify(upper)
    if best is not None:
        logger.info(f"SAGE bound {float(upper):.9g} reaches the sampled minimum")
        return SageBound(upper, best, upper)
    lower = Fraction(-bracket) if upper > -bracket else upper - Fraction(bracket)
    best = certify(lower)
    if best is None:
        logger.warning(f"No SAGE certificate at the lower end λ = {float(lower):g}: {last_failure}")
        return SageBound(None, None, upper, reason=last_failure)
    hi, steps = upper, 0
    while hi - lower > tol and steps < BISECTION_STEPS:
        mid = (lower + hi) / 2
        found = certify(mid)
        if found is not None:
            lower, best = mid, found
        else:
            hi = mid
        steps += 1
    logger.info(f"SAGE bound {float(lower):.9g} after {steps} bisection steps (gap {float(hi - lower):.3g})")
    return SageBound(lower, best, upper, steps)


def random_exponent_permutation(f: Signomial, rep: GroupRepresentation, seed: int = SAMPLE_SEED) -> Signomial:
    """f with exponents moved by a random group element (f itself when f is invariant)."""
    action = ExponentAction(rep)
    return f.transformed(action.matrices[random.Random(seed).randrange(action.order)])
