"""
The Gram-matrix method: f is a sum of squares iff f = Yᵀ·Q·Y for some Q ⪰ 0, with Y the
monomials whose doubles lie in the Newton polytope of f.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.core_report import Status
from core.errors import PreconditionError
from core.matrices import as_matrix, matrix_to_json
from core.polynomial import Exponent, Polynomial, grlex_key, monomials_up_to
from core.scalars import Scalar, format_scalar
from modules.sdp_reduce.simplex import LPProblem, simplex_solve
from modules.sos_invariant.affine_psd import AffinePsdProblem, PsdSearchResult, solve_affine_psd
from modules.sos_invariant.sos_invariant_config import (LOWER_BOUND_BRACKET_STEPS, LOWER_BOUND_STEPS,
                                                        NEGATIVE_POINT_MAX_VARS, NEGATIVE_POINT_VALUES,
                                                        NEGATIVE_POINT_WIDE_MAX_VARS, NEGATIVE_POINT_WIDE_VALUES,
                                                        PROJECTION_ITERATIONS, SEARCH_TOL)

logger = logging.getLogger("SosInvariant")


def monomial_name(exponent: Exponent) -> str:
    return Polynomial.monomial(exponent).format()


def in_convex_hull(point: Sequence[int], support: Sequence[Exponent]) -> bool:
    """Exact LP membership test: point = Σ λ_k s_k with λ ≥ 0, Σ λ_k = 1."""
    rows = [[1] * len(support)] + [[s[i] for s in support] for i in range(len(point))]
    rhs = [1] + list(point)
    return simplex_solve(LPProblem([0] * len(support), rows, rhs)).status == Status.OPTIMAL


def half_newton_monomials(f: Polynomial) -> List[Exponent]:
    """
    Lattice points α with 2α in the Newton polytope of f, ascending in graded lex order.

    :raises PreconditionError: For the zero polynomial or odd degree
    """
    if f.is_zero():
        raise PreconditionError("The zero polynomial has no Newton polytope")
    if f.degree % 2:
        raise PreconditionError(f"A sum of squares has even degree, got {f.degree}")
    support = f.support()
    lows = [min(s[i] for s in support) for i in range(f.num_vars)]
    highs = [max(s[i] for s in support) for i in range(f.num_vars)]
    low_degree = min(sum(s) for s in support)
    result = []
    for alpha in monomials_up_to(f.num_vars, f.degree // 2):
        if 2 * sum(alpha) < low_degree:
            continue
        doubled = [2 * a for a in alpha]
        if any(d < lo or d > hi for d, lo, hi in zip(doubled, lows, highs)):
            continue
        if in_convex_hull(doubled, support):
            result.append(alpha)
    return result


@dataclass
class GramProblem:
    """
    :param target: Polynomial f of even degree
    :param monomials: The basis Y
    :param identification: Monomial γ -> Gram positions (u, v), u ≤ v, with y_u·y_v = X^γ
    """
    target: Polynomial
    monomials: List[Exponent]
    identification: Dict[Exponent, List[Tuple[int, int]]] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.monomials)

    def unmatched(self) -> List[Exponent]:
        """Monomials of f that no product y_u·y_v reaches."""
        return [e for e in self.target.support() if e not in self.identification]

    def gram_polynomial(self, q) -> Polynomial:
        """Yᵀ·Q·Y."""
        q = as_matrix(q)
        terms: Dict[Exponent, Scalar] = {}
        for u, a in enumerate(self.monomials):
            for v, b in enumerate(self.monomials):
                if q[u, v] != 0:
                    key = tuple(x + y for x, y in zip(a, b))
                    terms[key] = terms.get(key, Fraction(0)) + q[u, v]
        return Polynomial(self.target.num_vars, terms)

    def affine_problem(self) -> AffinePsdProblem:
        keys = sorted(set(self.identification) | set(self.target.support()), key=grlex_key)
        size = self.size
        variables = [(u, v) for u in range(size) for v in range(u, size)]
        position = {var: k for k, var in enumerate(variables)}
        rows, rhs = [], []
        for gamma in keys:
            row = [Fraction(0)] * len(variables)
            for u, v in self.identification.get(gamma, []):
                row[position[(u, v)]] = Fraction(1 if u == v else 2)
            rows.append(row)
            rhs.append(self.target.coefficient(gamma))
        return AffinePsdProblem([size], rows, rhs, ["Gram"], [[monomial_name(m) for m in self.monomials]])

    def to_json(self) -> dict:
        return {"target": self.target.to_json(), "monomials": [list(m) for m in self.monomials],
                "names": [monomial_name(m) for m in self.monomials]}


def gram_setup(f: Polynomial, newton: bool = True) -> GramProblem:
    """
    Gram problem of f over the half Newton polytope (or all monomials of degree ≤ deg f / 2).

    :param f: Real polynomial of even degree
    :param newton: Filter the basis through the Newton polytope
    :return: GramProblem
    :raises PreconditionError: On odd degree, the zero polynomial or complex coefficients
    """
    if any(isinstance(c, complex) for c in f.terms.values()):
        raise PreconditionError("Sums of squares need real coefficients")
    if newton:
        monomials = half_newton_monomials(f)
    else:
        if f.is_zero() or f.degree % 2:
            raise PreconditionError(f"A sum of squares has even degree, got {f.degree}")
        monomials = monomials_up_to(f.num_vars, f.degree // 2)
    identification: Dict[Exponent, List[Tuple[int, int]]] = {}
    for u, a in enumerate(monomials):
        for v in range(u, len(monomials)):
            key = tuple(x + y for x, y in zip(a, monomials[v]))
            identification.setdefault(key, []).append((u, v))
    logger.debug(f"Gram basis of size {len(monomials)}: {[monomial_name(m) for m in monomials]}")
    return GramProblem(f, monomials, identification)


@dataclass
class GramResult:
    status: Status
    problem: GramProblem = field(repr=False)
    gram: Optional[np.ndarray] = None
    reason: Optional[str] = None
    dof: int = 0
    iterations: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == Status.FEASIBLE

    def to_json(self) -> dict:
        return {"status": self.status.value, "reason": self.reason, "dof": self.dof, "iterations": self.iterations,
                "monomials": [monomial_name(m) for m in self.problem.monomials],
                "gram": None if self.gram is None else matrix_to_json(self.gram)}


def negative_point(f: Polynomial) -> Optional[Tuple[List[Fraction], Scalar]]:
    """
    A small integer point where f is negative, if the desk grid has one.

    :return: (point, f(point)) or None
    """
    if f.num_vars > NEGATIVE_POINT_MAX_VARS:
        return None
    values = NEGATIVE_POINT_WIDE_VALUES if f.num_vars <= NEGATIVE_POINT_WIDE_MAX_VARS else NEGATIVE_POINT_VALUES
    points = np.array(list(itertools.product(values, repeat=f.num_vars)), dtype=float).reshape(-1, f.num_vars)
    evaluated = np.real(f.evaluate_many(points))
    order = np.argsort(evaluated)
    for k in order[:5]:
        if evaluated[k] >= 0:
            break
        point = [Fraction(int(v)) for v in points[k]]
        value = f.evaluate(point)
        if value < 0:
            return point, value
    return None


def gram_feasibility(problem: GramProblem, tol: float = SEARCH_TOL,
                     iterations: int = PROJECTION_ITERATIONS) -> GramResult:
    """
    Decide whether f = Yᵀ·Q·Y has a PSD solution Q.

    Infeasibility is reported only with an exact reason: a monomial of f that Y·Y cannot
    reach, an inconsistent or uniquely solvable identification with a non-PSD solution,
    a diagonal entry forced negative, or a rational point where f < 0.

    :param problem: GramProblem from gram_setup
    :param tol: Float tolerance of the numeric search
    :param iterations: Alternating-projection budget
    :return: GramResult
    """
    missing = problem.unmatched()
    if missing:
        name = monomial_name(missing[0])
        return GramResult(Status.INFEASIBLE, problem,
                          reason=f"monomial {name} of f is not a product of two basis monomials")
    search: PsdSearchResult = solve_affine_psd(problem.affine_problem(), tol, iterations)
    if search.status == Status.UNDECIDED and problem.target.is_exact():
        found = negative_point(problem.target)
        if found is not None:
            point, value = found
            coords = ", ".join(str(v) for v in point)
            return GramResult(Status.INFEASIBLE, problem, reason=f"f({coords}) = {value} < 0",
                              dof=search.dof, iterations=search.iterations)
    gram = search.blocks[0] if search.blocks else None
    logger.info(f"Gram search over {problem.size} monomials: {search.status.value}"
                + (f" ({search.reason})" if search.reason else ""))
    return GramResult(search.status, problem, gram, search.reason, search.dof, search.iterations)


@dataclass
class LowerBound:
    value: Optional[Scalar]
    certificate: Optional[GramResult] = None
    steps: int = 0

    def to_json(self) -> dict:
        return {"value": None if self.value is None else format_scalar(self.value), "steps": self.steps,
                "certificate": None if self.certificate is None else self.certificate.to_json()}


def sos_lower_bound(f: Polynomial, steps: int = LOWER_BOUND_STEPS, tol: float = SEARCH_TOL,
                    iterations: int = PROJECTION_ITERATIONS // 5) -> LowerBound:
    """
    Largest λ found by rational bisection such that f - λ has a verified Gram certificate.

    The upper end starts at the smallest value of f on the desk grid (or f(0)); λ values that
    end undecided count as infeasible, so the result is a certified lower bound of min f.

    :param f: Exact polynomial of even degree
    :param steps: Bisection steps
    :return: LowerBound (value None when no certified λ was found)
    """
    if not f.is_exact():
        raise PreconditionError("sos_lower_bound works on exact polynomials")
    upper = f.evaluate([Fraction(0)] * f.num_vars)
    found = negative_point(f - upper)
    if found is not None:
        upper = upper + found[1]

    def certify(lam: Fraction) -> Optional[GramResult]:
        result = gram_feasibility(gram_setup(f - lam), tol, iterations)
        return result if result.feasible else None

    width = Fraction(1)
    lower, best = None, None
    for _ in range(LOWER_BOUND_BRACKET_STEPS):
        candidate = upper - width
        best = certify(candidate)
        if best is not None:
            lower = candidate
            break
        width *= 2
    if lower is None:
        logger.warning(f"No certified lower bound within {LOWER_BOUND_BRACKET_STEPS} bracketing steps")
        return LowerBound(None, None, LOWER_BOUND_BRACKET_STEPS)
    hi = upper
    for _ in range(steps):
        mid = (lower + hi) / 2
        result = certify(mid)
        if result is not None:
            lower, best = mid, result
        else:
            hi = mid
        if hi - lower <= Fraction(1, 10 ** 9):
            break
    logger.info(f"SOS lower bound {float(lower):.9g} (gap {float(hi - lower):.3g})")
    return LowerBound(lower, best, steps)
