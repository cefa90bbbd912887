"""
Symmetric quartic forms in n ≥ 4 variables.

With π_j = (1/n)·p_j, a symmetric quartic f = c₁π₁⁴ + c₂π₁²π₂ + c₃π₂² + c₄π₁π₃ + c₅π₄ is a sum
of squares iff

    f = α₁₁π₁⁴ + 2α₁₂π₁²π₂ + α₂₂π₂²
        + β₁₁(π₁²π₂ - π₁⁴) + 2β₁₂(π₁π₃ - π₁²π₂) + β₂₂(π₄ - π₂²)
        + γ·(π₁⁴/2 - π₁²π₂ + (n²-3n+3)/(2n²)·π₂² + (2n-2)/n²·π₁π₃ + (1-n)/(2n²)·π₄)

with γ ≥ 0 and both 2×2 matrices α, β PSD. Matching the five coefficients leaves γ and β₁₁
free; for fixed γ the best β₁₁ is found in closed form, and the set of admissible γ is
computed exactly with sympy.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from core.core_report import Status
from core.errors import PreconditionError, UnsupportedError
from core.matrices import as_matrix, exact_solve, ldlt_psd_check, matrix_to_json
from core.polynomial import Polynomial, power_sum
from core.scalars import Scalar, format_scalar, is_exact, rationalize
from modules.sos_invariant.sos_invariant_config import MAX_QUARTIC_N, MIN_QUARTIC_N, ROUNDING_CAPS

logger = logging.getLogger("SosInvariant")

BASIS_NAMES = ("pi1^4", "pi1^2*pi2", "pi2^2", "pi1*pi3", "pi4")
PARAMETER_NAMES = ("alpha11", "alpha12", "alpha22", "beta11", "beta12", "beta22", "gamma")

# (constant, γ-slope, β₁₁-slope) of one parameter
Affine = Tuple[Fraction, Fraction, Fraction]


def _check_n(n: int) -> None:
    if not MIN_QUARTIC_N <= n <= MAX_QUARTIC_N:
        raise UnsupportedError(f"The symmetric quartic representation is used for "
                               f"{MIN_QUARTIC_N} ≤ n ≤ {MAX_QUARTIC_N}, got n = {n}")


def normalized_power_sums(n: int) -> List[Polynomial]:
    """π₁..π₄ with π_j = (1/n)·Σ X_i^j."""
    return [power_sum(n, j) / n for j in range(1, 5)]


def quartic_basis(n: int) -> List[Polynomial]:
    """π₁⁴, π₁²π₂, π₂², π₁π₃, π₄ as polynomials in X₁..Xₙ."""
    _check_n(n)
    p1, p2, p3, p4 = normalized_power_sums(n)
    return [p1 ** 4, p1 ** 2 * p2, p2 ** 2, p1 * p3, p4]


def gamma_form(n: int) -> Polynomial:
    """The quartic multiplied by γ."""
    n = Fraction(n)
    b = quartic_basis(int(n))
    return (b[0] * Fraction(1, 2) - b[1] + b[2] * ((n * n - 3 * n + 3) / (2 * n * n))
            + b[3] * ((2 * n - 2) / (n * n)) + b[4] * ((1 - n) / (2 * n * n)))


def quartic_polynomial(coeffs: Sequence[Scalar], n: int) -> Polynomial:
    basis = quartic_basis(n)
    total = Polynomial.zero(n)
    for c, b in zip(coeffs, basis):
        total = total + b * c
    return total


def quartic_coefficients(f: Polynomial) -> List[Fraction]:
    """
    Coordinates of a symmetric quartic form in the π basis.

    :raises PreconditionError: If f is not a symmetric quartic form
    """
    n = f.num_vars
    _check_n(n)
    if f.is_zero():
        return [Fraction(0)] * 5
    if not f.is_homogeneous() or f.degree != 4:
        raise PreconditionError("symmetric_quartic_form needs a homogeneous polynomial of degree 4")
    f = f.map_coefficients(rationalize)
    if not f.is_exact():
        raise PreconditionError("symmetric_quartic_form needs rational coefficients")
    swap = tuple([1, 0] + list(range(2, n)))
    cycle = tuple(list(range(1, n)) + [0])
    if f.permute(swap) != f or f.permute(cycle) != f:
        raise PreconditionError("symmetric_quartic_form needs a symmetric polynomial")
    basis = quartic_basis(n)
    support = sorted({e for b in basis for e in b.support()} | set(f.support()))
    rows = [[b.coefficient(e) for b in basis] for e in support]
    particular, _ = exact_solve(rows, [f.coefficient(e) for e in support])
    return [Fraction(v) for v in particular]


def parametrization(coeffs: Sequence[Scalar], n: int) -> Dict[str, Affine]:
    """
    Every parameter of the representation as an affine function of the free pair (γ, β₁₁).

    :return: name -> (constant, γ coefficient, β₁₁ coefficient)
    """
    c1, c2, c3, c4, c5 = (Fraction(c) for c in coeffs)
    n = Fraction(n)
    zero = Fraction(0)
    return {
        "alpha11": (c1, Fraction(-1, 2), Fraction(1)),
        "alpha12": ((c2 + c4) / 2, Fraction(1, 2) - (n - 1) / (n * n), Fraction(-1, 2)),
        "alpha22": (c3 + c5, -(n - 2) ** 2 / (2 * n * n), zero),
        "beta11": (zero, zero, Fraction(1)),
        "beta12": (c4 / 2, -(n - 1) / (n * n), zero),
        "beta22": (c5, (n - 1) / (2 * n * n), zero),
        "gamma": (zero, Fraction(1), zero),
    }


@dataclass
class QuarticParameters:
    alpha: np.ndarray
    beta: np.ndarray
    gamma: Fraction

    def polynomial(self, n: int) -> Polynomial:
        b = quartic_basis(n)
        a, bt = self.alpha, self.beta
        return (b[0] * a[0, 0] + b[1] * (2 * a[0, 1]) + b[2] * a[1, 1]
                + (b[1] - b[0]) * bt[0, 0] + (b[3] - b[1]) * (2 * bt[0, 1]) + (b[4] - b[2]) * bt[1, 1]
                + gamma_form(n) * self.gamma)

    def to_json(self) -> dict:
        return {"alpha": matrix_to_json(self.alpha), "beta": matrix_to_json(self.beta),
                "gamma": format_scalar(self.gamma)}


@dataclass
class QuarticResult:
    """
    :param status: FEASIBLE (sum of squares) or INFEASIBLE
    :param n: Number of variables
    :param coefficients: c₁..c₅ in the π basis
    :param parameters: Exact parameters when a rational choice was found
    :param gamma_set: Admissible γ with α₂₂ > 0 and β₂₂ > 0, as sympy prints it
    :param reason: Why no representation exists, or why no rational one was produced
    """
    status: Status
    n: int
    coefficients: List[Fraction]
    parameters: Optional[QuarticParameters] = None
    gamma_set: str = ""
    reason: Optional[str] = None
    free: Dict[str, Affine] = field(default_factory=dict, repr=False)

    @property
    def is_sos(self) -> bool:
        return self.status == Status.FEASIBLE

    def to_json(self) -> dict:
        return {"status": self.status.value, "n": self.n, "reason": self.reason,
                "coefficients": dict(zip(BASIS_NAMES, (format_scalar(c) for c in self.coefficients))),
                "parametrization": {k: [format_scalar(v) for v in aff] for k, aff in self.free.items()},
                "gamma_set": self.gamma_set,
                "parameters": None if self.parameters is None else self.parameters.to_json()}


def _at(aff: Affine, gamma: Fraction, t: Fraction) -> Fraction:
    return aff[0] + aff[1] * gamma + aff[2] * t


def parameters_at(free: Dict[str, Affine], gamma: Fraction) -> Optional[QuarticParameters]:
    """
    Exact feasibility for a fixed rational γ. Among the admissible β₁₁ the smallest one is
    returned: max(β₁₂²/β₂₂, 0) when that keeps α PSD, otherwise the vertex of det α.
    """
    if gamma < 0:
        return None
    beta22 = _at(free["beta22"], gamma, 0)
    beta12 = _at(free["beta12"], gamma, 0)
    alpha22 = _at(free["alpha22"], gamma, 0)
    if beta22 < 0 or alpha22 < 0:
        return None
    if beta22 == 0:
        if beta12 != 0:
            return None
        lowest = Fraction(0)
    else:
        lowest = beta12 * beta12 / beta22
    a0 = _at(free["alpha11"], gamma, 0)
    b0 = _at(free["alpha12"], gamma, 0)

    # det α = (a0 + t)·α₂₂ - (b0 - t/2)², concave in t = β₁₁
    def det_alpha(t: Fraction) -> Fraction:
        return (a0 + t) * alpha22 - (b0 - t / 2) ** 2

    if alpha22 == 0:
        t = 2 * b0
        if t < lowest or a0 + t < 0:
            return None
    elif det_alpha(lowest) >= 0:
        t = lowest
    else:
        t = 2 * (alpha22 + b0)
        if t < lowest or det_alpha(t) < 0:
            return None
    values = {k: _at(aff, gamma, t) for k, aff in free.items()}
    alpha = as_matrix([[values["alpha11"], values["alpha12"]], [values["alpha12"], values["alpha22"]]])
    beta = as_matrix([[values["beta11"], values["beta12"]], [values["beta12"], values["beta22"]]])
    if not (ldlt_psd_check(alpha).psd and ldlt_psd_check(beta).psd):
        return None
    return QuarticParameters(alpha, beta, gamma)


def _gamma_set(free: Dict[str, Affine]) -> sympy.Set:
    """Admissible γ ≥ 0 with β₂₂ > 0 and α₂₂ > 0; the boundary points are checked separately."""
    g = sympy.Symbol("gamma", real=True)

    def expr(name: str, t=0):
        c, slope, t_slope = (sympy.Rational(v.numerator, v.denominator) for v in free[name])
        return c + slope * g + t_slope * t

    reals = sympy.S.Reals
    beta22, beta12, alpha22 = expr("beta22"), expr("beta12"), expr("alpha22")
    a0, b0 = expr("alpha11"), expr("alpha12")
    slope = alpha22 + b0
    constant = a0 * alpha22 - b0 ** 2
    base = (sympy.Interval(0, sympy.oo)
            .intersect(sympy.solveset(beta22 > 0, g, reals))
            .intersect(sympy.solveset(alpha22 > 0, g, reals)))
    vertex_ok = (sympy.solveset(sympy.expand(2 * slope * beta22 - beta12 ** 2) >= 0, g, reals)
                 .intersect(sympy.solveset(sympy.expand(slope ** 2 + constant) >= 0, g, reals)))
    lowest_ok = sympy.solveset(sympy.expand(-beta12 ** 4 / 4 + slope * beta12 ** 2 * beta22
                                            + constant * beta22 ** 2) >= 0, g, reals)
    return base.intersect(vertex_ok.union(lowest_ok))


def _boundary_points(free: Dict[str, Affine]) -> List[Fraction]:
    points = {Fraction(0)}
    for name in ("beta22", "alpha22"):
        c, slope, _ = free[name]
        if slope != 0:
            points.add(-c / slope)
    return sorted(p for p in points if p >= 0)


def _rational_candidates(s: sympy.Set) -> List[Fraction]:
    pieces = s.args if isinstance(s, sympy.Union) else (s,)
    out = []
    for piece in pieces:
        if isinstance(piece, sympy.FiniteSet):
            out.extend(Fraction(int(p.p), int(p.q)) for p in piece if p.is_Rational)
            continue
        if not isinstance(piece, sympy.Interval):
            continue
        lo, hi = piece.start, piece.end
        if hi.is_infinite:
            hi = lo + 1
        mid = (lo + hi) / 2
        if mid.is_Rational:
            out.append(Fraction(int(mid.p), int(mid.q)))
            continue
        for cap in ROUNDING_CAPS:
            r = Fraction(float(mid)).limit_denominator(cap)
            if piece.contains(sympy.Rational(r.numerator, r.denominator)) == sympy.true:
                out.append(r)
                break
    return out


def symmetric_quartic_form(coeffs: Sequence[Scalar], n: int) -> QuarticResult:
    """
    Decide whether the symmetric quartic with π-basis coordinates coeffs is a sum of squares.

    :param coeffs: c₁..c₅ for π₁⁴, π₁²π₂, π₂², π₁π₃, π₄
    :param n: Number of variables
    :return: QuarticResult with exact parameters whenever a rational choice exists
    :raises PreconditionError: On a wrong number of coefficients or non-rational input
    """
    _check_n(n)
    if len(coeffs) != 5:
        raise PreconditionError(f"A symmetric quartic has 5 coordinates, got {len(coeffs)}")
    exact = [rationalize(c) for c in coeffs]
    if not all(is_exact(c) for c in exact):
        raise PreconditionError("symmetric_quartic_form needs rational coefficients")
    coeffs = [Fraction(c) for c in exact]
    free = parametrization(coeffs, n)
    target = quartic_polynomial(coeffs, n)
    interior = _gamma_set(free)
    logger.debug(f"Quartic n={n}: admissible γ with α₂₂, β₂₂ > 0 is {interior}")

    for gamma in _boundary_points(free) + _rational_candidates(interior):
        params = parameters_at(free, gamma)
        if params is None:
            continue
        if params.polynomial(n) != target:
            raise PreconditionError("Quartic parameters do not reproduce the form")
        logger.info(f"Symmetric quartic (n={n}) is a sum of squares, γ = {gamma}")
        return QuarticResult(Status.FEASIBLE, n, coeffs, params, str(interior), free=free)

    if interior.is_empty is False:
        logger.warning(f"Quartic (n={n}) admits only irrational γ in {interior}")
        return QuarticResult(Status.FEASIBLE, n, coeffs, None, str(interior),
                             reason=f"representable only for irrational γ in {interior}", free=free)
    logger.info(f"Symmetric quartic (n={n}) is not a sum of squares")
    return QuarticResult(Status.INFEASIBLE, n, coeffs, None, str(interior),
                         reason="no γ ≥ 0 leaves both α and β positive semidefinite", free=free)


def symmetric_quartic_polynomial(f: Polynomial) -> QuarticResult:
    return symmetric_quartic_form(quartic_coefficients(f), f.num_vars)
