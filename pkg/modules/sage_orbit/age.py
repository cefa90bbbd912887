"""
AGE signomials Σ_{α∈𝒜} c_α e^{⟨α,x⟩} + d e^{⟨β,x⟩} with c > 0, and the relative-entropy test:
the function is non-negative iff some ν ≥ 0 on 𝒜 satisfies

    Σ ν_α (α - β) = 0   and   Σ ν_α ln(ν_α / (e·c_α)) ≤ d.

Only the α that carry weight in some convex combination equal to β (the face of conv(𝒜)
containing β in its relative interior) can take part; the rest get ν_α = 0.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from core.core_report import Status
from core.errors import ConvergenceError, DimensionMismatchError, PreconditionError
from core.scalars import Scalar, format_scalar
from modules.sage_orbit.sage_orbit_config import (ARMIJO, BACKTRACK, BACKTRACK_STEPS, BALANCE_TOL, CERTIFICATE_TOL,
                                                  ENTROPY_TOL, NEWTON_ITERATIONS)
from modules.sage_orbit.signomial import Exponent, Signomial, format_exponent
from modules.sdp_reduce.simplex import LPProblem, simplex_solve

logger = logging.getLogger("Sage")


@dataclass
class AGECandidate:
    """
    :param support: Positive exponents 𝒜
    :param coefficients: c_α > 0, aligned with support
    :param beta: Distinguished exponent β ∉ 𝒜
    :param d: Coefficient of e^{⟨β,x⟩}
    """
    support: List[Exponent]
    coefficients: List[Scalar]
    beta: Exponent
    d: Scalar

    def __post_init__(self):
        if len(self.support) != len(self.coefficients):
            raise DimensionMismatchError(f"{len(self.support)} exponents but {len(self.coefficients)} coefficients")
        if any(len(alpha) != len(self.beta) for alpha in self.support):
            raise DimensionMismatchError("Every exponent needs the dimension of β")
        if any(c <= 0 for c in self.coefficients):
            raise PreconditionError("AGE coefficients on 𝒜 must be positive")
        if self.beta in self.support:
            raise PreconditionError(f"β = {format_exponent(self.beta)} lies in 𝒜")

    def signomial(self) -> Signomial:
        terms = dict(zip(self.support, self.coefficients))
        terms[self.beta] = self.d
        return Signomial(len(self.beta), terms)

    def to_json(self) -> dict:
        return {"beta": format_exponent(self.beta), "d": format_scalar(self.d),
                "support": [format_exponent(a) for a in self.support],
                "coefficients": [format_scalar(c) for c in self.coefficients]}


@dataclass
class EntropyCertificate:
    nu: List[float]
    entropy: float

    def to_json(self) -> dict:
        return {"nu": self.nu, "entropy": self.entropy}


@dataclass
class AGEResult:
    """
    :param status: FEASIBLE or INFEASIBLE
    :param certificate: ν and its entropy (the minimum when the Newton iteration converged)
    :param reason: Why the candidate failed, when it did
    :param kkt_residual: Norm of the projected entropy gradient at the final ν
    """
    status: Status
    certificate: Optional[EntropyCertificate] = None
    reason: Optional[str] = None
    kkt_residual: float = 0.0
    iterations: int = 0
    face: List[int] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.status == Status.FEASIBLE

    def to_json(self) -> dict:
        return {"status": self.status.value, "reason": self.reason, "kkt_residual": self.kkt_residual,
                "iterations": self.iterations, "face": self.face,
                "certificate": None if self.certificate is None else self.certificate.to_json()}


def entropy(nu: np.ndarray, c: np.ndarray) -> float:
    """Σ ν ln(ν/(e·c)), with 0·ln 0 = 0."""
    positive = nu > 0
    return float(np.sum(nu[positive] * (np.log(nu[positive] / c[positive]) - 1.0)))


def _balance_lp(shifted: List[List[Fraction]], target: Optional[int]) -> LPProblem:
    """ν ≥ 0, Σ ν_α (α - β) = 0, Σ ν_α = 1; maximize ν_target (or nothing)."""
    k = len(shifted)
    dim = len(shifted[0]) if shifted else 0
    rows = [[shifted[i][r] for i in range(k)] for r in range(dim)]
    rows.append([Fraction(1)] * k)
    objective = [Fraction(1) if i == target else Fraction(0) for i in range(k)]
    return LPProblem(objective, rows, [Fraction(0)] * dim + [Fraction(1)])


def interior_weights(support: Sequence[Exponent], beta: Exponent) -> Optional[List[Fraction]]:
    """
    Convex weights ν with Σ ν_α α = β that are positive on every α of the face containing β.

    :return: Weights aligned with support, or None when β ∉ conv(𝒜)
    """
    if not support:
        return None
    shifted = [[a - b for a, b in zip(alpha, beta)] for alpha in support]
    if simplex_solve(_balance_lp(shifted, None)).status != Status.OPTIMAL:
        return None
    points = []
    for i in range(len(support)):
        result = simplex_solve(_balance_lp(shifted, i))
        if result.value > 0:
            points.append(result.solution)
    return [sum(p[i] for p in points) / len(points) for i in range(len(support))]


def _newton(a: np.ndarray, c: np.ndarray, nu0: np.ndarray, tol: float, iterations: int):
    """Minimize the entropy on {ν > 0, Aν = 0} starting from a strictly positive ν0."""
    _, s, vt = np.linalg.svd(a) if a.size else (None, np.zeros(0), np.eye(len(c)))
    rank = int(np.sum(s > 1e-12 * max(1.0, s.max(initial=0.0))))
    null = vt[rank:].T
    w = null.T @ nu0

    def phi(w_: np.ndarray) -> float:
        return entropy(null @ w_, c)

    for step in range(iterations):
        nu = null @ w
        grad = null.T @ np.log(nu / c)
        hess = null.T @ (null / nu[:, None])
        direction = -np.linalg.solve(hess, grad)
        decrement = float(-grad @ direction)
        residual = float(np.linalg.norm(grad))
        if residual <= tol or decrement / 2 <= tol * tol:
            return nu, residual, step
        t = 1.0
        for _ in range(BACKTRACK_STEPS):
            trial = w + t * direction
            if np.all(null @ trial > 0) and phi(trial) <= phi(w) - ARMIJO * t * decrement:
                break
            t *= BACKTRACK
        else:
            if decrement / 2 <= tol:
                return nu, residual, step
            raise ConvergenceError("Entropy line search found no descent step")
        w = w + t * direction
    nu = null @ w
    residual = float(np.linalg.norm(null.T @ np.log(nu / c)))
    raise ConvergenceError(f"Entropy minimization did not converge in {iterations} iterations "
                           f"(residual {residual:.3g})")


def age_feasible(candidate: AGECandidate, tol: float = ENTROPY_TOL,
                 iterations: int = NEWTON_ITERATIONS) -> AGEResult:
    """
    Decide whether an AGE candidate is non-negative.

    :param candidate: AGECandidate
    :param tol: Newton-decrement tolerance and slack of the entropy condition
    :param iterations: Newton iteration cap
    :return: AGEResult
    :raises ConvergenceError: If the entropy minimization stalls
    """
    d = float(candidate.d)
    weights = interior_weights(candidate.support, candidate.beta)
    if weights is None:
        if d >= 0:
            return AGEResult(Status.FEASIBLE, EntropyCertificate([0.0] * len(candidate.support), 0.0))
        reason = f"β = {format_exponent(candidate.beta)} lies outside conv(𝒜)"
        logger.debug(reason)
        return AGEResult(Status.INFEASIBLE, reason=reason)

    face = [i for i, v in enumerate(weights) if v > 0]
    a = np.array([[float(candidate.support[i][r] - candidate.beta[r]) for i in face]
                  for r in range(len(candidate.beta))])
    c = np.array([float(candidate.coefficients[i]) for i in face])
    nu_face, residual, steps = _newton(a, c, np.array([float(weights[i]) for i in face]), tol, iterations)
    value = entropy(nu_face, c)
    nu = [0.0] * len(candidate.support)
    for i, v in zip(face, nu_face):
        nu[i] = float(v)
    certificate = EntropyCertificate(nu, value)
    logger.debug(f"β = {format_exponent(candidate.beta)}: entropy {value:.12g} vs d = {d:.12g} "
                 f"after {steps} Newton steps")
    if value <= d + tol:
        return AGEResult(Status.FEASIBLE, certificate, kkt_residual=residual, iterations=steps, face=face)
    return AGEResult(Status.INFEASIBLE, certificate, f"minimum entropy {value:.12g} exceeds d = {d:.12g}",
                     residual, steps, face)


def verify_age(candidate: AGECandidate, certificate: EntropyCertificate) -> bool:
    """Moment balance within BALANCE_TOL and the entropy condition within CERTIFICATE_TOL."""
    nu = np.asarray(certificate.nu, dtype=float)
    if np.any(nu < 0):
        return False
    if not candidate.support:
        return float(candidate.d) >= 0
    shifted = np.array([[float(a - b) for a, b in zip(alpha, candidate.beta)] for alpha in candidate.support])
    balance = np.abs(nu @ shifted).max(initial=0.0)
    c = np.array([float(v) for v in candidate.coefficients])
    return bool(balance <= BALANCE_TOL * max(1.0, nu.sum()) and
                entropy(nu, c) <= float(candidate.d) + CERTIFICATE_TOL)
