"""
Differential operators f(∂), harmonic polynomials, Jacobians of generating sets and the
decomposition of alternating-group invariants.
"""

import logging
import math
from typing import List, Sequence, Tuple

import sympy

from core.errors import DimensionMismatchError, NotInvariantError, PreconditionError, RewriteError
from core.matrices import to_sympy_matrix
from core.polynomial import Polynomial, grlex_key, vandermonde
from core.scalars import Scalar, to_scalar
from modules.groups.families import SymmetricGroup
from modules.groups.polynomial_action import reynolds

logger = logging.getLogger("InvRing")


def _apply_monomial(exponent: Sequence[int], g: Polynomial) -> Polynomial:
    """(1/α!)·∂^α g."""
    result = g
    scale = 1
    for index, power in enumerate(exponent):
        for _ in range(power):
            result = result.derivative(index)
            if result.is_zero():
                return result
        scale *= math.factorial(power)
    return result / scale if scale > 1 else result


def apply_diff_operator(f: Polynomial, g: Polynomial) -> Polynomial:
    """
    f(∂)g, where the monomial X^α acts as (1/α!)·∂^α.

    :raises DimensionMismatchError: If f and g use different variable counts
    """
    if f.num_vars != g.num_vars:
        raise DimensionMismatchError(f"f(∂) with {f.num_vars} variables applied to {g.num_vars}")
    total = Polynomial.zero(g.num_vars)
    for exponent, coeff in f.terms.items():
        total = total + _apply_monomial(exponent, g) * coeff
    return total


def harmonic_pairing(f: Polynomial, g: Polynomial) -> Scalar:
    """⟨f, g⟩ = constant term of f(∂)g."""
    return apply_diff_operator(f, g).constant_term()


def derivative_span(f: Polynomial) -> List[Polynomial]:
    """
    A basis of the span of all partial derivatives ∂^α f (f included), as reduced row
    echelon rows of the coefficient matrix, highest degree first.
    """
    seen = {f}
    frontier = [f]
    while frontier:
        nxt = []
        for p in frontier:
            for i in range(p.num_vars):
                d = p.derivative(i)
                if not d.is_zero() and d not in seen:
                    seen.add(d)
                    nxt.append(d)
        frontier = nxt
    polys = list(seen)
    support = sorted({e for p in polys for e in p.support()}, key=grlex_key, reverse=True)
    reduced, pivots = to_sympy_matrix([[p.coefficient(e) for e in support] for p in polys]).rref()
    basis = []
    for row in range(len(pivots)):
        basis.append(Polynomial(f.num_vars, {e: to_scalar(reduced[row, k]) for k, e in enumerate(support)}))
    logger.debug(f"Derivative span of {f.format()} has dimension {len(basis)}")
    return basis


def _determinant(matrix: List[List[Polynomial]], num_vars: int) -> Polynomial:
    size = len(matrix)
    if size == 0:
        return Polynomial.constant(1, num_vars)
    if size == 1:
        return matrix[0][0]
    total = Polynomial.zero(num_vars)
    for j in range(size):
        if matrix[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        total = total + matrix[0][j] * _determinant(minor, num_vars) * (-1) ** j
    return total


def jacobian_determinant(polys: Sequence[Polynomial]) -> Polynomial:
    """
    det(∂π_i/∂X_j) of n polynomials in n variables.

    :raises DimensionMismatchError: If the family is not square
    """
    polys = list(polys)
    n = polys[0].num_vars if polys else 0
    if len(polys) != n or any(p.num_vars != n for p in polys):
        raise DimensionMismatchError(f"A Jacobian needs n polynomials in n variables, got {len(polys)} in {n}")
    return _determinant([p.gradient() for p in polys], n)


def steinberg_factor(polys: Sequence[Polynomial]) -> Scalar:
    """
    The constant c with det J(π) = c·Π_{i<j}(X_i - X_j).

    :raises PreconditionError: If the Jacobian is not a nonzero multiple of the Vandermonde product
    """
    det = jacobian_determinant(polys)
    n = det.num_vars
    delta = vandermonde(list(range(n)), n)
    quotient, remainder = det.divide(delta)
    if not remainder.is_zero() or not quotient.is_constant() or quotient.is_zero():
        raise PreconditionError("The Jacobian determinant is not a nonzero multiple of the Vandermonde product")
    return quotient.constant_term()


def _alternating_generators(n: int) -> List[Tuple[int, ...]]:
    """3-cycles (0 1 k) generating the alternating group."""
    out = []
    for k in range(2, n):
        perm = list(range(n))
        perm[0], perm[1], perm[k] = 1, k, 0
        out.append(tuple(perm))
    return out


def alternating_decomposition(f: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """
    Split an 𝔄ₙ-invariant f as g₀ + g₁·Δ with g₀, g₁ symmetric and Δ = Π_{i<j}(X_i - X_j).

    :return: (g₀, g₁)
    :raises NotInvariantError: If f is not invariant under the alternating group
    :raises RewriteError: If the anti-symmetric part is not divisible by Δ
    """
    n = f.num_vars
    if n < 2:
        raise PreconditionError("The alternating decomposition needs at least two variables")
    for perm in _alternating_generators(n):
        if f.permute(perm) != f:
            raise NotInvariantError(f"f is not invariant under the 3-cycle {perm}", generator=str(perm))
    swap = tuple([1, 0] + list(range(2, n)))
    swapped = f.permute(swap)
    g0 = (f + swapped) / 2
    anti = (f - swapped) / 2
    delta = vandermonde(list(range(n)), n)
    quotient, remainder = anti.divide(delta)
    if not remainder.is_zero():
        raise RewriteError("The alternating part of f is not divisible by the Vandermonde product")
    group = SymmetricGroup(n)
    for part in (g0, quotient):
        if reynolds(group, part) != part:
            raise RewriteError("Decomposition parts are not symmetric")
    return g0, quotient


def harmonic_dimension(f: Polynomial) -> int:
    """Dimension of the derivative span, computed by an exact rank."""
    return len(derivative_span(f))


def pairing_matrix(polys: Sequence[Polynomial]) -> sympy.Matrix:
    """Gram matrix of the harmonic pairing on a family."""
    return sympy.Matrix([[sympy.Rational(str(harmonic_pairing(p, q))) for q in polys] for p in polys])


