"""
Generating sets of invariant rings and rewriting invariants in them.

Rewritten invariants are polynomials in generator variables z_1..z_m, with z_k standing for the
k-th basis polynomial.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from core.errors import (DimensionMismatchError, InconsistentSystemError, NotInvariantError, PreconditionError,
                         RewriteError)
from core.matrices import exact_solve
from core.polynomial import Exponent, Polynomial, elementary_symmetric, grlex_key, power_sum
from modules.groups.families import SymmetricGroup
from modules.groups.polynomial_action import reynolds
from modules.invariant_ring.invariant_ring_config import (BASIS_KINDS, CUSTOM_KIND, GENERATOR_PREFIX, MAX_NEWTON_N,
                                                          REWRITE_STEPS)

logger = logging.getLogger("InvRing")

DIRECTIONS = ("e2p", "p2e")


@dataclass
class InvariantBasis:
    """
    :param kind: "elementary", "powersum" or "custom"
    :param num_vars: Number of variables n of the original ring
    :param polynomials: The generators π_1..π_m
    """
    kind: str
    num_vars: int
    polynomials: List[Polynomial] = field(default_factory=list)

    @classmethod
    def elementary(cls, n: int) -> "InvariantBasis":
        return cls("elementary", n, [elementary_symmetric(n, k) for k in range(1, n + 1)])

    @classmethod
    def powersum(cls, n: int) -> "InvariantBasis":
        return cls("powersum", n, [power_sum(n, k) for k in range(1, n + 1)])

    @classmethod
    def custom(cls, polynomials: Sequence[Polynomial]) -> "InvariantBasis":
        polynomials = list(polynomials)
        if not polynomials:
            raise PreconditionError("A custom invariant basis needs at least one polynomial")
        counts = {p.num_vars for p in polynomials}
        if len(counts) != 1:
            raise DimensionMismatchError(f"Basis polynomials use different variable counts: {sorted(counts)}")
        if any(p.degree < 1 for p in polynomials):
            raise PreconditionError("Basis polynomials must be non-constant")
        return cls(CUSTOM_KIND, counts.pop(), polynomials)

    @classmethod
    def from_name(cls, name: str, n: int) -> "InvariantBasis":
        """ "e" / "p" (or the long names) for n variables."""
        kind = BASIS_KINDS.get(name, name)
        if kind == "elementary":
            return cls.elementary(n)
        if kind == "powersum":
            return cls.powersum(n)
        raise PreconditionError(f"Unknown basis {name!r}, expected one of {sorted(BASIS_KINDS)}")

    @property
    def size(self) -> int:
        return len(self.polynomials)

    def expand(self, g: Polynomial) -> Polynomial:
        """Substitute z_k -> π_k."""
        if g.num_vars != self.size:
            raise DimensionMismatchError(f"Expression in {g.num_vars} generators for a basis of {self.size}")
        return g.substitute(self.polynomials)

    def to_json(self) -> dict:
        return {"kind": self.kind, "num_vars": self.num_vars, "polynomials": [p.to_json() for p in self.polynomials]}


def _newton_tables(m: int) -> Tuple[List[Polynomial], List[Polynomial]]:
    """
    e_k in terms of p_1..p_m and p_k in terms of e_1..e_m for k = 0..m, from
    k·e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i}·p_i.
    """
    z = Polynomial.variables(m)
    one = Polynomial.constant(1, m)
    e_of_p = [one]
    for k in range(1, m + 1):
        total = Polynomial.zero(m)
        for i in range(1, k + 1):
            total = total + e_of_p[k - i] * z[i - 1] * (-1) ** (i - 1)
        e_of_p.append(total / k)
    p_of_e = [Polynomial.constant(m, m)]
    for k in range(1, m + 1):
        total = z[k - 1] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            e_index = k - i
            total = total + z[e_index - 1] * p_of_e[i] * (-1) ** (k - 1 + i)
        p_of_e.append(total)
    return e_of_p, p_of_e


def newton_convert(expr: Polynomial, direction: str, n: int) -> Polynomial:
    """
    Convert between the elementary and power-sum bases with Newton's identities.

    :param expr: Polynomial in z_1..z_m, read as e_1..e_m ("e2p") or p_1..p_m ("p2e")
    :param direction: "e2p" or "p2e"
    :param n: Number of variables of the underlying ring
    :return: The same invariant in the other basis
    :raises PreconditionError: If m > n, n exceeds MAX_NEWTON_N or the direction is unknown
    """
    if direction not in DIRECTIONS:
        raise PreconditionError(f"Unknown direction {direction!r}, expected one of {DIRECTIONS}")
    if n > MAX_NEWTON_N:
        raise PreconditionError(f"Newton conversion supports n ≤ {MAX_NEWTON_N}, got {n}")
    m = expr.num_vars
    if m > n:
        raise PreconditionError(f"Index {m} exceeds the number of variables {n}")
    if m == 0:
        return expr
    e_of_p, p_of_e = _newton_tables(m)
    images = e_of_p[1:] if direction == "e2p" else p_of_e[1:]
    return expr.substitute(images)


def _check_symmetric(f: Polynomial) -> None:
    if f.num_vars and reynolds(SymmetricGroup(f.num_vars), f) != f:
        raise NotInvariantError(f"{f.format()} is not symmetric")


def _rewrite_elementary(f: Polynomial, steps: int) -> Polynomial:
    """Leading-term elimination: lead X^α matches e_1^{α1-α2}·e_2^{α2-α3}···e_n^{αn}."""
    n = f.num_vars
    e = [elementary_symmetric(n, k) for k in range(1, n + 1)]
    remainder = f
    result: Dict[Exponent, Fraction] = {}
    for _ in range(steps):
        if remainder.is_zero():
            return Polynomial(n, result)
        alpha = remainder.leading_exponent()
        if any(alpha[i] < alpha[i + 1] for i in range(n - 1)):
            raise RewriteError(f"Leading exponent {alpha} is not a partition; the input is not symmetric")
        gamma = tuple(alpha[i] - (alpha[i + 1] if i + 1 < n else 0) for i in range(n))
        coeff = remainder.coefficient(alpha)
        product = Polynomial.constant(coeff, n)
        for k, power in enumerate(gamma):
            if power:
                product = product * e[k] ** power
        remainder = remainder - product
        result[gamma] = result.get(gamma, Fraction(0)) + coeff
    raise RewriteError(f"Elimination did not finish within {steps} steps")


def _weighted_exponents(degrees: Sequence[int], targets: Sequence[int]) -> List[Tuple[int, ...]]:
    top = max(targets)
    wanted = set(targets)
    out = []
    for a in itertools.product(*[range(top // d + 1) for d in degrees]):
        if sum(x * d for x, d in zip(a, degrees)) in wanted:
            out.append(a)
    return out


def _rewrite_linear(f: Polynomial, basis: InvariantBasis) -> Polynomial:
    """Exact linear solve for f = Σ c_a π^a over the exponent vectors a of matching degree."""
    homogeneous = all(p.is_homogeneous() for p in basis.polynomials)
    degrees = [p.degree for p in basis.polynomials]
    targets = sorted({sum(e) for e in f.support()}) if homogeneous else list(range(f.degree + 1))
    candidates = _weighted_exponents(degrees, targets or [0])
    products = []
    for a in candidates:
        product = Polynomial.constant(1, basis.num_vars)
        for p, power in zip(basis.polynomials, a):
            if power:
                product = product * p ** power
        products.append(product)
    support = sorted({e for p in products for e in p.support()} | set(f.support()), key=grlex_key)
    rows = [[p.coefficient(e) for p in products] for e in support]
    try:
        solution, null = exact_solve(rows, [f.coefficient(e) for e in support])
    except InconsistentSystemError:
        raise RewriteError(f"{f.format()} is not in the algebra generated by the basis")
    if null:
        logger.warning(f"Basis products are linearly dependent ({len(null)} relations); using one representation")
    return Polynomial(basis.size, {a: c for a, c in zip(candidates, solution)})


def rewrite_in_invariants(f: Polynomial, basis: InvariantBasis, steps: int = REWRITE_STEPS) -> Polynomial:
    """
    Express an invariant in the generators of a basis.

    :param f: Invariant polynomial (symmetric for the elementary and power-sum bases)
    :param basis: InvariantBasis
    :param steps: Elimination step cap
    :return: g in z_1..z_m with g(π_1, ..., π_m) = f
    :raises NotInvariantError: If f is not symmetric (elementary / power-sum bases)
    :raises RewriteError: If f is not in the generated algebra or elimination stalls
    """
    if f.num_vars != basis.num_vars:
        raise DimensionMismatchError(f"f has {f.num_vars} variables, the basis {basis.num_vars}")
    if not f.is_exact():
        f = f.rationalized()
    if basis.kind == CUSTOM_KIND:
        g = _rewrite_linear(f, basis)
    else:
        _check_symmetric(f)
        g = _rewrite_elementary(f, steps)
        if basis.kind == "powersum":
            g = newton_convert(g, "e2p", basis.num_vars)
    if basis.expand(g) != f:
        raise RewriteError(f"Rewritten form of {f.format()} does not expand back to it")
    logger.debug(f"{f.format()} = {g.format(prefix=GENERATOR_PREFIX)}")
    return g
