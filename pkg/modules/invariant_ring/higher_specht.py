"""
Specht and higher Specht polynomials of Sₙ.

For standard tableaux T, V of one shape, F_V^T = ε_V(X_{w(V)}^{i(w(T))}) where w(·) is the
column reading word and i(w) the index of that word. Polynomials are returned primitive
(integer coefficients with content 1), so F for the one-row shape is 1.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Sequence, Tuple

import numpy as np

from core.errors import PreconditionError
from core.matrices import as_matrix, exact_solve
from core.polynomial import Polynomial, power_sum, vandermonde
from modules.groups.families import SymmetricGroup
from modules.groups.polynomial_action import PolynomialSpaceRepresentation, multiplicities
from modules.groups.tableaux import Partition, Tableau, check_partition, partitions, standard_tableaux
from modules.invariant_ring.invariant_ring_config import MAX_SPECHT_N

logger = logging.getLogger("InvRing")


def primitive(f: Polynomial) -> Polynomial:
    """f divided by the gcd of its (integral) coefficients; other polynomials are returned as is."""
    coeffs = list(f.terms.values())
    if not coeffs or not all(getattr(c, "denominator", None) == 1 for c in coeffs):
        return f
    content = reduce(math.gcd, (int(c.numerator) for c in coeffs))
    return f / content if content > 1 else f


def specht_polynomial(tableau: Tableau) -> Polynomial:
    """sp_T = Π over the columns of T of the Vandermonde product of the column entries."""
    n = tableau.n
    result = Polynomial.constant(1, n)
    for column in tableau.columns():
        result = result * vandermonde([v - 1 for v in column], n)
    return result


def word_index(word: Sequence[int]) -> Tuple[int, ...]:
    """
    Index of a word in 1..n: the letter 1 gets 0, and k+1 gets the index of k, plus one when k+1
    stands left of k. Returned position by position along the word.
    """
    position = {v: i for i, v in enumerate(word)}
    index = {1: 0}
    for k in range(1, len(word)):
        index[k + 1] = index[k] + (1 if position[k + 1] < position[k] else 0)
    return tuple(index[v] for v in word)


def charge(tableau: Tableau) -> int:
    return sum(word_index(tableau.word()))


def _set_permutations(blocks: Sequence[Sequence[int]], n: int) -> List[Tuple[Tuple[int, ...], int]]:
    """All products of permutations of the given blocks as (0-based perm, sign)."""
    per_block = []
    for block in blocks:
        options = []
        for image in itertools.permutations(block):
            inversions = sum(1 for a, b in itertools.combinations(range(len(image)), 2)
                             if block.index(image[a]) > block.index(image[b]))
            options.append((dict(zip(block, image)), -1 if inversions % 2 else 1))
        per_block.append(options)
    result = []
    for combo in itertools.product(*per_block):
        perm = list(range(n))
        sign = 1
        for mapping, s in combo:
            for src, dst in mapping.items():
                perm[src - 1] = dst - 1
            sign *= s
        result.append((tuple(perm), sign))
    return result


def young_symmetrize(tableau: Tableau, f: Polynomial) -> Polynomial:
    """ε_V(f) = Σ_{σ ∈ RStab(V)} Σ_{τ ∈ CStab(V)} sgn(τ)·τσ·f."""
    n = tableau.n
    symmetrized = Polynomial.zero(n)
    for perm, _ in _set_permutations(tableau.rows, n):
        symmetrized = symmetrized + f.permute(perm)
    result = Polynomial.zero(n)
    for perm, sign in _set_permutations(tableau.columns(), n):
        result = result + symmetrized.permute(perm) * sign
    return result


@dataclass
class HigherSpecht:
    t: Tableau
    v: Tableau
    word: Tuple[int, ...]
    index: Tuple[int, ...]
    charge: int
    monomial: Polynomial
    polynomial: Polynomial

    def to_json(self) -> dict:
        return {"T": self.t.to_json(), "V": self.v.to_json(), "word": "".join(map(str, self.word)),
                "index": "".join(map(str, self.index)), "charge": self.charge, "monomial": self.monomial.format(),
                "polynomial": self.polynomial.to_json()}


def higher_specht(t: Tableau, v: Tableau) -> HigherSpecht:
    """
    :param t: Standard tableau giving the exponents
    :param v: Standard tableau of the same shape giving the variables and the symmetrizer
    :return: HigherSpecht with F_V^T made primitive
    :raises PreconditionError: On a shape mismatch, non-standard input or n > MAX_SPECHT_N
    """
    if t.shape != v.shape:
        raise PreconditionError(f"Tableaux of shapes {t.shape} and {v.shape} do not match")
    if not (t.is_standard() and v.is_standard()):
        raise PreconditionError("Higher Specht polynomials need standard tableaux")
    if t.n > MAX_SPECHT_N:
        raise PreconditionError(f"Higher Specht polynomials are built for n ≤ {MAX_SPECHT_N}, got {t.n}")
    word = t.word()
    index = word_index(word)
    exponent = [0] * t.n
    for variable, power in zip(v.word(), index):
        exponent[variable - 1] = power
    monomial = Polynomial.monomial(exponent)
    polynomial = primitive(young_symmetrize(v, monomial))
    return HigherSpecht(t, v, word, index, sum(index), monomial, polynomial)


def higher_specht_family(shape: Sequence[int]) -> List[HigherSpecht]:
    """F_V^T for all pairs of standard tableaux of the shape."""
    tableaux = standard_tableaux(check_partition(shape))
    return [higher_specht(t, v) for v in tableaux for t in tableaux]


def _power_sum_monomials(n: int, degree: int) -> List[Polynomial]:
    """p_μ = Π p_{μ_i} over partitions μ of degree with parts ≤ n."""
    out = []
    for mu in partitions(degree, n):
        product = Polynomial.constant(1, n)
        for part in mu:
            product = product * power_sum(n, part)
        out.append(product)
    return out


def specht_generators(n: int, degree: int, homogeneous: bool = False) -> Dict[Partition, List[Polynomial]]:
    """
    First vectors of the copies of every irreducible W^λ inside the polynomials of degree ≤ d
    (or = d): p_μ·F_{V₀}^T over standard T with charge c(T) ≤ d and |μ| = d - c(T) (or ≤),
    with V₀ the last standard tableau of the shape.
    """
    if n > MAX_SPECHT_N:
        raise PreconditionError(f"Higher Specht generators are built for n ≤ {MAX_SPECHT_N}, got {n}")
    families: Dict[Partition, List[Polynomial]] = {}
    for shape in partitions(n):
        tableaux = standard_tableaux(shape)
        anchor = tableaux[-1]
        polys = []
        for t in tableaux:
            spec = higher_specht(t, anchor)
            if spec.charge > degree:
                continue
            extra = [degree - spec.charge] if homogeneous else range(degree - spec.charge + 1)
            for e in extra:
                polys.extend(p * spec.polynomial for p in _power_sum_monomials(n, e))
        families[shape] = polys
    logger.debug(f"S_{n} degree {degree}: generator counts {({s: len(p) for s, p in families.items()})}")
    return families


def _count_partitions(total: int, max_part: int) -> int:
    return len(partitions(total, max_part)) if total >= 0 else 0


def homogeneous_multiplicity(shape: Sequence[int], degree: int) -> int:
    """
    Multiplicity of W^λ in the forms of degree k: Σ over standard T of the number of
    invariant monomials p_μ of degree k - c(T).
    """
    shape = check_partition(shape)
    n = sum(shape)
    return sum(_count_partitions(degree - charge(t), n) for t in standard_tableaux(shape))


def character_multiplicity(shape: Sequence[int], degree: int) -> int:
    """The same multiplicity from the character of the degree-k monomial representation."""
    shape = check_partition(shape)
    group = SymmetricGroup(sum(shape))
    space = PolynomialSpaceRepresentation(group, degree, homogeneous=True)
    return multiplicities(space)[group.irrep_shapes().index(shape)]


def specht_action_matrix(shape: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """
    Matrix of a permutation on the basis {sp_T : T standard}; column j holds perm·sp_{T_j}
    in that basis.

    :raises PreconditionError: If the image leaves the span (never for valid input)
    """
    tableaux = standard_tableaux(check_partition(shape))
    basis = [specht_polynomial(t) for t in tableaux]
    support = sorted({e for p in basis for e in p.support()})
    rows = [[p.coefficient(e) for p in basis] for e in support]
    columns = []
    for p in basis:
        image = p.permute(perm)
        if any(e not in support for e in image.support()):
            raise PreconditionError("Permuted Specht polynomial leaves the span")
        solution, _ = exact_solve(rows, [image.coefficient(e) for e in support])
        columns.append(list(solution))
    return as_matrix([[columns[j][i] for j in range(len(basis))] for i in range(len(basis))])
