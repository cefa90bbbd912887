"""
H-matrices of reflection groups: H_{u,v} = 𝓡_G(s_u·s_v) written in a generating set of the
invariant ring, for the copies s_1..s_η of one irreducible inside the covariant algebra.
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Sequence, Tuple

from core.errors import PreconditionError, RewriteError, UnsupportedError
from core.matrix_polynomial import MatrixPolynomial
from core.polynomial import Polynomial
from modules.groups.families import DihedralGroup, SymmetricGroup
from modules.groups.group_representation import GroupRepresentation
from modules.groups.polynomial_action import reynolds
from modules.groups.tableaux import check_partition, standard_tableaux
from modules.invariant_ring.higher_specht import higher_specht, primitive
from modules.invariant_ring.invariant_ring_config import GENERATOR_PREFIX, MAX_DIHEDRAL_N, MAX_SPECHT_N
from modules.invariant_ring.symmetric_functions import InvariantBasis, rewrite_in_invariants

logger = logging.getLogger("InvRing")


@dataclass
class HMatrix:
    """
    :param label: Irreducible the copies belong to
    :param matrix: Entries in the generator variables z_1..z_m
    :param polynomials: The copies s_1..s_η
    :param basis: Generating set the entries are written in
    """
    label: str
    matrix: MatrixPolynomial
    polynomials: List[Polynomial]
    basis: InvariantBasis

    @property
    def size(self) -> int:
        return self.matrix.dim

    def expand(self) -> MatrixPolynomial:
        """Entries with z_k replaced by π_k."""
        return self.matrix.substitute(self.basis.polynomials)

    def to_json(self) -> dict:
        return {"irrep": self.label, "size": self.size, "basis": self.basis.kind,
                "s": [p.format() for p in self.polynomials],
                "H": self.matrix.format(prefix=GENERATOR_PREFIX), "H_json": self.matrix.to_json()}


def h_matrix(rep: GroupRepresentation, polys: Sequence[Polynomial], basis: InvariantBasis,
             label: str = "") -> HMatrix:
    """
    Reynolds-average every product s_u·s_v and rewrite it in the generating set.

    :param rep: Group acting on the variables
    :param polys: The copies s_1..s_η
    :param basis: Generating set of the invariant ring
    :param label: Irreducible label for reports
    :return: HMatrix
    :raises RewriteError: If an entry is not expressible in the generators
    """
    polys = list(polys)
    if not polys:
        raise PreconditionError("An H-matrix needs at least one polynomial")
    size = len(polys)
    entries = [[None] * size for _ in range(size)]
    for u in range(size):
        for v in range(u, size):
            averaged = reynolds(rep, polys[u] * polys[v])
            rewritten = rewrite_in_invariants(averaged, basis)
            if basis.expand(rewritten) != averaged:
                raise RewriteError(f"H entry ({u}, {v}) does not expand back to its Reynolds average")
            entries[u][v] = entries[v][u] = rewritten
    result = HMatrix(label, MatrixPolynomial(entries), polys, basis)
    logger.info(f"{rep.name}: H-matrix for {label or 'the given copies'} of size {size}")
    return result


def parse_shape(text: str) -> Tuple[int, ...]:
    """ "(2,1)", "2,1" or "21" (single-digit parts) to a partition."""
    cleaned = text.strip().strip("()[] ")
    try:
        parts = [int(p) for p in cleaned.split(",")] if "," in cleaned else [int(c) for c in cleaned]
    except ValueError:
        raise PreconditionError(f"Cannot read a partition from {text!r}")
    return check_partition(parts)


def specht_copies(shape: Sequence[int]) -> List[Polynomial]:
    """F_{V₀}^T over the standard tableaux T (in standard order), V₀ the last standard tableau."""
    tableaux = standard_tableaux(check_partition(shape))
    if sum(tableaux[0].shape) > MAX_SPECHT_N:
        raise UnsupportedError(f"H-matrices of S_n are built for n ≤ {MAX_SPECHT_N}")
    return [higher_specht(t, tableaux[-1]).polynomial for t in tableaux]


def _z_power(m: int) -> Tuple[Polynomial, Polynomial]:
    """Real and imaginary part of (X₁ + iX₂)^m."""
    re, im = {}, {}
    for j in range(m + 1):
        coeff = comb(m, j)
        exponent = (m - j, j)
        if j % 2 == 0:
            re[exponent] = coeff * (-1) ** (j // 2)
        else:
            im[exponent] = coeff * (-1) ** ((j - 1) // 2)
    return Polynomial(2, re), Polynomial(2, im)


def dihedral_invariants(n: int) -> List[Polynomial]:
    """X₁² + X₂² and the reflection-invariant part of (X₁ + iX₂)^n (X₂³ - 3X₁²X₂ for n = 3)."""
    re, im = _z_power(n)
    return [Polynomial(2, {(2, 0): 1, (0, 2): 1}), -im if n % 2 else re]


def dihedral_covariants(n: int) -> Dict[str, List[Polynomial]]:
    """
    Copies of every irreducible of Dₙ (plane realization) in the covariant algebra, each copy
    represented by its vector negated by the reflection X₁ -> -X₁ (or the invariant vector for
    characters that fix the reflection).
    """
    if not 3 <= n <= MAX_DIHEDRAL_N:
        raise UnsupportedError(f"Dihedral covariant bases are built for 3 ≤ n ≤ {MAX_DIHEDRAL_N}")
    powers = {j: _z_power(j) for j in range(1, n + 1)}

    def negated(j: int) -> Polynomial:
        re, im = powers[j]
        return primitive(re if j % 2 else im)

    copies: Dict[str, List[Polynomial]] = {"rho_0": [Polynomial.constant(1, 2)]}
    re_n, im_n = powers[n]
    copies["rho_1"] = [primitive(re_n if n % 2 else im_n)]
    if n % 2 == 0:
        re_m, im_m = powers[n // 2]
        even = (n // 2) % 2 == 0
        copies["rho_2"] = [primitive(re_m if even else im_m)]
        copies["rho_3"] = [primitive(im_m if even else re_m)]
    for h in range(1, (n - 1) // 2 + 1):
        copies[f"tau_{h}"] = [negated(h), negated(n - h)]
    return copies


def default_h_setup(rep: GroupRepresentation, irrep: str) -> Tuple[List[Polynomial], InvariantBasis, str]:
    """
    Built-in copies and generating set for `symred hmatrix`: higher Specht copies with power sums
    for Sₙ, closed-form covariants with X₁²+X₂² and the degree-n invariant for the plane Dₙ.

    :raises UnsupportedError: For other groups
    :raises PreconditionError: For an unknown irreducible label
    """
    if isinstance(rep, SymmetricGroup):
        shape = parse_shape(irrep)
        if sum(shape) != rep.degree:
            raise PreconditionError(f"Shape {shape} is not a partition of {rep.degree}")
        label = "(" + ",".join(map(str, shape)) + ")"
        return specht_copies(shape), InvariantBasis.powersum(rep.degree), label
    if isinstance(rep, DihedralGroup) and rep.realization == "plane":
        copies = dihedral_covariants(rep.n)
        if irrep not in copies:
            raise PreconditionError(f"Unknown irreducible {irrep!r} of {rep.name}, expected one of {sorted(copies)}")
        return copies[irrep], InvariantBasis.custom(dihedral_invariants(rep.n)), irrep
    raise UnsupportedError(f"H-matrices are built in for S:n and D:n:plane, not {rep.name}")
