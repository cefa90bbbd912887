"""
Sums of squares of invariant polynomials, one PSD block per isotypic component.

An invariant f of degree 2d is a sum of squares iff f = Σ_j ⟨A_j, B⁽ʲ⁾⟩ with A_j ⪰ 0, where
B⁽ʲ⁾_{u,v} = (1/|G|) Σ_g (g·f_{ju})(g·f_{jv}) and f_{j1}, ..., f_{jη_j} are the first vectors
of the η_j copies of the j-th irreducible inside the polynomials of degree ≤ d.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from core.core_report import Status
from core.errors import DimensionMismatchError, NotInvariantError, PreconditionError, UnsupportedError
from core.matrices import as_matrix, ldlt_psd_check, matrix_to_json
from core.matrix_polynomial import MatrixPolynomial
from core.polynomial import Exponent, Polynomial, grlex_key, linear_independence_rank
from core.scalars import Scalar
from modules.groups.families import SymmetricGroup
from modules.groups.group_representation import GroupRepresentation
from modules.groups.polynomial_action import PolynomialSpaceRepresentation, act_on_polynomial, multiplicities
from modules.invariant_ring.higher_specht import specht_generators
from modules.sos_invariant.affine_psd import AffinePsdProblem, PsdSearchResult, solve_affine_psd
from modules.sos_invariant.sos_invariant_config import GENERATOR_SOURCES, PROJECTION_ITERATIONS, SEARCH_TOL
from modules.symmetry_adapted.adapted_basis import symmetry_adapted_basis
from modules.symmetry_adapted.symmetry_adapted_config import KIND_PAIR

logger = logging.getLogger("SosInvariant")


def check_polynomial_invariant(rep: GroupRepresentation, f: Polynomial, tol: float = SEARCH_TOL) -> None:
    """
    :raises NotInvariantError: Naming the first generator that moves f
    """
    if f.num_vars != rep.degree:
        raise DimensionMismatchError(f"{rep.name} acts on {rep.degree} variables, f has {f.num_vars}")
    for g in rep.generators():
        image = act_on_polynomial(rep, g, f)
        same = image == f if f.is_exact() and image.is_exact() else image.is_close(f, tol)
        if not same:
            raise NotInvariantError(f"f is not invariant under {rep.label(g)}", generator=rep.label(g))


def monomial_action(rep: GroupRepresentation, monomials: Sequence[Exponent], g) -> np.ndarray:
    """
    P with g·y_j = Σ_i P[i, j]·y_i.

    :raises PreconditionError: If g maps some y_j outside the span of the basis
    """
    position = {m: i for i, m in enumerate(monomials)}
    columns = []
    for m in monomials:
        image = act_on_polynomial(rep, g, Polynomial.monomial(m))
        column = [Fraction(0)] * len(monomials)
        for e, c in image.terms.items():
            if e not in position:
                raise PreconditionError(f"{rep.label(g)} maps {Polynomial.monomial(m).format()} outside the "
                                        f"monomial basis")
            column[position[e]] = c
        columns.append(column)
    return as_matrix([[columns[j][i] for j in range(len(monomials))] for i in range(len(monomials))])


def average_gram(rep: GroupRepresentation, monomials: Sequence[Exponent], q) -> np.ndarray:
    """
    Q^G = (1/|G|) Σ_g P(g)·Q·P(g)ᵀ. For an invariant f = YᵀQY the average represents f as well
    and commutes with the monomial action.

    :param rep: Group acting on the variables
    :param monomials: Gram basis Y, closed under the action
    :param q: Gram matrix
    :return: Averaged Gram matrix
    :raises PreconditionError: If the basis is not closed under the action
    """
    q = as_matrix(q)
    if q.shape != (len(monomials), len(monomials)):
        raise DimensionMismatchError(f"Gram matrix {q.shape} for {len(monomials)} monomials")
    total = None
    for g in rep.elements():
        p = monomial_action(rep, monomials, g)
        term = p.dot(q).dot(p.T)
        total = term if total is None else total + term
    return total / rep.order


@dataclass
class GeneratorFamily:
    """The first vectors f_{j1..jη} of the copies of one irreducible."""
    index: int
    label: str
    polynomials: List[Polynomial]


def adapted_families(rep: GroupRepresentation, degree: int, homogeneous: bool) -> List[GeneratorFamily]:
    """
    Families from the real symmetry-adapted basis of the polynomials of degree ≤ d (or = d).
    A complex pair contributes its real half, plus the imaginary half when it occurs more than once.
    """
    space = PolynomialSpaceRepresentation(rep, degree, homogeneous)
    basis = symmetry_adapted_basis(space, flavor="real")
    families = []
    for comp in basis.components:
        parts = range(comp.parts) if comp.kind == KIND_PAIR and comp.multiplicity > 1 else range(1)
        polys = [space.vector_to_polynomial(basis.vectors[comp.positions[copy][part][0]])
                 for copy in range(comp.multiplicity) for part in parts]
        families.append(GeneratorFamily(comp.index, comp.label, polys))
    return families


def specht_families(rep: GroupRepresentation, degree: int, homogeneous: bool) -> List[GeneratorFamily]:
    """
    Families built from higher Specht polynomials times power-sum monomials (Sₙ only),
    checked against the character multiplicities of the polynomial space.

    :raises UnsupportedError: For groups other than SymmetricGroup
    :raises PreconditionError: If a family does not match its multiplicity
    """
    if not isinstance(rep, SymmetricGroup):
        raise UnsupportedError(f"Higher Specht generators need a symmetric group, got {rep.name}")
    space = PolynomialSpaceRepresentation(rep, degree, homogeneous)
    expected = multiplicities(space)
    generators = specht_generators(rep.degree, degree, homogeneous)
    labels = rep.character_table().labels
    families = []
    for index, shape in enumerate(rep.irrep_shapes()):
        polys = generators.get(shape, [])
        check_family(GeneratorFamily(index, labels[index], polys), expected[index])
        if polys:
            families.append(GeneratorFamily(index, labels[index], polys))
    return families


def check_family(family: GeneratorFamily, multiplicity: int) -> None:
    """
    :raises PreconditionError: If the family size or rank differs from the multiplicity
    """
    if len(family.polynomials) != multiplicity:
        raise PreconditionError(f"Generator family {family.label} has {len(family.polynomials)} polynomials, "
                                f"the irreducible occurs {multiplicity} times")
    if family.polynomials and linear_independence_rank(family.polynomials) != multiplicity:
        raise PreconditionError(f"Generator family {family.label} is linearly dependent")


def generator_families(rep: GroupRepresentation, degree: int, homogeneous: bool = False,
                       source: str = "adapted") -> List[GeneratorFamily]:
    if source not in GENERATOR_SOURCES:
        raise PreconditionError(f"Unknown generator source {source!r}, expected one of {GENERATOR_SOURCES}")
    if source == "higher-specht":
        return specht_families(rep, degree, homogeneous)
    return adapted_families(rep, degree, homogeneous)


def b_matrix(rep: GroupRepresentation, polys: Sequence[Polynomial]) -> MatrixPolynomial:
    """B_{u,v} = (1/|G|) Σ_g (g·f_u)(g·f_v)."""
    size = len(polys)
    entries = [[Polynomial.zero(rep.degree) for _ in range(size)] for _ in range(size)]
    for g in rep.elements():
        images = [act_on_polynomial(rep, g, f) for f in polys]
        for u in range(size):
            for v in range(u, size):
                entries[u][v] = entries[u][v] + images[u] * images[v]
    for u in range(size):
        for v in range(u, size):
            average = entries[u][v] / rep.order
            entries[u][v] = average if average.is_exact() else average.chop()
            entries[v][u] = entries[u][v]
    return MatrixPolynomial(entries, check_symmetric=False)


@dataclass
class SOSBlock:
    label: str
    index: int
    generators: List[Polynomial]
    b: MatrixPolynomial

    @property
    def size(self) -> int:
        return len(self.generators)


@dataclass
class BlockGramCertificate:
    """f = Σ_j ⟨A_j, B⁽ʲ⁾⟩ with every A_j ⪰ 0."""
    blocks: List[SOSBlock]
    matrices: List[np.ndarray]

    def polynomial(self) -> Polynomial:
        total = Polynomial.zero(self.blocks[0].b.num_vars if self.blocks else 0)
        for block, a in zip(self.blocks, self.matrices):
            total = total + block.b.pair(a)
        return total

    def to_json(self) -> dict:
        return {"blocks": [{"label": block.label, "A": matrix_to_json(a), "B": block.b.to_json()}
                           for block, a in zip(self.blocks, self.matrices)]}


@dataclass
class BlockSOSProblem:
    """
    :param target: Invariant polynomial f
    :param blocks: One SOSBlock per isotypic component
    :param group: Name of the group
    """
    target: Polynomial
    blocks: List[SOSBlock]
    group: str = ""
    _keys: List[Exponent] = field(default_factory=list, repr=False)

    @property
    def block_sizes(self) -> List[int]:
        return [b.size for b in self.blocks]

    def affine_problem(self) -> AffinePsdProblem:
        """Coefficient of every monomial of Σ⟨A_j, B⁽ʲ⁾⟩ - f as a linear equation in the entries of A."""
        keys = set(self.target.support())
        for block in self.blocks:
            for row in block.b.entries:
                for p in row:
                    keys.update(p.support())
        self._keys = sorted(keys, key=grlex_key)
        problem = AffinePsdProblem(self.block_sizes, [], [], [b.label for b in self.blocks])
        rows: List[List[Scalar]] = []
        for gamma in self._keys:
            row: List[Scalar] = [Fraction(0)] * problem.num_vars
            for k, (b, u, v) in enumerate(problem.variables):
                c = self.blocks[b].b[u, v].coefficient(gamma)
                row[k] = c if u == v else 2 * c
            rows.append(row)
        problem.rows = rows
        problem.rhs = [self.target.coefficient(gamma) for gamma in self._keys]
        return problem

    def to_json(self) -> dict:
        return {"group": self.group, "block_sizes": self.block_sizes,
                "blocks": [{"label": b.label, "generators": [p.format() for p in b.generators],
                            "B": b.b.to_json()} for b in self.blocks]}


@dataclass
class BlockSOSResult:
    status: Status
    problem: BlockSOSProblem = field(repr=False)
    certificate: Optional[BlockGramCertificate] = None
    reason: Optional[str] = None
    dof: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == Status.FEASIBLE

    def to_json(self) -> dict:
        return {"status": self.status.value, "reason": self.reason, "dof": self.dof,
                "block_sizes": self.problem.block_sizes,
                "certificate": None if self.certificate is None else self.certificate.to_json()}


def invariant_sos_blocks(rep: GroupRepresentation, f: Polynomial,
                         families: Optional[List[GeneratorFamily]] = None,
                         source: str = "adapted") -> BlockSOSProblem:
    """
    Block data B⁽ʲ⁾ of an invariant f of even degree.

    :param rep: Group acting on the variables
    :param f: Invariant polynomial
    :param families: Generator families; built from `source` when omitted
    :param source: "adapted" or "higher-specht"
    :return: BlockSOSProblem
    :raises NotInvariantError: If f is not invariant
    :raises PreconditionError: On odd degree or generator families of the wrong size
    """
    if f.is_zero() or f.degree % 2:
        raise PreconditionError(f"A sum of squares has even degree, got {f.degree}")
    check_polynomial_invariant(rep, f)
    homogeneous = f.is_homogeneous()
    if families is None:
        families = generator_families(rep, f.degree // 2, homogeneous, source)
    else:
        space = PolynomialSpaceRepresentation(rep, f.degree // 2, homogeneous)
        expected = multiplicities(space)
        for family in families:
            check_family(family, expected[family.index])
    blocks = [SOSBlock(family.label, family.index, family.polynomials, b_matrix(rep, family.polynomials))
              for family in families if family.polynomials]
    logger.info(f"{rep.name}: SOS blocks {[(b.label, b.size) for b in blocks]}")
    return BlockSOSProblem(f, blocks, rep.name)


def verify_certificate(certificate: BlockGramCertificate, f: Polynomial) -> bool:
    """Exact identity Σ⟨A_j, B⁽ʲ⁾⟩ = f and exact PSD of every A_j."""
    for block, a in zip(certificate.blocks, certificate.matrices):
        a = as_matrix(a)
        if a.shape != (block.size, block.size):
            return False
        try:
            if not ldlt_psd_check(a).psd:
                logger.debug(f"Block {block.label} is not PSD")
                return False
        except PreconditionError:
            return False
    if f.is_exact() and certificate.polynomial().is_exact():
        return certificate.polynomial() == f
    return certificate.polynomial().is_close(f)


def solve_blocks(problem: BlockSOSProblem, tol: float = SEARCH_TOL,
                 iterations: int = PROJECTION_ITERATIONS) -> BlockSOSResult:
    """
    Decide ∃ A_j ⪰ 0 with Σ⟨A_j, B⁽ʲ⁾⟩ = f; a feasible answer carries a verified certificate.
    """
    search: PsdSearchResult = solve_affine_psd(problem.affine_problem(), tol, iterations)
    certificate = None
    if search.feasible:
        certificate = BlockGramCertificate(problem.blocks, search.blocks)
        if not verify_certificate(certificate, problem.target):
            logger.warning("Block certificate failed verification: undecided")
            return BlockSOSResult(Status.UNDECIDED, problem, reason="certificate failed verification",
                                  dof=search.dof)
    logger.info(f"Block SOS over sizes {problem.block_sizes}: {search.status.value}"
                + (f" ({search.reason})" if search.reason else ""))
    return BlockSOSResult(search.status, problem, certificate, search.reason, search.dof)
