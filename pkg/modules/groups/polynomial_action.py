"""
Group actions on polynomials: substitution action, Reynolds operator, the induced
representation on monomials, multiplicities and Frobenius–Schur indicators.
"""

import logging
from collections import deque
from fractions import Fraction
from typing import Dict, List, Sequence

import numpy as np

from core.config import Tolerances
from core.errors import DimensionMismatchError, PreconditionError
from core.matrices import as_matrix
from core.polynomial import Exponent, Polynomial, monomials_of_degree, monomials_up_to
from core.scalars import Scalar, to_scalar
from modules.groups.families import permutation_matrix
from modules.groups.group_representation import CharacterTable, GroupRepresentation

logger = logging.getLogger("Groups")


def _check_degree(rep: GroupRepresentation, f: Polynomial) -> None:
    if f.num_vars != rep.degree:
        raise DimensionMismatchError(
            f"{rep.name} acts on {rep.degree} variables, polynomial has {f.num_vars}")


def act_on_polynomial(rep: GroupRepresentation, g, f: Polynomial) -> Polynomial:
    """
    g·f: substitute X_i -> Σ_j M(g)_{ji} X_j (so g·X_i = X_{g(i)} for permutations).

    :param rep: Group representation on rep.degree variables
    :param g: Group element
    :param f: Polynomial in rep.degree variables
    :return: g·f
    :raises DimensionMismatchError: If the variable count differs from the degree
    """
    _check_degree(rep, f)
    perm = rep.permutation(g)
    if perm is not None:
        return f.permute(perm)
    return f.linear_transform(rep.matrix(g))


def exponent_orbit(exponent: Exponent, perms: Sequence[Sequence[int]]) -> List[Exponent]:
    """Orbit of an exponent vector under the group generated by coordinate permutations."""
    seen = {tuple(exponent)}
    queue = deque([tuple(exponent)])
    while queue:
        e = queue.popleft()
        for perm in perms:
            image = [0] * len(e)
            for i, v in enumerate(e):
                image[perm[i]] = v
            image = tuple(image)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return sorted(seen)


def reynolds(rep: GroupRepresentation, f: Polynomial, rationalize: bool = True) -> Polynomial:
    """
    Reynolds operator 𝓡_G(f) = (1/|G|) Σ_g g·f.

    Permutation actions average each monomial over its exponent orbit; other actions sum
    over all elements (float matrices are rounded back to rationals when rationalize is set).

    :param rep: Group representation
    :param f: Polynomial in rep.degree variables
    :param rationalize: Snap float coefficients to nearby rationals
    :return: Invariant polynomial
    """
    _check_degree(rep, f)
    if rep.is_permutation:
        perms = [rep.permutation(g) for g in rep.generators()]
        orbits: Dict[Exponent, List[Exponent]] = {}
        terms: Dict[Exponent, Scalar] = {}
        for exponent, coeff in f.terms.items():
            if exponent not in orbits:
                orbit = exponent_orbit(exponent, perms)
                for member in orbit:
                    orbits[member] = orbit
            orbit = orbits[exponent]
            share = coeff / len(orbit)
            for member in orbit:
                terms[member] = terms.get(member, Fraction(0)) + share
        return Polynomial(f.num_vars, terms)
    total = Polynomial.zero(f.num_vars)
    for g in rep.elements():
        total = total + act_on_polynomial(rep, g, f)
    total = total / rep.order
    if not total.is_exact():
        total = total.rationalized() if rationalize else total.chop()
    return total


def is_invariant(rep: GroupRepresentation, f: Polynomial, tol: float = Tolerances.FLOAT) -> bool:
    """Invariance under every generator (exact comparison for exact data)."""
    _check_degree(rep, f)
    for g in rep.generators():
        image = act_on_polynomial(rep, g, f)
        if f.is_exact() and image.is_exact():
            if image != f:
                return False
        elif not image.is_close(f, tol):
            return False
    return True


def multiplicities(rep: GroupRepresentation, tol: float = Tolerances.FLOAT) -> List[int]:
    """
    m_i = ⟨χ_ρ, χ_i⟩ for every irreducible character.

    :raises PreconditionError: If an inner product is not (close to) a non-negative integer
    """
    table = rep.character_table()
    chi = rep.class_characters()
    result = []
    for label, row in zip(table.labels, table.rows):
        value = table.inner(chi, row)
        rounded = round(complex(value).real)
        if abs(complex(value) - rounded) > max(tol, 1e-6) or rounded < 0:
            raise PreconditionError(f"Multiplicity of {label} is not an integer: {value}")
        result.append(int(rounded))
    return result


def frobenius_schur_indicator(rep: GroupRepresentation, index: int) -> int:
    """
    (1/|G|) Σ_g χ(g²): +1 real (type I), 0 complex (type II), -1 quaternionic (type III).
    """
    table = rep.character_table()
    row = table.rows[index]
    total = Fraction(0)
    for cls in table.classes:
        square = rep.multiply(cls.representative, cls.representative)
        total = total + cls.size * row[rep.class_index(square)]
    value = complex(total) / rep.order
    indicator = round(value.real)
    if abs(value - indicator) > 1e-6 or indicator not in (-1, 0, 1):
        raise PreconditionError(f"Frobenius–Schur indicator of {table.labels[index]} is {value}")
    return int(indicator)


class PolynomialSpaceRepresentation(GroupRepresentation):
    """
    The action of a base group on the monomial basis of polynomials of degree ≤ d
    (or exactly d). Group law, classes, characters and irreducibles are the base group's.
    """

    def __init__(self, base: GroupRepresentation, degree: int, homogeneous: bool = False):
        """
        :param base: Representation on the variables
        :param degree: Polynomial degree d
        :param homogeneous: Only monomials of degree exactly d
        """
        self.base = base
        self.poly_degree = degree
        self.homogeneous = homogeneous
        self.monomials: List[Exponent] = (monomials_of_degree(base.degree, degree) if homogeneous
                                          else monomials_up_to(base.degree, degree))
        self._position = {e: i for i, e in enumerate(self.monomials)}
        super().__init__(len(self.monomials), f"{base.name}[deg{'=' if homogeneous else '≤'}{degree}]")
        self.family = base.family
        self._matrix_cache: Dict = {}

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def identity(self):
        return self.base.identity

    def multiply(self, g, h):
        return self.base.multiply(g, h)

    def inverse(self, g):
        return self.base.inverse(g)

    def generators(self):
        return self.base.generators()

    def elements(self):
        return self.base.elements()

    def label(self, g) -> str:
        return self.base.label(g)

    def conjugacy_classes(self):
        return self.base.conjugacy_classes()

    def class_index(self, g) -> int:
        return self.base.class_index(g)

    def character_table(self) -> CharacterTable:
        return self.base.character_table()

    @property
    def has_irreps(self) -> bool:
        return self.base.has_irreps

    def irrep_matrix(self, index: int, g) -> np.ndarray:
        return self.base.irrep_matrix(index, g)

    @property
    def is_permutation(self) -> bool:
        return self.base.is_permutation

    def permutation(self, g):
        perm = self.base.permutation(g)
        if perm is None:
            return None
        images = []
        for e in self.monomials:
            image = [0] * len(e)
            for i, v in enumerate(e):
                image[perm[i]] = v
            images.append(self._position[tuple(image)])
        return tuple(images)

    def monomial_polynomial(self, index: int) -> Polynomial:
        return Polynomial.monomial(self.monomials[index])

    def vector_to_polynomial(self, vector: Sequence) -> Polynomial:
        return Polynomial(self.base.degree, {e: to_scalar(v) for e, v in zip(self.monomials, vector)})

    def polynomial_to_vector(self, f: Polynomial) -> List[Scalar]:
        vector = [Fraction(0)] * len(self.monomials)
        for e, c in f.terms.items():
            if e not in self._position:
                raise PreconditionError(f"Monomial {e} is outside the space {self.name}")
            vector[self._position[e]] = c
        return vector

    def matrix(self, g) -> np.ndarray:
        """Column j holds the coefficients of g·(j-th monomial)."""
        key = g
        if key not in self._matrix_cache:
            perm = self.permutation(g)
            if perm is not None:
                value = permutation_matrix(perm)
            else:
                columns = [self.polynomial_to_vector(act_on_polynomial(self.base, g, self.monomial_polynomial(j)).chop())
                           for j in range(len(self.monomials))]
                value = as_matrix(np.array(columns, dtype=object).T.tolist())
            self._matrix_cache[key] = value
        return self._matrix_cache[key]
