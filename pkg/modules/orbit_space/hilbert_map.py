"""
Hilbert maps Π(x) = (π₁(x), ..., π_m(x)) and the J-matrix J = (⟨dπ_i, dπ_j⟩) written in
the generators. For an orthogonal action J(Π(x)) is the Gram matrix of the differentials
at x, so J ⪰ 0 together with the relations describes the real image of Π.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from core.errors import DimensionMismatchError, NotInvariantError, PreconditionError, UnsupportedError
from core.matrix_polynomial import MatrixPolynomial
from core.polynomial import Polynomial
from core.scalars import Scalar, to_scalar
from modules.groups.families import DihedralGroup, SymmetricGroup
from modules.groups.group_representation import GroupRepresentation
from modules.groups.polynomial_action import is_invariant
from modules.invariant_ring.h_matrix import dihedral_invariants
from modules.invariant_ring.symmetric_functions import InvariantBasis, rewrite_in_invariants
from modules.orbit_space.orbit_space_config import GENERATOR_PREFIX

logger = logging.getLogger("OrbitSpace")


@dataclass
class HilbertMap:
    """
    :param basis: Generators π₁..π_m of the invariant ring
    :param group: Group the generators are checked against (optional)
    :param relations: Polynomials in z₁..z_m vanishing on the image of Π
    """
    basis: InvariantBasis
    group: Optional[GroupRepresentation] = None
    relations: List[Polynomial] = field(default_factory=list)

    def __post_init__(self):
        if self.group is not None:
            if self.group.degree != self.num_vars:
                raise DimensionMismatchError(f"{self.group.name} acts on {self.group.degree} variables, "
                                             f"the generators use {self.num_vars}")
            for i, p in enumerate(self.generators):
                if not is_invariant(self.group, p):
                    raise NotInvariantError(f"Generator π{i + 1} = {p.format()} is not invariant under "
                                            f"{self.group.name}", item=i)
        for r in self.relations:
            if r.num_vars != self.size:
                raise DimensionMismatchError(f"Relation in {r.num_vars} variables for {self.size} generators")

    @classmethod
    def for_group(cls, rep: GroupRepresentation, basis: str = "e") -> "HilbertMap":
        """
        Built-in generators: e_k or p_k for S:n, X₁²+X₂² and the degree-n invariant for D:n:plane.

        :raises UnsupportedError: For groups without built-in generators
        """
        if isinstance(rep, SymmetricGroup):
            return cls(InvariantBasis.from_name(basis, rep.degree), rep)
        if isinstance(rep, DihedralGroup) and rep.realization == "plane":
            return cls(InvariantBasis.custom(dihedral_invariants(rep.n)), rep)
        raise UnsupportedError(f"No built-in invariant generators for {rep.name}; supply them with --invariants")

    @property
    def generators(self) -> List[Polynomial]:
        return self.basis.polynomials

    @property
    def num_vars(self) -> int:
        return self.basis.num_vars

    @property
    def size(self) -> int:
        return self.basis.size

    def evaluate(self, point: Sequence) -> List[Scalar]:
        """Π(x), exact for exact x."""
        return [to_scalar(p.evaluate(point)) for p in self.generators]

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Π at many points: shape (k, m)."""
        return np.stack([np.real(p.evaluate_many(points)) for p in self.generators], axis=1)

    def verify_relations(self) -> None:
        """
        :raises PreconditionError: If a relation does not vanish identically after z ↦ Π(x)
        """
        for k, r in enumerate(self.relations):
            image = r.substitute(self.generators)
            if not image.is_zero():
                raise PreconditionError(f"Relation {k} ({r.format(prefix=GENERATOR_PREFIX)}) leaves "
                                        f"{image.format()} after substitution")

    def to_json(self) -> dict:
        return {"group": None if self.group is None else self.group.name, "basis": self.basis.kind,
                "generators": [p.format() for p in self.generators],
                "relations": [r.format(prefix=GENERATOR_PREFIX) for r in self.relations]}


def differential_gram(hilbert: HilbertMap) -> List[List[Polynomial]]:
    """⟨dπ_i, dπ_j⟩ = Σ_k ∂π_i/∂x_k·∂π_j/∂x_k as polynomials in x."""
    gradients = [p.gradient() for p in hilbert.generators]
    m = hilbert.size
    gram = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            entry = Polynomial.zero(hilbert.num_vars)
            for a, b in zip(gradients[i], gradients[j]):
                entry = entry + a * b
            gram[i][j] = gram[j][i] = entry
    return gram


def j_matrix(hilbert: HilbertMap) -> MatrixPolynomial:
    """
    J-matrix of a Hilbert map in the generator variables z₁..z_m.

    :param hilbert: HilbertMap
    :return: MatrixPolynomial with J(Π(x)) equal to the differential Gram matrix at x
    :raises RewriteError: If a Gram entry is not in the algebra generated by π
    """
    gram = differential_gram(hilbert)
    m = hilbert.size
    entries = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            entries[i][j] = entries[j][i] = rewrite_in_invariants(gram[i][j], hilbert.basis)
    result = MatrixPolynomial(entries)
    logger.info(f"J-matrix of size {m}, entry degree ≤ {result.degree} in {GENERATOR_PREFIX}1..{GENERATOR_PREFIX}{m}")
    return result
