"""
Block diagonalization of matrices in the commutant of a representation.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import numpy as np

from core.config import Tolerances
from core.errors import DimensionMismatchError, NotInvariantError, PreconditionError
from core.matrices import (as_matrix, from_sympy_matrix, is_exact_matrix, matrices_equal, matrix_to_json, to_float,
                           to_sympy_matrix, zeros)
from modules.groups.group_representation import GroupRepresentation
from modules.symmetry_adapted.adapted_basis import SymmetryAdaptedBasis, symmetry_adapted_basis

logger = logging.getLogger("SymAdapted")


def _product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if is_exact_matrix(a) and is_exact_matrix(b):
        return a.dot(b)
    return to_float(a) @ to_float(b)


def check_commutes(rep: GroupRepresentation, x: np.ndarray, tol: float = Tolerances.FLOAT) -> None:
    """
    :raises DimensionMismatchError: If x is not degree × degree
    :raises NotInvariantError: Naming the first generator with M(g)·X ≠ X·M(g)
    """
    if x.shape != (rep.degree, rep.degree):
        raise DimensionMismatchError(f"Matrix of shape {x.shape} for a {rep.degree}-dimensional representation")
    for g in rep.generators():
        m = rep.matrix(g)
        if not matrices_equal(_product(m, x), _product(x, m), tol):
            raise NotInvariantError(f"Matrix does not commute with generator {rep.label(g)}",
                                    generator=rep.label(g))


def commutant_average(rep: GroupRepresentation, x) -> np.ndarray:
    """
    (1/|G|) Σ_g M(g)·X·M(g)ᵀ, the projection of X onto the invariant matrices.
    """
    x = as_matrix(x)
    if x.shape != (rep.degree, rep.degree):
        raise DimensionMismatchError(f"Matrix of shape {x.shape} for a {rep.degree}-dimensional representation")
    n = rep.degree
    exact = is_exact_matrix(x)
    total = zeros(n, n) if exact else np.zeros((n, n), dtype=x.dtype)
    for g in rep.elements():
        perm = rep.permutation(g)
        if perm is not None:
            moved = np.empty_like(x)
            moved[np.ix_(perm, perm)] = x
            total = total + moved
        else:
            m = rep.matrix(g)
            total = total + _product(_product(m, x), m.T)
    if total.dtype == object:
        return as_matrix(total / Fraction(rep.order))
    return total / rep.order


@dataclass
class Block:
    index: int
    label: str
    kind: str
    repeats: int
    matrix: np.ndarray

    def to_json(self) -> dict:
        return {"index": self.index, "label": self.label, "kind": self.kind, "repeats": self.repeats,
                "matrix": matrix_to_json(self.matrix)}


@dataclass
class BlockDiagonalization:
    """
    X in the symmetry-adapted basis: one block per isotypic component, appearing
    `repeats` times on the diagonal of B⁻¹XB.
    """
    blocks: List[Block]
    transformed: np.ndarray
    off_block_mass: float
    repetition_mass: float
    permutation: List[int]
    basis: SymmetryAdaptedBasis = field(repr=False)

    def spectrum(self) -> np.ndarray:
        """Eigenvalues of X from the blocks, each counted `repeats` times, sorted."""
        values = []
        for block in self.blocks:
            if block.matrix.size == 0:
                continue
            eig = np.linalg.eigvals(to_float(block.matrix))
            values.extend(list(eig) * block.repeats)
        return np.array(sorted(values, key=lambda z: (round(z.real, 9), round(z.imag, 9))))

    def to_json(self) -> dict:
        return {"blocks": [b.to_json() for b in self.blocks], "off_block_mass": self.off_block_mass,
                "repetition_mass": self.repetition_mass, "permutation": self.permutation}


def block_diagonalize(rep: GroupRepresentation, x, basis: Optional[SymmetryAdaptedBasis] = None,
                      flavor: str = "real", tol: float = Tolerances.FLOAT) -> BlockDiagonalization:
    """
    Transform an invariant matrix to the symmetry-adapted basis and extract its blocks.

    :param rep: Group representation
    :param x: Matrix commuting with every M(g)
    :param basis: Symmetry-adapted basis (built with `flavor` when omitted)
    :param flavor: Basis flavor when no basis is given
    :param tol: Float tolerance for the commutation check
    :return: BlockDiagonalization
    :raises NotInvariantError: If x does not commute with some generator
    """
    x = as_matrix(x)
    check_commutes(rep, x, tol)
    if basis is None:
        basis = symmetry_adapted_basis(rep, flavor)
    if basis.dimension != rep.degree:
        raise PreconditionError(f"Basis of size {basis.dimension} for a {rep.degree}-dimensional representation")
    b = basis.matrix()
    if is_exact_matrix(b) and is_exact_matrix(x):
        bs = to_sympy_matrix(b)
        transformed = from_sympy_matrix(bs.solve(to_sympy_matrix(x) * bs))
    else:
        bf = to_float(b)
        transformed = np.linalg.solve(bf, to_float(x) @ bf)

    n = rep.degree
    owner = np.zeros(n, dtype=int)
    alpha_of = np.zeros(n, dtype=int)
    for k, comp in enumerate(basis.components):
        for j in range(comp.multiplicity):
            for p in range(comp.parts):
                for a in range(comp.dim):
                    owner[comp.positions[j][p][a]] = k
                    alpha_of[comp.positions[j][p][a]] = a
    allowed = (owner[:, None] == owner[None, :]) & (alpha_of[:, None] == alpha_of[None, :])
    magnitudes = np.abs(to_float(transformed))
    off_block_mass = float(np.max(magnitudes[~allowed], initial=0.0))

    blocks, permutation, repetition_mass = [], [], 0.0
    for comp in basis.components:
        first = comp.block_positions(0)
        block = transformed[np.ix_(first, first)]
        for a in range(1, comp.dim):
            other = comp.block_positions(a)
            diff = np.abs(to_float(transformed[np.ix_(other, other)]) - to_float(block))
            repetition_mass = max(repetition_mass, float(np.max(diff, initial=0.0)))
        blocks.append(Block(comp.index, comp.label, comp.kind, comp.dim, block))
        for a in range(comp.dim):
            permutation.extend(comp.block_positions(a))
    if off_block_mass > max(tol, Tolerances.DEPENDENCE) * max(1.0, float(np.max(magnitudes, initial=0.0))):
        logger.warning(f"{rep.name}: off-block mass {off_block_mass:.3g} after block diagonalization")
    logger.debug(f"{rep.name}: block sizes {[blk.matrix.shape[0] for blk in blocks]}")
    return BlockDiagonalization(blocks, transformed, off_block_mass, repetition_mass, permutation, basis)
