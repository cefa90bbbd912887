"""
Zonal matrices: the linear maps between an invariant matrix X and its commutant blocks.

    E_l(i, j)_{uv} = Σ_α e_{u,α}(i)·conj(e_{v,α}(j))
    X_ij = Σ_l ⟨E_l(i, j), M_l⟩

A realified pair with one copy contributes the 1×1 block 2·Re E_χ; with m ≥ 2 copies
it contributes the 2m×2m real embedding [[Re E_χ, Im E_χ], [-Im E_χ, Re E_χ]].
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from core.errors import DimensionMismatchError, PreconditionError
from core.matrices import as_matrix, is_exact_matrix, to_float
from core.scalars import is_exact, rationalize
from modules.groups.group_representation import GroupRepresentation
from modules.symmetry_adapted.adapted_basis import IsotypicComponent, SymmetryAdaptedBasis, symmetry_adapted_basis
from modules.symmetry_adapted.symmetry_adapted_config import KIND_PAIR, TIDY_DENOMINATOR, TIDY_TOL

logger = logging.getLogger("SymAdapted")


def _tidy_tensor(t: np.ndarray) -> np.ndarray:
    """Exact object tensor when every entry is a small-denominator rational, float otherwise."""
    if np.iscomplexobj(t):
        if np.max(np.abs(t.imag), initial=0.0) > TIDY_TOL:
            return t
        t = t.real
    snapped = [rationalize(float(x), TIDY_DENOMINATOR, TIDY_TOL) for x in t.flat]
    if all(is_exact(x) for x in snapped):
        out = np.empty(t.shape, dtype=object)
        out.flat[:] = snapped
        return out
    return t


@dataclass
class ZonalBlock:
    """
    entries[i, j] is the s×s matrix E_l(i, j); `repeats` is the irreducible dimension.
    """
    index: int
    label: str
    kind: str
    size: int
    repeats: int
    entries: np.ndarray = field(repr=False)

    def contract(self, a) -> np.ndarray:
        """Σ_ij a_ij·E_l(i, j)."""
        a = as_matrix(a)
        n = self.entries.shape[0]
        if a.shape != (n, n):
            raise DimensionMismatchError(f"Matrix of shape {a.shape} against zonal matrices of size {n}")
        flat = self.entries.reshape(n * n, self.size * self.size)
        if is_exact_matrix(a) and self.entries.dtype == object:
            out = a.reshape(n * n).dot(flat)
        else:
            out = to_float(a).reshape(n * n) @ to_float(flat)
        return as_matrix(out.reshape(self.size, self.size))


def _component_vectors(basis: SymmetryAdaptedBasis, comp: IsotypicComponent, alpha: int) -> np.ndarray:
    """n × m matrix whose columns are the copies e_{u,alpha} (complex copies for pairs)."""
    if comp.kind == KIND_PAIR:
        columns = [comp.complex_vectors[u][alpha] for u in range(comp.multiplicity)]
    else:
        columns = [basis.vectors[comp.positions[u][0][alpha]] for u in range(comp.multiplicity)]
    return np.column_stack([to_float(np.asarray(list(c), dtype=object)) for c in columns])


@dataclass
class ZonalMatrices:
    group: str
    dimension: int
    blocks: List[ZonalBlock]
    basis: SymmetryAdaptedBasis = field(repr=False)

    def reduce(self, a) -> List[np.ndarray]:
        """Reduced block of a matrix for every component."""
        return [block.contract(a) for block in self.blocks]

    def reconstruct(self, blocks: List[np.ndarray]) -> np.ndarray:
        """
        X_ij = Σ_l ⟨E_l(i, j), M_l⟩.

        :raises DimensionMismatchError: If the block list does not match the components
        """
        if len(blocks) != len(self.blocks):
            raise DimensionMismatchError(f"Expected {len(self.blocks)} blocks, got {len(blocks)}")
        n = self.dimension
        exact = all(b.entries.dtype == object for b in self.blocks) and \
            all(is_exact_matrix(as_matrix(m)) for m in blocks)
        total = None
        for zonal, m in zip(self.blocks, blocks):
            m = as_matrix(m)
            if m.shape != (zonal.size, zonal.size):
                raise DimensionMismatchError(f"Block {zonal.label} needs shape {(zonal.size, zonal.size)}, got {m.shape}")
            flat = zonal.entries.reshape(n * n, zonal.size * zonal.size)
            part = flat.dot(m.reshape(-1)) if exact else to_float(flat) @ to_float(m).reshape(-1)
            total = part if total is None else total + part
        if total is None:
            return as_matrix(np.zeros((n, n)))
        return as_matrix(total.reshape(n, n))

    def project(self, x) -> List[np.ndarray]:
        """
        Commutant blocks M_l of an invariant matrix: M_uv = e_{u,0}ᴴ·X·e_{v,0}, with pairs
        embedded as [[Re N, -Im N], [Im N, Re N]] (or Re N for a single copy).
        """
        x = to_float(as_matrix(x))
        out = []
        for comp, zonal in zip(self.basis.components, self.blocks):
            v = _component_vectors(self.basis, comp, 0)
            n_block = v.conj().T @ x @ v
            if comp.kind == KIND_PAIR:
                if comp.multiplicity == 1:
                    n_block = n_block.real
                else:
                    n_block = np.block([[n_block.real, -n_block.imag], [n_block.imag, n_block.real]])
            out.append(as_matrix(_tidy_tensor(np.asarray(n_block))))
        return out

    def to_json(self) -> dict:
        return {"group": self.group, "dimension": self.dimension,
                "blocks": [{"index": b.index, "label": b.label, "kind": b.kind, "size": b.size,
                            "repeats": b.repeats} for b in self.blocks]}


def zonal_matrices(rep: GroupRepresentation, basis: Optional[SymmetryAdaptedBasis] = None,
                   flavor: str = "real") -> ZonalMatrices:
    """
    Zonal matrices of a representation.

    :param rep: Group representation with irreducible matrices
    :param basis: Orthonormal symmetry-adapted basis; rebuilt orthonormally when missing or not orthonormal
    :param flavor: Flavor used when the basis is rebuilt
    :return: ZonalMatrices
    :raises PreconditionError: If the basis is numerically degenerate
    """
    if basis is None or not basis.orthonormal:
        basis = symmetry_adapted_basis(rep, basis.flavor if basis is not None else flavor, orthonormal=True)
    n = basis.dimension
    blocks = []
    for comp in basis.components:
        e = np.zeros((n, n, comp.multiplicity, comp.multiplicity), dtype=complex)
        for alpha in range(comp.dim):
            v = _component_vectors(basis, comp, alpha)
            e = e + np.einsum("iu,jv->ijuv", v, v.conj())
        if comp.kind == KIND_PAIR:
            if comp.multiplicity == 1:
                e = 2 * e.real
            else:
                e = np.block([[e.real, e.imag], [-e.imag, e.real]])
        entries = _tidy_tensor(e)
        size = entries.shape[2]
        blocks.append(ZonalBlock(comp.index, comp.label, comp.kind, size, comp.dim, entries))
    if not blocks:
        raise PreconditionError(f"{rep.name}: no isotypic components")
    logger.debug(f"{rep.name}: zonal block sizes {[b.size for b in blocks]}")
    return ZonalMatrices(rep.name, n, blocks, basis)
