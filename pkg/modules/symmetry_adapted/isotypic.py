"""
Isotypic projections π_i = (d_i/|G|) Σ_g conj(χ_i(g))·M(g), the generalized projections
π_{αβ} = (d/|G|) Σ_g Y(g⁻¹)_{βα}·M(g) built from irreducible matrices, and the small
vector helpers shared by the basis and zonal code.
"""

import logging
from fractions import Fraction
from typing import Callable, List, Sequence

import numpy as np

from core.errors import PreconditionError
from core.matrices import as_matrix, float_rank, exact_rank, to_float, zeros
from core.scalars import Scalar, conj, is_exact, rationalize, to_scalar
from modules.groups.group_representation import GroupRepresentation
from modules.symmetry_adapted.symmetry_adapted_config import DEPENDENCE_TOL, TIDY_DENOMINATOR, TIDY_TOL

logger = logging.getLogger("SymAdapted")


def _scale(m: np.ndarray, w: Scalar) -> np.ndarray:
    if m.dtype == object:
        return m * w
    return m * (complex(w) if isinstance(w, complex) else float(w))


def weighted_group_sum(rep: GroupRepresentation, weight: Callable) -> np.ndarray:
    """
    Σ_g weight(g)·M(g). Permutation representations add weights entry by entry.

    :param rep: Group representation
    :param weight: Element -> scalar
    :return: Exact object matrix when every term is exact, float/complex otherwise
    """
    n = rep.degree
    total = zeros(n, n)
    for g in rep.elements():
        w = to_scalar(weight(g))
        if w == 0:
            continue
        perm = rep.permutation(g)
        if perm is not None:
            for j, i in enumerate(perm):
                total[i, j] = total[i, j] + w
        else:
            total = total + _scale(rep.matrix(g), w)
    return as_matrix(total)


def _check_index(rep: GroupRepresentation, index: int) -> None:
    count = len(rep.character_table().rows)
    if not 0 <= index < count:
        raise PreconditionError(f"{rep.name} has {count} irreducibles, index {index} is out of range")


def isotypic_projector(rep: GroupRepresentation, index: int) -> np.ndarray:
    """
    Projection onto the isotypic component of the index-th irreducible.

    :param rep: Group representation with a character table
    :param index: Irreducible index in the character table
    :return: π_index as a degree × degree matrix
    :raises PreconditionError: On an unknown index
    """
    _check_index(rep, index)
    table = rep.character_table()
    row = table.rows[index]
    factor = Fraction(table.dims[index], rep.order)
    return weighted_group_sum(rep, lambda g: conj(row[rep.class_index(g)]) * factor)


def apply_matrix(m: np.ndarray, v: Sequence) -> np.ndarray:
    """m·v, exact when both sides are exact."""
    vector = np.asarray(v, dtype=object if m.dtype == object else None)
    if m.dtype == object and all(is_exact(x) for x in vector):
        return m.dot(vector)
    return to_float(m) @ to_float(np.asarray(list(vector), dtype=object))


def isotypic_project(rep: GroupRepresentation, index: int, v: Sequence) -> np.ndarray:
    """
    π_index·v.

    :raises PreconditionError: On an unknown index or a vector of the wrong length
    """
    if len(v) != rep.degree:
        raise PreconditionError(f"Vector of length {len(v)} does not live in a {rep.degree}-dimensional space")
    vector = np.empty(len(v), dtype=object)
    vector[:] = [to_scalar(x) for x in v]
    return apply_matrix(isotypic_projector(rep, index), vector)


def generalized_projector(rep: GroupRepresentation, index: int, alpha: int, beta: int,
                          inverse_irreps: dict) -> np.ndarray:
    """
    π_{αβ} for the index-th irreducible.

    :param inverse_irreps: Element -> Y(g⁻¹), precomputed by the caller
    """
    factor = Fraction(rep.character_table().dims[index], rep.order)
    return weighted_group_sum(rep, lambda g: to_scalar(inverse_irreps[g][beta, alpha]) * factor)


def tidy_vector(v: Sequence, tol: float = TIDY_TOL) -> np.ndarray:
    """
    Snap a float vector to exact rationals when every entry is (numerically) a small-denominator
    rational; otherwise chop negligible parts and keep it float.
    """
    values = [to_scalar(x) for x in v]
    out = np.empty(len(values), dtype=object)
    if all(is_exact(x) for x in values):
        out[:] = values
        return out
    snapped = [rationalize(x, TIDY_DENOMINATOR, tol) for x in values]
    if all(is_exact(x) for x in snapped):
        out[:] = snapped
        return out
    cleaned = []
    for x in values:
        c = complex(x)
        re_part = 0.0 if abs(c.real) <= tol else c.real
        im_part = 0.0 if abs(c.imag) <= tol else c.imag
        cleaned.append(complex(re_part, im_part))
    if any(c.imag != 0 for c in cleaned):
        return np.array(cleaned, dtype=complex)
    return np.array([c.real for c in cleaned], dtype=float)


def vectors_rank(vectors: List[np.ndarray]) -> int:
    if not vectors:
        return 0
    if all(v.dtype == object and all(is_exact(x) for x in v) for v in vectors):
        return exact_rank([list(v) for v in vectors])
    return float_rank(np.array([to_float(v) for v in vectors]))


def gram_schmidt(vectors: Sequence[np.ndarray], tol: float = DEPENDENCE_TOL) -> List[np.ndarray]:
    """
    Modified Gram–Schmidt with column pivoting: the remaining vector with the largest
    residual norm is normalized next.

    :param vectors: Vectors to orthonormalize
    :param tol: Smallest acceptable residual norm
    :return: Orthonormal float (or complex) vectors spanning the same space
    :raises PreconditionError: If the vectors are numerically dependent
    """
    remaining = [to_float(np.asarray(v)).astype(complex) for v in vectors]
    basis = []
    while remaining:
        norms = [float(np.linalg.norm(v)) for v in remaining]
        k = int(np.argmax(norms))
        if norms[k] <= tol:
            raise PreconditionError(f"Gram–Schmidt met a dependent vector (residual norm {norms[k]:.3g})")
        q = remaining.pop(k) / norms[k]
        basis.append(q)
        remaining = [v - np.vdot(q, v) * q for v in remaining]
    return [q.real if np.all(np.abs(q.imag) <= tol) else q for q in basis]
