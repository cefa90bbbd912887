"""
Symmetry-adapted bases.

For each irreducible with multiplicity m and dimension d the basis holds m copies
b_{j,0..d-1}, with b_{j,α} = π_{α0}·v_j and v_j spanning the image of π_{00}. In this basis
every group matrix is block diagonal with m identical copies of Y(g). The real flavor merges
each complex irreducible with its conjugate and replaces b, conj(b) by the real vectors
b + conj(b) and (b - conj(b))/i.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from core.config import Tolerances
from core.errors import PreconditionError, UnsupportedError
from core.matrices import as_matrix, matrices_equal, psd_sqrt, to_float
from core.scalars import format_scalar, is_exact, parse_scalar, to_scalar
from modules.groups.group_representation import GroupRepresentation
from modules.groups.polynomial_action import frobenius_schur_indicator, multiplicities
from modules.symmetry_adapted.isotypic import (apply_matrix, generalized_projector, gram_schmidt, tidy_vector,
                                               vectors_rank)
from modules.symmetry_adapted.symmetry_adapted_config import FLAVORS, KIND_COMPLEX, KIND_PAIR, KIND_REAL

logger = logging.getLogger("SymAdapted")

# (irreducible index, copy, part, alpha); part is 0 except for the imaginary half of a pair
VectorLabel = Tuple[int, int, int, int]


@dataclass
class IsotypicComponent:
    """
    One isotypic component inside a basis.

    positions[copy][part][alpha] is the column of the basis vector; pairs have two parts
    (real and imaginary half), everything else one.
    """
    index: int
    label: str
    multiplicity: int
    dim: int
    kind: str
    partner: Optional[int] = None
    positions: List[List[List[int]]] = field(default_factory=list)
    complex_vectors: Optional[List[List[np.ndarray]]] = None

    @property
    def parts(self) -> int:
        return 2 if self.kind == KIND_PAIR else 1

    @property
    def size(self) -> int:
        return self.multiplicity * self.parts * self.dim

    def block_positions(self, alpha: int = 0) -> List[int]:
        """Columns spanning one copy of the commutant block (fixed alpha)."""
        return [self.positions[j][p][alpha] for j in range(self.multiplicity) for p in range(self.parts)]

    def to_json(self) -> dict:
        return {"index": self.index, "label": self.label, "multiplicity": self.multiplicity, "dim": self.dim,
                "kind": self.kind, "partner": self.partner, "positions": self.positions}


@dataclass
class SymmetryAdaptedBasis:
    group: str
    flavor: str
    orthonormal: bool
    vectors: List[np.ndarray]
    labels: List[VectorLabel]
    components: List[IsotypicComponent]
    realified: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        """Basis vectors as columns."""
        n = self.dimension
        return as_matrix([[self.vectors[c][r] for c in range(n)] for r in range(n)])

    def component(self, index: int) -> IsotypicComponent:
        for comp in self.components:
            if comp.index == index or comp.partner == index:
                return comp
        raise PreconditionError(f"Irreducible {index} does not occur in this basis")

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "flavor": self.flavor,
            "orthonormal": self.orthonormal,
            "vectors": [[format_scalar(x) for x in v] for v in self.vectors],
            "labels": [list(label) for label in self.labels],
            "components": [c.to_json() for c in self.components],
            "realified": [list(p) for p in self.realified],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymmetryAdaptedBasis":
        """
        :raises PreconditionError: On missing keys or inconsistent positions
        """
        try:
            vectors = [tidy_vector([parse_scalar(x) for x in v]) for v in data["vectors"]]
            components = [IsotypicComponent(c["index"], c["label"], c["multiplicity"], c["dim"], c["kind"],
                                            c.get("partner"), c["positions"]) for c in data["components"]]
            basis = cls(data.get("group", "?"), data["flavor"], bool(data.get("orthonormal", False)), vectors,
                        [tuple(label) for label in data["labels"]], components,
                        [tuple(p) for p in data.get("realified", [])])
        except (KeyError, TypeError) as e:
            raise PreconditionError(f"Malformed basis JSON: {e}")
        if sum(c.size for c in components) != len(vectors):
            raise PreconditionError("Basis JSON components do not cover the vectors")
        return basis


def conjugate_partners(rep: GroupRepresentation, tol: float = Tolerances.FLOAT) -> Dict[int, int]:
    """Irreducible index -> index of the irreducible with the conjugate character."""
    rows = rep.character_table().rows
    partners = {}
    for i, row in enumerate(rows):
        target = [complex(v).conjugate() for v in row]
        for k, other in enumerate(rows):
            if all(abs(complex(a) - b) <= max(tol, 1e-9) for a, b in zip(other, target)):
                partners[i] = k
                break
    return partners


def _irrep_function(rep: GroupRepresentation, index: int, unitary: bool):
    """
    g -> Y(g); with unitary set, non-unitary irreducibles are conjugated by H^{1/2},
    H = (1/|G|) Σ_g Y(g)ᴴY(g).
    """
    def base(g):
        return rep.irrep_matrix(index, g)

    if not unitary:
        return base
    is_unitary = True
    for s in rep.generators():
        y = to_float(base(s))
        if np.max(np.abs(y.conj().T @ y - np.eye(y.shape[0]))) > Tolerances.FLOAT:
            is_unitary = False
            break
    if is_unitary:
        return base
    elements = rep.elements()
    gram = sum(to_float(base(g)).conj().T @ to_float(base(g)) for g in elements) / len(elements)
    root = psd_sqrt(gram)
    root_inv = np.linalg.inv(root)
    logger.debug(f"{rep.name}: unitarized irreducible {index}")
    return lambda g: root @ to_float(base(g)) @ root_inv


def _first_nonzero_scaled(v: np.ndarray) -> np.ndarray:
    for x in v:
        if x != 0:
            return v / x if v.dtype != object else np.array([y / x for y in v], dtype=object)
    return v


def _copies(rep: GroupRepresentation, index: int, multiplicity: int, irrep, orthonormal: bool,
            tol: float) -> List[List[np.ndarray]]:
    """The m copies [copy][alpha] of one irreducible."""
    d = rep.character_table().dims[index]
    inverse_irreps = {g: as_matrix(irrep(rep.inverse(g))) for g in rep.elements()}
    projectors = [generalized_projector(rep, index, alpha, 0, inverse_irreps) for alpha in range(d)]
    chosen: List[np.ndarray] = []
    for k in range(rep.degree):
        column = tidy_vector(projectors[0][:, k])
        if all(abs(complex(x)) <= tol for x in column):
            continue
        if vectors_rank(chosen + [column]) > len(chosen):
            chosen.append(column)
        if len(chosen) == multiplicity:
            break
    if len(chosen) != multiplicity:
        raise PreconditionError(f"{rep.name}: found {len(chosen)} copies of irreducible {index}, "
                                f"expected {multiplicity}; irreducible matrices and characters disagree")
    if orthonormal:
        chosen = [tidy_vector(q) for q in gram_schmidt(chosen)]
    else:
        chosen = [_first_nonzero_scaled(v) for v in chosen]
    return [[tidy_vector(apply_matrix(projectors[alpha], v)) for alpha in range(d)] for v in chosen]


def _realify(b: np.ndarray, orthonormal: bool) -> Tuple[np.ndarray, np.ndarray]:
    f = to_float(np.asarray(list(b), dtype=object)).astype(complex)
    scale = math.sqrt(2) if orthonormal else 2.0
    return tidy_vector(scale * f.real), tidy_vector(scale * f.imag)


def _check_real(vectors: List[np.ndarray], label: str, tol: float) -> List[np.ndarray]:
    out = []
    for v in vectors:
        if any(isinstance(to_scalar(x), complex) and abs(to_scalar(x).imag) > tol for x in v):
            raise UnsupportedError(f"Irreducible {label} has real character but complex matrices; "
                                   f"supply real irreducible matrices for the real flavor")
        out.append(tidy_vector([complex(x).real if not is_exact(x) else x for x in v]))
    return out


def symmetry_adapted_basis(rep: GroupRepresentation, flavor: str = "complex", orthonormal: bool = False,
                           tol: float = Tolerances.FLOAT) -> SymmetryAdaptedBasis:
    """
    Build a symmetry-adapted basis of the represented space.

    Components follow the character table order (a realified pair sits at its lower index),
    vectors inside a component are ordered copy, part, alpha.

    :param rep: Group representation with irreducible matrices
    :param flavor: "complex" or "real"
    :param orthonormal: Orthonormalize each copy (unitarizing non-unitary irreducibles first)
    :param tol: Float tolerance
    :return: SymmetryAdaptedBasis
    :raises PreconditionError: On an unknown flavor or irreducible data that does not fit ρ
    :raises UnsupportedError: Without irreducible matrices, or for quaternionic irreducibles in the real flavor
    """
    if flavor not in FLAVORS:
        raise PreconditionError(f"Unknown basis flavor {flavor!r}, expected one of {FLAVORS}")
    if not rep.has_irreps:
        raise UnsupportedError(f"{rep.name} has no irreducible matrices; a symmetry-adapted basis needs them")
    table = rep.character_table()
    counts = multiplicities(rep, tol)
    partners = conjugate_partners(rep, tol) if flavor == "real" else {}
    vectors: List[np.ndarray] = []
    labels: List[VectorLabel] = []
    components: List[IsotypicComponent] = []
    realified: List[Tuple[int, int]] = []
    merged = set()

    for index, (label, m, d) in enumerate(zip(table.labels, counts, table.dims)):
        if m == 0 or index in merged:
            continue
        kind = KIND_COMPLEX
        if flavor == "real":
            indicator = frobenius_schur_indicator(rep, index)
            if indicator == -1:
                raise UnsupportedError(f"Irreducible {label} is quaternionic; the real flavor does not cover it")
            kind = KIND_REAL if indicator == 1 else KIND_PAIR
        irrep = _irrep_function(rep, index, orthonormal)
        copies = _copies(rep, index, m, irrep, orthonormal, tol)
        component = IsotypicComponent(index, label, m, d, kind)

        if kind == KIND_PAIR:
            partner = partners.get(index)
            if partner is None or counts[partner] != m:
                raise PreconditionError(f"Irreducible {label} has no conjugate partner of equal multiplicity")
            merged.add(partner)
            realified.append((index, partner))
            component.partner = partner
            component.complex_vectors = copies
            component.label = f"{label}+{table.labels[partner]}"
            for j, copy in enumerate(copies):
                halves = [_realify(b, orthonormal) for b in copy]
                parts = []
                for p in range(2):
                    row = []
                    for alpha, pair in enumerate(halves):
                        row.append(len(vectors))
                        vectors.append(pair[p])
                        labels.append((index, j, p, alpha))
                    parts.append(row)
                component.positions.append(parts)
            logger.debug(f"{rep.name}: realified {label} with {table.labels[partner]}")
        else:
            for j, copy in enumerate(copies):
                if kind == KIND_REAL:
                    copy = _check_real(copy, label, Tolerances.REAL_PART)
                row = []
                for alpha, v in enumerate(copy):
                    row.append(len(vectors))
                    vectors.append(v)
                    labels.append((index, j, 0, alpha))
                component.positions.append([row])
        components.append(component)

    if len(vectors) != rep.degree:
        raise PreconditionError(f"{rep.name}: basis has {len(vectors)} vectors for a {rep.degree}-dimensional space")
    basis = SymmetryAdaptedBasis(rep.name, flavor, orthonormal, vectors, labels, components, realified)
    logger.info(f"{rep.name}: {flavor} symmetry-adapted basis with "
                f"{', '.join(f'{c.label}×{c.multiplicity}' for c in components)}")
    return basis


def check_block_action(rep: GroupRepresentation, basis: SymmetryAdaptedBasis, tol: float = Tolerances.FLOAT) -> bool:
    """
    B⁻¹·M(g)·B is block diagonal with identical copies for every generator.
    """
    b = to_float(basis.matrix())
    inverse = np.linalg.inv(b)
    for g in rep.generators():
        transformed = inverse @ to_float(rep.matrix(g)) @ b
        for comp in basis.components:
            columns = [comp.positions[j][p][a] for j in range(comp.multiplicity)
                       for p in range(comp.parts) for a in range(comp.dim)]
            mask = np.ones(transformed.shape[0], dtype=bool)
            mask[columns] = False
            if np.max(np.abs(transformed[np.ix_(mask, columns)]), initial=0.0) > tol:
                return False
            first = [comp.positions[0][p][a] for p in range(comp.parts) for a in range(comp.dim)]
            for j in range(1, comp.multiplicity):
                other = [comp.positions[j][p][a] for p in range(comp.parts) for a in range(comp.dim)]
                if not matrices_equal(transformed[np.ix_(first, first)], transformed[np.ix_(other, other)], tol):
                    return False
    return True
