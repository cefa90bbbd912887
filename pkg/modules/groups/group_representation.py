"""
Finite groups with a matrix action: the common interface, conjugacy classes and character tables.
"""

import logging
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Hashable, List, Optional, Sequence

import numpy as np

from core.config import Limits, Tolerances
from core.errors import PreconditionError, UnsupportedError
from core.matrices import as_matrix, is_exact_matrix, matrices_equal, to_float
from core.scalars import Scalar, conj, format_scalar, to_scalar

logger = logging.getLogger("Groups")

Element = Hashable


@dataclass(frozen=True)
class ConjugacyClass:
    """
    :param representative: One element of the class
    :param size: Number of elements
    :param label: Human readable name (cycle type, rotation power, ...)
    """
    representative: Any
    size: int
    label: str

    def to_json(self) -> dict:
        rep = self.representative
        return {"label": self.label, "size": self.size,
                "representative": list(rep) if isinstance(rep, tuple) else rep}


@dataclass
class CharacterTable:
    """
    Irreducible characters evaluated on conjugacy classes.

    :param classes: Conjugacy classes (column order)
    :param rows: rows[i][c] = χ_i on class c
    :param dims: d_i = χ_i(identity)
    :param labels: Irreducible names
    :param order: |G|
    """
    classes: List[ConjugacyClass]
    rows: List[List[Scalar]]
    dims: List[int]
    labels: List[str]
    order: int

    def inner(self, phi: Sequence[Scalar], psi: Sequence[Scalar]) -> Scalar:
        """⟨φ, ψ⟩ = (1/|G|) Σ_g φ(g)·conj(ψ(g)) for class functions given on classes."""
        total = Fraction(0)
        for cls, a, b in zip(self.classes, phi, psi):
            total = total + cls.size * a * conj(b)
        return total / self.order

    def validate(self, tol: float = Tolerances.FLOAT) -> None:
        """
        :raises PreconditionError: If rows are not orthonormal or Σ d_i² ≠ |G|
        """
        if sum(cls.size for cls in self.classes) != self.order:
            raise PreconditionError("Class sizes do not sum to the group order")
        if sum(d * d for d in self.dims) != self.order:
            raise PreconditionError(f"Σ d_i² = {sum(d * d for d in self.dims)} differs from |G| = {self.order}")
        for i, row_i in enumerate(self.rows):
            for j, row_j in enumerate(self.rows):
                value = self.inner(row_i, row_j)
                expected = 1 if i == j else 0
                if abs(complex(value) - expected) > tol:
                    raise PreconditionError(f"Characters {self.labels[i]} and {self.labels[j]} are not orthonormal")

    def to_json(self) -> dict:
        return {
            "classes": [c.to_json() for c in self.classes],
            "irreducibles": [{"label": label, "dim": d, "values": [format_scalar(v) for v in row]}
                             for label, d, row in zip(self.labels, self.dims, self.rows)],
        }


class GroupRepresentation(ABC):
    """
    A finite group G together with a matrix representation ρ: G → GL(degree).
    Subclasses provide the group law, generators and ρ; character data comes from the
    family (closed forms) or from user input.
    """

    family = "group"

    def __init__(self, degree: int, name: str):
        """
        :param degree: Dimension of the represented space
        :param name: Display name, e.g. "S:3"
        """
        self.degree = degree
        self.name = name
        self._elements: Optional[List[Element]] = None
        self._class_lookup: Optional[Dict[Element, int]] = None
        self._classes: Optional[List[ConjugacyClass]] = None
        self._table: Optional[CharacterTable] = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, degree={self.degree})"

    # --- group law ---
    @property
    @abstractmethod
    def order(self) -> int:
        pass

    @property
    @abstractmethod
    def identity(self) -> Element:
        pass

    @abstractmethod
    def multiply(self, g: Element, h: Element) -> Element:
        """The product gh (apply h first)."""
        pass

    @abstractmethod
    def inverse(self, g: Element) -> Element:
        pass

    @abstractmethod
    def generators(self) -> List[Element]:
        pass

    @abstractmethod
    def matrix(self, g: Element) -> np.ndarray:
        """ρ(g); exact object array when the entries are rational."""
        pass

    def permutation(self, g: Element) -> Optional[tuple]:
        """Permutation data (M(g)e_i = e_{perm[i]}) when ρ is a permutation representation."""
        return None

    @property
    def is_permutation(self) -> bool:
        return False

    def label(self, g: Element) -> str:
        return str(g)

    def elements(self) -> List[Element]:
        """
        All elements, identity first, by breadth-first closure over the generators.

        :raises PreconditionError: If |G| exceeds Limits.MAX_GROUP_ORDER
        """
        if self._elements is None:
            if self.order > Limits.MAX_GROUP_ORDER:
                raise PreconditionError(f"|G| = {self.order} exceeds the cap {Limits.MAX_GROUP_ORDER}")
            seen = {self.identity: None}
            queue = deque([self.identity])
            while queue:
                g = queue.popleft()
                for s in self.generators():
                    h = self.multiply(s, g)
                    if h not in seen:
                        seen[h] = None
                        queue.append(h)
            self._elements = list(seen)
            logger.debug(f"{self.name}: enumerated {len(self._elements)} elements")
        return self._elements

    def power(self, g: Element, k: int) -> Element:
        result = self.identity
        for _ in range(k):
            result = self.multiply(g, result)
        return result

    # --- conjugacy classes and characters ---
    def conjugacy_classes(self) -> List[ConjugacyClass]:
        """Brute-force conjugation; families with closed forms override this."""
        if self._classes is not None:
            return self._classes
        elements = self.elements()
        assigned: Dict[Element, int] = {}
        classes = []
        for x in elements:
            if x in assigned:
                continue
            members = {self.multiply(self.multiply(g, x), self.inverse(g)) for g in elements}
            for m in members:
                assigned[m] = len(classes)
            classes.append(ConjugacyClass(x, len(members), self.label(x)))
        self._class_lookup = assigned
        self._classes = classes
        return classes

    def class_index(self, g: Element) -> int:
        if self._class_lookup is None:
            self.conjugacy_classes()
        return self._class_lookup[g]

    def character_table(self) -> CharacterTable:
        raise UnsupportedError(f"No character data available for {self.name}")

    @property
    def has_irreps(self) -> bool:
        return False

    def irrep_matrix(self, index: int, g: Element) -> np.ndarray:
        """Y^index(g) for the index-th irreducible of the character table."""
        raise UnsupportedError(f"No irreducible matrices available for {self.name}")

    def character(self, g: Element) -> Scalar:
        m = self.matrix(g)
        return to_scalar(sum(m[i, i] for i in range(m.shape[0]))) if m.dtype == object \
            else to_scalar(complex(np.trace(m)))

    def class_characters(self) -> List[Scalar]:
        """χ_ρ on each conjugacy class."""
        return [self.character(cls.representative) for cls in self.character_table().classes]

    def check_orthogonal(self, tol: float = Tolerances.FLOAT) -> None:
        """
        :raises PreconditionError: If some generator matrix is not orthogonal (unitary)
        """
        for s in self.generators():
            m = self.matrix(s)
            if is_exact_matrix(m):
                product = m.dot(m.T)
                if not matrices_equal(product, as_matrix(np.eye(m.shape[0], dtype=int).tolist())):
                    raise PreconditionError(f"Generator {self.label(s)} is not orthogonal")
            else:
                f = to_float(m)
                if np.max(np.abs(f @ f.conj().T - np.eye(f.shape[0]))) > tol:
                    raise PreconditionError(f"Generator {self.label(s)} is not unitary")

    def describe(self) -> dict:
        return {"name": self.name, "family": self.family, "order": self.order, "degree": self.degree}
