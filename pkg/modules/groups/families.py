"""
Built-in group families: symmetric, cyclic, dihedral, and explicit matrix groups.
"""

import itertools
import logging
from collections import deque
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.config import Limits, Tolerances
from core.errors import PreconditionError, UnsupportedError
from core.matrices import as_matrix, identity, is_exact_matrix, matrices_equal, to_float
from core.scalars import cos_2pi, root_of_unity, sin_2pi, to_scalar
from modules.groups.group_representation import CharacterTable, ConjugacyClass, GroupRepresentation
from modules.groups.groups_config import DIHEDRAL_REALIZATIONS, FLOAT_KEY_DIGITS
from modules.groups.tableaux import cycle_type, partitions, specht_module

logger = logging.getLogger("Groups")


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """M with M e_i = e_{perm[i]}."""
    n = len(perm)
    m = np.empty((n, n), dtype=object)
    m.fill(Fraction(0))
    for i, j in enumerate(perm):
        m[j, i] = Fraction(1)
    return m


def _rotation(k: int, n: int) -> np.ndarray:
    c, s = cos_2pi(k, n), sin_2pi(k, n)
    return as_matrix([[c, -s], [s, c]])


class SymmetricGroup(GroupRepresentation):
    """
    Sₙ acting on 𝕂ⁿ by permuting coordinates. Elements are 0-based image tuples.
    Generators are the adjacent transpositions.
    """

    family = "symmetric"

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError(f"S_n needs n ≥ 1, got {n}")
        super().__init__(n, f"S:{n}")
        self.n = n

    @property
    def order(self) -> int:
        return factorial(self.n)

    @property
    def identity(self):
        return tuple(range(self.n))

    def multiply(self, g, h):
        return tuple(g[h[i]] for i in range(self.n))

    def inverse(self, g):
        inv = [0] * self.n
        for i, j in enumerate(g):
            inv[j] = i
        return tuple(inv)

    def generators(self):
        gens = []
        for i in range(self.n - 1):
            perm = list(range(self.n))
            perm[i], perm[i + 1] = i + 1, i
            gens.append(tuple(perm))
        return gens

    def matrix(self, g):
        return permutation_matrix(g)

    def permutation(self, g):
        return tuple(g)

    @property
    def is_permutation(self) -> bool:
        return True

    def label(self, g) -> str:
        cycles, seen = [], set()
        for start in range(self.n):
            if start in seen or g[start] == start:
                continue
            cycle, i = [], start
            while i not in seen:
                seen.add(i)
                cycle.append(i + 1)
                i = g[i]
            cycles.append("(" + " ".join(str(v) for v in cycle) + ")")
        return "".join(cycles) or "id"

    def elements(self):
        if self._elements is None:
            if self.order > Limits.MAX_GROUP_ORDER:
                raise PreconditionError(f"|S_{self.n}| exceeds the cap {Limits.MAX_GROUP_ORDER}")
            self._elements = list(itertools.permutations(range(self.n)))
        return self._elements

    def conjugacy_classes(self) -> List[ConjugacyClass]:
        """One class per cycle type, ordered ascending: (1,...,1) first."""
        if self._classes is None:
            classes = []
            for shape in sorted(partitions(self.n)):
                rep, start = [0] * self.n, 0
                for length in shape:
                    for offset in range(length):
                        rep[start + offset] = start + (offset + 1) % length
                    start += length
                z = 1
                for part in set(shape):
                    count = shape.count(part)
                    z *= part ** count * factorial(count)
                label = "(" + ",".join(str(p) for p in shape) + ")"
                classes.append(ConjugacyClass(tuple(rep), self.order // z, label))
            self._classes = classes
        return self._classes

    def class_index(self, g) -> int:
        if self._class_lookup is None:
            self._class_lookup = {tuple(sorted(p, reverse=True)): i for i, p in
                                  enumerate(sorted(partitions(self.n)))}
        return self._class_lookup[cycle_type(g)]

    def irrep_shapes(self) -> List[Tuple[int, ...]]:
        """Irreducible labels in table order: partitions in descending order."""
        return list(partitions(self.n))

    def character_table(self) -> CharacterTable:
        if self._table is None:
            if self.n > Limits.MAX_SPECHT_N:
                raise UnsupportedError(f"Character tables of S_n are built for n ≤ {Limits.MAX_SPECHT_N}")
            classes = self.conjugacy_classes()
            shapes = self.irrep_shapes()
            rows = [[Fraction(specht_module(shape).character(cls.representative)) for cls in classes]
                    for shape in shapes]
            dims = [specht_module(shape).dimension for shape in shapes]
            labels = ["(" + ",".join(str(p) for p in shape) + ")" for shape in shapes]
            self._table = CharacterTable(classes, rows, dims, labels, self.order)
        return self._table

    @property
    def has_irreps(self) -> bool:
        return self.n <= Limits.MAX_SPECHT_N

    def irrep_matrix(self, index: int, g) -> np.ndarray:
        shape = self.irrep_shapes()[index]
        return as_matrix(specht_module(shape).matrix(g).tolist())


class CyclicGroup(GroupRepresentation):
    """
    Cₙ acting on 𝕂ⁿ by cyclic shifts: the generator sends e_i to e_{i+1}. Elements are the powers k.
    """

    family = "cyclic"

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError(f"C_n needs n ≥ 1, got {n}")
        super().__init__(n, f"C:{n}")
        self.n = n

    @property
    def order(self) -> int:
        return self.n

    @property
    def identity(self):
        return 0

    def multiply(self, g, h):
        return (g + h) % self.n

    def inverse(self, g):
        return (-g) % self.n

    def generators(self):
        return [1] if self.n > 1 else []

    def permutation(self, g):
        return tuple((i + g) % self.n for i in range(self.n))

    @property
    def is_permutation(self) -> bool:
        return True

    def matrix(self, g):
        return permutation_matrix(self.permutation(g))

    def label(self, g) -> str:
        return f"g^{g}"

    def elements(self):
        return list(range(self.n))

    def conjugacy_classes(self):
        return [ConjugacyClass(k, 1, self.label(k)) for k in range(self.n)]

    def class_index(self, g) -> int:
        return g % self.n

    def character_table(self) -> CharacterTable:
        if self._table is None:
            classes = self.conjugacy_classes()
            rows = [[root_of_unity(j * k, self.n) for k in range(self.n)] for j in range(self.n)]
            self._table = CharacterTable(classes, rows, [1] * self.n,
                                         [f"chi_{j}" for j in range(self.n)], self.n)
        return self._table

    @property
    def has_irreps(self) -> bool:
        return True

    def irrep_matrix(self, index: int, g) -> np.ndarray:
        return as_matrix([[root_of_unity(index * g, self.n)]])


class DihedralGroup(GroupRepresentation):
    """
    Dₙ, the symmetries of the regular n-gon (order 2n). Elements are pairs (k, s) = r^k f^s with
    (k1, s1)(k2, s2) = (k1 + (-1)^{s1} k2, s1 xor s2).

    Realizations: "vertices" permutes n points (r: i -> i+1, f: i -> -i);
    "plane" acts on ℝ² (r = rotation by 2π/n, f = diag(-1, 1)).
    """

    family = "dihedral"

    def __init__(self, n: int, realization: str = "vertices"):
        if n < 3:
            raise PreconditionError(f"D_n needs n ≥ 3, got {n}")
        if realization not in DIHEDRAL_REALIZATIONS:
            raise PreconditionError(f"Unknown dihedral realization {realization!r}")
        degree = n if realization == "vertices" else 2
        super().__init__(degree, f"D:{n}" + (":plane" if realization == "plane" else ""))
        self.n = n
        self.realization = realization

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def identity(self):
        return 0, 0

    def multiply(self, g, h):
        k1, s1 = g
        k2, s2 = h
        return (k1 + (-k2 if s1 else k2)) % self.n, s1 ^ s2

    def inverse(self, g):
        k, s = g
        return (g if s else ((-k) % self.n, 0))

    def generators(self):
        return [(1, 0), (0, 1)]

    @property
    def is_permutation(self) -> bool:
        return self.realization == "vertices"

    def permutation(self, g):
        if self.realization != "vertices":
            return None
        k, s = g
        return tuple((k + (-i if s else i)) % self.n for i in range(self.n))

    def matrix(self, g):
        if self.realization == "vertices":
            return permutation_matrix(self.permutation(g))
        k, s = g
        rotation = _rotation(k, self.n)
        if not s:
            return rotation
        flip = as_matrix([[-1, 0], [0, 1]])
        return as_matrix(rotation.dot(flip)) if is_exact_matrix(rotation) else to_float(rotation) @ to_float(flip)

    def label(self, g) -> str:
        k, s = g
        rot = "" if k == 0 and s else ("e" if k == 0 else ("r" if k == 1 else f"r^{k}"))
        return rot + ("f" if s else "")

    def elements(self):
        return [(k, 0) for k in range(self.n)] + [(k, 1) for k in range(self.n)]

    def conjugacy_classes(self):
        if self._classes is None:
            classes = []
            for k in range(self.n // 2 + 1):
                size = 1 if k == 0 or 2 * k == self.n else 2
                classes.append(ConjugacyClass((k, 0), size, self.label((k, 0))))
            if self.n % 2:
                classes.append(ConjugacyClass((0, 1), self.n, self.label((0, 1))))
            else:
                classes.append(ConjugacyClass((0, 1), self.n // 2, self.label((0, 1))))
                classes.append(ConjugacyClass((1, 1), self.n // 2, self.label((1, 1))))
            self._classes = classes
        return self._classes

    def class_index(self, g) -> int:
        k, s = g
        if not s:
            return min(k, self.n - k)
        base = self.n // 2 + 1
        return base if self.n % 2 else base + (k % 2)

    def _irrep_specs(self) -> List[Tuple[str, int]]:
        """(kind, parameter) per irreducible: 1-dim sign patterns, then 2-dim rotations h."""
        specs = [("one", 0), ("one", 1)]
        if self.n % 2 == 0:
            specs += [("one", 2), ("one", 3)]
        specs += [("two", h) for h in range(1, (self.n - 1) // 2 + 1)]
        return specs

    def irrep_matrix(self, index: int, g) -> np.ndarray:
        kind, param = self._irrep_specs()[index]
        k, s = g
        if kind == "one":
            rotation_sign = -1 if param >= 2 and k % 2 else 1
            flip_sign = -1 if param in (1, 3) and s else 1
            return as_matrix([[rotation_sign * flip_sign]])
        rotation = _rotation(param * k, self.n)
        if not s:
            return rotation
        if is_exact_matrix(rotation):
            return as_matrix(rotation.dot(as_matrix([[1, 0], [0, -1]])))
        return to_float(rotation) @ np.diag([1.0, -1.0])

    @property
    def has_irreps(self) -> bool:
        return True

    def character_table(self) -> CharacterTable:
        if self._table is None:
            classes = self.conjugacy_classes()
            specs = self._irrep_specs()
            rows, dims, labels = [], [], []
            for index, (kind, param) in enumerate(specs):
                row = []
                for cls in classes:
                    m = self.irrep_matrix(index, cls.representative)
                    row.append(to_scalar(sum(m[i, i] for i in range(m.shape[0]))))
                rows.append(row)
                dims.append(1 if kind == "one" else 2)
                labels.append(f"rho_{param}" if kind == "one" else f"tau_{param}")
            self._table = CharacterTable(classes, rows, dims, labels, self.order)
        return self._table


class ExplicitGroup(GroupRepresentation):
    """
    Group generated by user matrices. Elements are indices into the closure (identity = 0).
    Character data comes from user-supplied irreducible matrices on the generators.
    """

    family = "explicit"

    def __init__(self, generators: Sequence, degree: Optional[int] = None,
                 irreps: Optional[Sequence[Sequence]] = None, irrep_dims: Optional[Sequence[int]] = None,
                 characters: Optional[Sequence[Sequence]] = None, name: str = "explicit",
                 elements: Optional[Sequence] = None):
        """
        :param generators: Generator matrices
        :param degree: Space dimension (needed when there are no generators)
        :param irreps: Per irreducible, its matrices on the generators
        :param irrep_dims: Dimensions (needed when there are no generators)
        :param characters: Character rows on the computed class order (alternative to irreps)
        :param name: Display name
        :param elements: Optional full element list; must be closed under multiplication
        :raises PreconditionError: Inconsistent sizes, non-closed element list, invalid character data
        """
        gens = [as_matrix(m) for m in generators]
        if degree is None:
            if not gens:
                raise PreconditionError("Explicit group without generators needs a degree")
            degree = gens[0].shape[0]
        if any(g.shape != (degree, degree) for g in gens):
            raise PreconditionError("Generator matrices must be square of the same size")
        super().__init__(degree, name)
        self._generator_matrices = gens
        self._matrices: List[np.ndarray] = []
        self._keys: Dict[tuple, int] = {}
        self._words: List[Tuple[int, int]] = []
        self._close()
        if elements is not None:
            self._check_element_list(elements)
        self._irrep_generators = None
        self._irrep_dims = None
        self._irrep_cache: Dict[Tuple[int, int], np.ndarray] = {}
        self._user_characters = characters
        if irreps is not None:
            self._set_irreps(irreps, irrep_dims)

    @classmethod
    def trivial(cls, degree: int) -> "ExplicitGroup":
        return cls([], degree=degree, irreps=[[]], irrep_dims=[1], name="trivial")

    @staticmethod
    def _key(m: np.ndarray) -> tuple:
        if is_exact_matrix(m):
            return tuple(m.flat)
        f = to_float(m)
        rounded = np.round(f, FLOAT_KEY_DIGITS) + 0.0
        if np.iscomplexobj(rounded):
            return tuple((complex(v).real, complex(v).imag) for v in rounded.flat)
        return tuple(float(v) for v in rounded.flat)

    @staticmethod
    def _product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if is_exact_matrix(a) and is_exact_matrix(b):
            return a.dot(b)
        return to_float(a) @ to_float(b)

    def _close(self) -> None:
        start = identity(self.degree)
        self._matrices.append(start)
        self._keys[self._key(start)] = 0
        self._words.append((-1, -1))
        queue = deque([0])
        while queue:
            index = queue.popleft()
            for gen_index, gen in enumerate(self._generator_matrices):
                product = self._product(gen, self._matrices[index])
                key = self._key(product)
                if key not in self._keys:
                    if len(self._matrices) >= Limits.MAX_GROUP_ORDER:
                        raise PreconditionError("Generated group exceeds the order cap (is it finite?)")
                    self._keys[key] = len(self._matrices)
                    self._matrices.append(product)
                    self._words.append((gen_index, index))
                    queue.append(len(self._matrices) - 1)
        logger.info(f"Explicit group {self.name}: order {len(self._matrices)}")

    def _check_element_list(self, elements: Sequence) -> None:
        keys = set()
        for m in elements:
            keys.add(self._key(as_matrix(m)))
        for a in elements:
            for b in elements:
                if self._key(self._product(as_matrix(a), as_matrix(b))) not in keys:
                    raise PreconditionError("Element list is not closed under multiplication")

    def _set_irreps(self, irreps: Sequence[Sequence], dims: Optional[Sequence[int]]) -> None:
        self._irrep_generators = [[as_matrix(m) for m in irrep] for irrep in irreps]
        if dims is None:
            if any(not irrep for irrep in self._irrep_generators):
                raise PreconditionError("Irreducible dimensions are required when there are no generators")
            dims = [irrep[0].shape[0] for irrep in self._irrep_generators]
        self._irrep_dims = [int(d) for d in dims]
        for index, irrep in enumerate(self._irrep_generators):
            if len(irrep) != len(self._generator_matrices):
                raise PreconditionError(f"Irreducible {index} must give one matrix per generator")
        # homomorphism check on every closure edge
        for gen_index in range(len(self._generator_matrices)):
            gen = self._generator_element(gen_index)
            for element in range(self.order):
                target = self.multiply(gen, element)
                for index in range(len(self._irrep_generators)):
                    lhs = self._product(self.irrep_matrix(index, gen), self.irrep_matrix(index, element))
                    if not matrices_equal(as_matrix(lhs), self.irrep_matrix(index, target), Tolerances.FLOAT):
                        raise PreconditionError(f"Irreducible {index} is not a homomorphism")

    def _generator_element(self, gen_index: int) -> int:
        return self._keys[self._key(self._generator_matrices[gen_index])]

    @property
    def order(self) -> int:
        return len(self._matrices)

    @property
    def identity(self):
        return 0

    def multiply(self, g, h):
        return self._keys[self._key(self._product(self._matrices[g], self._matrices[h]))]

    def inverse(self, g):
        ident = self._key(identity(self.degree))
        for h in range(self.order):
            if self._key(self._product(self._matrices[g], self._matrices[h])) == ident:
                return h
        raise PreconditionError("Element without inverse")

    def generators(self):
        return [self._generator_element(i) for i in range(len(self._generator_matrices))]

    def elements(self):
        return list(range(self.order))

    def matrix(self, g):
        return self._matrices[g]

    def permutation(self, g):
        m = self._matrices[g]
        if not is_exact_matrix(m):
            return None
        perm = []
        for i in range(self.degree):
            column = [m[j, i] for j in range(self.degree)]
            ones = [j for j, v in enumerate(column) if v == 1]
            if len(ones) != 1 or any(v != 0 for j, v in enumerate(column) if j != ones[0]):
                return None
            perm.append(ones[0])
        return tuple(perm)

    @property
    def is_permutation(self) -> bool:
        return all(self.permutation(g) is not None for g in self.generators())

    def label(self, g) -> str:
        return f"m{g}"

    @property
    def has_irreps(self) -> bool:
        return self._irrep_generators is not None

    def irrep_matrix(self, index: int, g) -> np.ndarray:
        if self._irrep_generators is None:
            raise UnsupportedError(f"{self.name}: no irreducible matrices supplied")
        key = (index, g)
        if key not in self._irrep_cache:
            gen_index, parent = self._words[g]
            if gen_index < 0:
                d = self._irrep_dims[index]
                value = identity(d)
            else:
                value = as_matrix(self._product(self._irrep_generators[index][gen_index],
                                                self.irrep_matrix(index, parent)))
            self._irrep_cache[key] = value
        return self._irrep_cache[key]

    def character_table(self) -> CharacterTable:
        if self._table is None:
            classes = self.conjugacy_classes()
            if self._irrep_generators is not None:
                rows = []
                for index in range(len(self._irrep_generators)):
                    row = []
                    for cls in classes:
                        m = self.irrep_matrix(index, cls.representative)
                        row.append(to_scalar(sum(m[i, i] for i in range(m.shape[0]))))
                    rows.append(row)
                dims = list(self._irrep_dims)
            elif self._user_characters is not None:
                rows = [[to_scalar(v) for v in row] for row in self._user_characters]
                if any(len(row) != len(classes) for row in rows):
                    raise PreconditionError(f"Character rows must have {len(classes)} entries")
                dims = [int(round(complex(row[0]).real)) for row in rows]
            else:
                raise UnsupportedError(f"{self.name}: character table must be supplied for explicit groups")
            labels = [f"chi_{i}" for i in range(len(rows))]
            table = CharacterTable(classes, rows, dims, labels, self.order)
            table.validate()
            self._table = table
        return self._table
