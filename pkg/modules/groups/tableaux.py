"""
Partitions, Young tableaux and Specht modules.

Tableaux hold the entries 1..n. A permutation g (0-based tuple, g[i] = image of i)
acts on a tableau by replacing every entry v with g[v-1] + 1. Specht modules use the
polytabloid basis indexed by standard tableaux.
"""

import itertools
import logging
from functools import lru_cache
from math import factorial
from typing import Dict, List, Sequence, Tuple

import numpy as np

from core.config import Limits
from core.errors import PreconditionError

logger = logging.getLogger("Groups")

Partition = Tuple[int, ...]
TabloidKey = Tuple[int, ...]


def check_partition(shape: Sequence[int]) -> Partition:
    """
    :param shape: Candidate partition
    :return: The shape as a tuple
    :raises PreconditionError: If the parts are not positive and non-increasing
    """
    shape = tuple(int(p) for p in shape)
    if not shape or any(p <= 0 for p in shape):
        raise PreconditionError(f"Invalid partition {shape}: parts must be positive")
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)):
        raise PreconditionError(f"Invalid partition {shape}: parts must be non-increasing")
    return shape


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int = None) -> Tuple[Partition, ...]:
    """All partitions of n in descending lexicographic order, e.g. (3), (2,1), (1,1,1)."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    result = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            result.append((first,) + rest)
    return tuple(result)


def conjugate_partition(shape: Sequence[int]) -> Partition:
    shape = check_partition(shape)
    return tuple(sum(1 for p in shape if p > i) for i in range(shape[0]))


def hook_length_dimension(shape: Sequence[int]) -> int:
    """Number of standard tableaux of the shape."""
    shape = check_partition(shape)
    columns = conjugate_partition(shape)
    hooks = 1
    for i, row in enumerate(shape):
        for j in range(row):
            hooks *= (row - j) + (columns[j] - i) - 1
    return factorial(sum(shape)) // hooks


def cycle_type(perm: Sequence[int]) -> Partition:
    """Cycle lengths of a 0-based permutation, sorted descending."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


class Tableau:
    """
    Young tableau filled with 1..n.
    """

    __slots__ = ("rows", "shape", "n")

    def __init__(self, rows: Sequence[Sequence[int]]):
        """
        :param rows: Rows top to bottom, e.g. [[1, 2, 4], [3, 5]]
        :raises PreconditionError: If the shape is not a partition or the entries are not 1..n
        """
        self.rows = tuple(tuple(int(v) for v in row) for row in rows)
        self.shape = check_partition([len(row) for row in self.rows])
        self.n = sum(self.shape)
        if sorted(v for row in self.rows for v in row) != list(range(1, self.n + 1)):
            raise PreconditionError(f"Tableau entries must be 1..{self.n}: {self.rows}")

    def __eq__(self, other) -> bool:
        return isinstance(other, Tableau) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return "Tableau(" + "/".join("".join(str(v) for v in row) if self.n < 10 else
                                     ",".join(str(v) for v in row) for row in self.rows) + ")"

    def columns(self) -> List[Tuple[int, ...]]:
        return [tuple(row[j] for row in self.rows if len(row) > j) for j in range(self.shape[0])]

    def position(self, value: int) -> Tuple[int, int]:
        for r, row in enumerate(self.rows):
            if value in row:
                return r, row.index(value)
        raise PreconditionError(f"{value} is not an entry of {self}")

    def is_standard(self) -> bool:
        rows_ok = all(row[j] < row[j + 1] for row in self.rows for j in range(len(row) - 1))
        cols_ok = all(col[i] < col[i + 1] for col in self.columns() for i in range(len(col) - 1))
        return rows_ok and cols_ok

    def row_key(self) -> TabloidKey:
        """Row index of each entry 1..n; identifies the tabloid {T}."""
        key = [0] * self.n
        for r, row in enumerate(self.rows):
            for v in row:
                key[v - 1] = r
        return tuple(key)

    def apply(self, perm: Sequence[int]) -> "Tableau":
        """g·T: entry v becomes perm[v-1] + 1."""
        return Tableau([[perm[v - 1] + 1 for v in row] for row in self.rows])

    def word(self) -> Tuple[int, ...]:
        """Entries read column by column, each column bottom to top, left to right."""
        return tuple(v for col in self.columns() for v in reversed(col))

    def to_json(self) -> list:
        return [list(row) for row in self.rows]


def standard_tableaux(shape: Sequence[int]) -> List[Tableau]:
    """
    All standard tableaux of a shape, sorted by row_key (so the single-row filling comes first).
    """
    shape = check_partition(shape)
    n = sum(shape)
    found = []

    def backtrack(rows: List[List[int]], value: int):
        if value > n:
            found.append(Tableau(rows))
            return
        for r in range(len(shape)):
            if len(rows[r]) < shape[r] and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(value)
                backtrack(rows, value + 1)
                rows[r].pop()

    backtrack([[] for _ in shape], 1)
    return sorted(found, key=lambda t: t.row_key())


def polytabloid(tableau: Tableau) -> Dict[TabloidKey, int]:
    """
    e_T = Σ_{τ column permutation} sgn(τ)·{τT} as a map tabloid key -> coefficient.
    """
    columns = tableau.columns()
    column_perms = []
    for col in columns:
        options = []
        for perm in itertools.permutations(range(len(col))):
            options.append((perm, _permutation_sign(perm)))
        column_perms.append(options)
    result: Dict[TabloidKey, int] = {}
    for choice in itertools.product(*column_perms):
        key = [0] * tableau.n
        sign = 1
        for col, (perm, perm_sign) in zip(columns, choice):
            sign *= perm_sign
            for row, source in enumerate(perm):
                key[col[source] - 1] = row
        key = tuple(key)
        result[key] = result.get(key, 0) + sign
    return {k: c for k, c in result.items() if c}


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


class SpechtModule:
    """
    Matrix representation of Sₙ on the Specht module W^λ in the polytabloid basis.
    Column T of matrix(g) holds the coordinates of e_{gT}.
    """

    def __init__(self, shape: Sequence[int]):
        """
        :param shape: Partition λ of n ≤ Limits.MAX_SPECHT_N
        :raises PreconditionError: Invalid partition or n too large
        """
        self.shape = check_partition(shape)
        self.n = sum(self.shape)
        if self.n > Limits.MAX_SPECHT_N:
            raise PreconditionError(f"Specht modules are built for n ≤ {Limits.MAX_SPECHT_N}, got {self.n}")
        self.tableaux = standard_tableaux(self.shape)
        self.dimension = len(self.tableaux)
        self._index = {t.row_key(): i for i, t in enumerate(self.tableaux)}
        self._polytabloids = [polytabloid(t) for t in self.tableaux]
        self.generator_matrices = [self._adjacent_matrix(i) for i in range(self.n - 1)]
        self._cache: Dict[Tuple[int, ...], np.ndarray] = {tuple(range(self.n)): np.eye(self.dimension, dtype=np.int64)}
        logger.debug(f"Specht module {self.shape}: dimension {self.dimension}")

    def straighten(self, vector: Dict[TabloidKey, int]) -> np.ndarray:
        """
        Coordinates of a polytabloid combination in the standard basis, peeling the
        lexicographically smallest tabloid (the leading tabloid of exactly one basis vector).
        """
        rest = dict(vector)
        coords = np.zeros(self.dimension, dtype=np.int64)
        while rest:
            key = min(rest)
            if key not in self._index:
                raise PreconditionError(f"Vector is not in the Specht module {self.shape}")
            i = self._index[key]
            coeff = rest[key]
            coords[i] += coeff
            for k, c in self._polytabloids[i].items():
                value = rest.get(k, 0) - coeff * c
                if value:
                    rest[k] = value
                else:
                    rest.pop(k, None)
        return coords

    def _adjacent_matrix(self, i: int) -> np.ndarray:
        """Matrix of s_{i+1} = (i+1, i+2) (0-based index i)."""
        swap = list(range(self.n))
        swap[i], swap[i + 1] = swap[i + 1], swap[i]
        m = np.zeros((self.dimension, self.dimension), dtype=np.int64)
        for col, tableau in enumerate(self.tableaux):
            (r1, c1), (r2, c2) = tableau.position(i + 1), tableau.position(i + 2)
            if c1 == c2:
                m[col, col] = -1
                continue
            image = tableau.apply(swap)
            if r1 != r2 and image.is_standard():
                m[self._index[image.row_key()], col] = 1
            else:
                m[:, col] = self.straighten(polytabloid(image))
        return m

    def matrix(self, perm: Sequence[int]) -> np.ndarray:
        """
        ρ(g) as an integer matrix, built from a reduced word of adjacent transpositions.
        """
        perm = tuple(perm)
        if len(perm) != self.n:
            raise PreconditionError(f"Permutation of length {len(perm)} for S_{self.n}")
        if perm in self._cache:
            return self._cache[perm]
        for j in range(self.n - 1):
            if perm[j] > perm[j + 1]:
                shorter = list(perm)
                shorter[j], shorter[j + 1] = shorter[j + 1], shorter[j]
                result = self.matrix(tuple(shorter)) @ self.generator_matrices[j]
                self._cache[perm] = result
                return result
        raise PreconditionError(f"Not a permutation: {perm}")

    def character(self, perm: Sequence[int]) -> int:
        return int(np.trace(self.matrix(perm)))


@lru_cache(maxsize=None)
def specht_module(shape: Tuple[int, ...]) -> SpechtModule:
    """Cached SpechtModule for a partition."""
    return SpechtModule(shape)
