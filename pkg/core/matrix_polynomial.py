"""
Symmetric matrices with polynomial entries (H-matrices, B-blocks, J-matrices).
"""

from typing import List, Sequence

import numpy as np

from core.config import Tolerances
from core.errors import DimensionMismatchError, PreconditionError
from core.matrices import as_matrix
from core.polynomial import Polynomial
from core.scalars import to_scalar


class MatrixPolynomial:
    """
    Square symmetric matrix of Polynomials sharing one variable count.
    """

    def __init__(self, entries: Sequence[Sequence[Polynomial]], check_symmetric: bool = True):
        """
        :param entries: Square grid of polynomials
        :param check_symmetric: Verify entries[i][j] == entries[j][i]
        :raises PreconditionError: If the grid is ragged, mixes variable counts or is not symmetric
        """
        self.entries: List[List[Polynomial]] = [list(row) for row in entries]
        self.dim = len(self.entries)
        if any(len(row) != self.dim for row in self.entries):
            raise PreconditionError("MatrixPolynomial needs a square grid")
        counts = {p.num_vars for row in self.entries for p in row}
        if len(counts) > 1:
            raise DimensionMismatchError(f"Entries use different variable counts: {sorted(counts)}")
        self.num_vars = counts.pop() if counts else 0
        if check_symmetric:
            for i in range(self.dim):
                for j in range(i + 1, self.dim):
                    if self.entries[i][j] != self.entries[j][i]:
                        raise PreconditionError(f"Entry ({i},{j}) differs from ({j},{i})")

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixPolynomial) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.entries))

    @property
    def degree(self) -> int:
        return max((p.degree for row in self.entries for p in row), default=-1)

    def evaluate(self, point: Sequence) -> np.ndarray:
        """Scalar matrix at a point (exact for exact input)."""
        return as_matrix([[p.evaluate(point) for p in row] for row in self.entries])

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Float matrices at many points: shape (k, dim, dim)."""
        points = np.asarray(points, dtype=float)
        out = np.zeros((points.shape[0], self.dim, self.dim))
        for i in range(self.dim):
            for j in range(i, self.dim):
                values = np.real(self.entries[i][j].evaluate_many(points))
                out[:, i, j] = values
                out[:, j, i] = values
        return out

    def substitute(self, images: Sequence[Polynomial]) -> "MatrixPolynomial":
        return MatrixPolynomial([[p.substitute(images) for p in row] for row in self.entries],
                                check_symmetric=False)

    def pair(self, matrix) -> Polynomial:
        """
        Trace pairing ⟨A, self⟩ = Σ_{u,v} A[u][v]·self[u][v].

        :param matrix: Scalar matrix of the same size
        """
        a = as_matrix(matrix)
        if a.shape != (self.dim, self.dim):
            raise DimensionMismatchError(f"Pairing a {a.shape} matrix with a {self.dim}x{self.dim} block")
        total = Polynomial.zero(self.num_vars)
        for u in range(self.dim):
            for v in range(self.dim):
                coeff = to_scalar(a[u, v])
                if coeff != 0:
                    total = total + self.entries[u][v] * coeff
        return total

    def is_close(self, other: "MatrixPolynomial", tol: float = Tolerances.FLOAT) -> bool:
        return self.dim == other.dim and all(
            self.entries[i][j].is_close(other.entries[i][j], tol)
            for i in range(self.dim) for j in range(self.dim))

    def to_json(self) -> list:
        return [[p.to_json() for p in row] for row in self.entries]

    @classmethod
    def from_json(cls, data) -> "MatrixPolynomial":
        return cls([[Polynomial.from_json(p) for p in row] for row in data])

    def format(self, names=None, prefix: str = "z") -> List[List[str]]:
        return [[p.format(names, prefix=prefix) for p in row] for row in self.entries]

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(row) + "]" for row in self.format()]
        return "MatrixPolynomial([" + ", ".join(rows) + "])"
