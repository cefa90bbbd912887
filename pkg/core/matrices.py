"""
Dense matrix helpers.

Exact matrices are numpy object arrays of fractions.Fraction; float matrices are
ordinary float/complex arrays. Exact linear algebra (rank, nullspace, solving)
goes through sympy, PSD decisions on exact input through a pivoted LDLᵀ.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

from core.config import Tolerances
from core.errors import ConvergenceError, DimensionMismatchError, InconsistentSystemError, PreconditionError
from core.scalars import conj, format_scalar, is_exact, parse_scalar, to_scalar

logger = logging.getLogger("Algebra")


def as_matrix(rows) -> np.ndarray:
    """
    Normalize a nested sequence (or array) into a 2-D array.
    All-exact input gives an object array of Fractions, anything else a float or complex array.

    :param rows: Nested sequence of scalars
    :return: 2-D numpy array
    """
    if isinstance(rows, np.ndarray) and rows.dtype != object:
        if rows.ndim != 2:
            raise DimensionMismatchError(f"Expected a 2-D matrix, got shape {rows.shape}")
        if np.iscomplexobj(rows) and np.all(rows.imag == 0):
            return rows.real.astype(float)
        return rows
    grid = np.array(rows, dtype=object)
    if grid.ndim != 2:
        if grid.size == 0:
            return np.zeros((0, 0), dtype=object)
        raise DimensionMismatchError(f"Expected a 2-D matrix, got shape {grid.shape}")
    values = [to_scalar(v) for v in grid.flat]
    if all(is_exact(v) for v in values):
        out = np.empty(grid.shape, dtype=object)
        out.flat[:] = values
        return out
    if any(isinstance(v, complex) for v in values):
        return np.array([complex(v) for v in values], dtype=complex).reshape(grid.shape)
    return np.array([float(v) for v in values], dtype=float).reshape(grid.shape)


def is_exact_matrix(m: np.ndarray) -> bool:
    return m.dtype == object and all(is_exact(v) for v in m.flat)


def to_float(m: np.ndarray) -> np.ndarray:
    """Float (or complex) copy of a matrix of scalars."""
    m = np.asarray(m)
    if m.dtype != object:
        return m.astype(complex if np.iscomplexobj(m) else float)
    values = [complex(v) for v in m.flat]
    if any(v.imag != 0 for v in values):
        return np.array(values, dtype=complex).reshape(m.shape)
    return np.array([v.real for v in values], dtype=float).reshape(m.shape)


def identity(n: int) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = Fraction(1 if i == j else 0)
    return out


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(Fraction(0))
    return out


def conj_transpose(m: np.ndarray) -> np.ndarray:
    if m.dtype == object:
        return np.vectorize(conj, otypes=[object])(m.T) if m.size else m.T.copy()
    return m.conj().T


def is_symmetric(m: np.ndarray, tol: float = Tolerances.FLOAT) -> bool:
    """Hermitian check (exact equality for exact matrices)."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    if is_exact_matrix(m):
        return bool(np.all(m == m.T))
    f = to_float(m)
    return bool(np.max(np.abs(f - f.conj().T), initial=0.0) <= tol)


def matrices_equal(a: np.ndarray, b: np.ndarray, tol: float = Tolerances.FLOAT) -> bool:
    if a.shape != b.shape:
        return False
    if is_exact_matrix(a) and is_exact_matrix(b):
        return bool(np.all(a == b))
    return bool(np.max(np.abs(to_float(a) - to_float(b)), initial=0.0) <= tol)


def frobenius_inner(a: np.ndarray, b: np.ndarray):
    """⟨A, B⟩ = Σ conj(A_ij)·B_ij (trace inner product for Hermitian data)."""
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Inner product of shapes {a.shape} and {b.shape}")
    if a.dtype == object and b.dtype == object:
        total = Fraction(0)
        for x, y in zip(a.flat, b.flat):
            total = total + conj(x) * y
        return total
    return complex(np.vdot(to_float(a), to_float(b))) if np.iscomplexobj(a) or np.iscomplexobj(b) \
        else float(np.vdot(to_float(a), to_float(b)))


# --- exact linear algebra (sympy) ---
def to_sympy_matrix(m) -> sympy.Matrix:
    m = as_matrix(m) if not isinstance(m, np.ndarray) else m
    rows, cols = m.shape
    if m.dtype == object and is_exact_matrix(m):
        return sympy.Matrix(rows, cols, [sympy.Rational(v.numerator, v.denominator) for v in m.flat])
    raise PreconditionError("Exact linear algebra requires rational entries")


def from_sympy_matrix(m: sympy.Matrix) -> np.ndarray:
    out = np.empty((m.rows, m.cols), dtype=object)
    for i in range(m.rows):
        for j in range(m.cols):
            out[i, j] = to_scalar(m[i, j])
    return out


def exact_rank(rows) -> int:
    m = as_matrix(rows)
    if m.size == 0:
        return 0
    return to_sympy_matrix(m).rank()


def exact_nullspace(rows) -> List[np.ndarray]:
    """Basis of the right nullspace, each vector an object array of Fractions."""
    m = as_matrix(rows)
    return [from_sympy_matrix(v).reshape(-1) for v in to_sympy_matrix(m).nullspace()]


def exact_solve(a, b) -> Tuple[np.ndarray, List[np.ndarray]]:
    """
    Solve A·x = b over the rationals.

    :param a: Coefficient matrix (rows x cols)
    :param b: Right-hand side (rows)
    :return: (particular solution, nullspace basis)
    :raises InconsistentSystemError: If the system has no solution
    """
    a = as_matrix(a)
    rows, cols = a.shape
    rhs = np.empty((rows, 1), dtype=object)
    rhs[:, 0] = [to_scalar(v) for v in b]
    if rows == 0:
        return zeros(cols, 1).reshape(-1), [row for row in identity(cols)]
    augmented = to_sympy_matrix(a).row_join(to_sympy_matrix(rhs))
    reduced, pivots = augmented.rref()
    if cols in pivots:
        raise InconsistentSystemError("Linear system is inconsistent")
    particular = zeros(cols, 1).reshape(-1)
    for row, col in enumerate(pivots):
        particular[col] = to_scalar(reduced[row, cols])
    return particular, exact_nullspace(a)


def float_rank(m, tol: float = Tolerances.DEPENDENCE) -> int:
    f = to_float(as_matrix(m))
    if f.size == 0:
        return 0
    return int(np.linalg.matrix_rank(f, tol=tol))


# --- PSD checks ---
@dataclass
class PsdCheck:
    """
    Outcome of an LDLᵀ PSD test.

    :param psd: True when the matrix is positive semidefinite
    :param pivots: Order in which diagonal pivots were eliminated
    :param diagonal: D entries of the factorization (in pivot order)
    :param lower: Unit lower-triangular L in pivot order (P A Pᵀ = L D Lᵀ) when psd
    :param witness: Vector v with vᵀAv < 0 when not psd
    :param witness_value: vᵀAv for the witness
    """
    psd: bool
    pivots: List[int] = field(default_factory=list)
    diagonal: List = field(default_factory=list)
    lower: Optional[np.ndarray] = None
    witness: Optional[np.ndarray] = None
    witness_value: Optional[object] = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def quadratic_form(m: np.ndarray, v: Sequence):
    total = Fraction(0) if m.dtype == object else 0.0
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            total = total + conj(v[i]) * m[i, j] * v[j]
    return total


def ldlt_psd_check(m, tol: Optional[float] = None) -> PsdCheck:
    """
    Symmetric pivoted LDLᵀ. For exact input the decision is exact and the witness
    is rational. The elimination keeps W = E·A·Eᵀ, so a witness y found on the
    trailing Schur complement maps back to v = Eᵀy.

    :param m: Symmetric matrix
    :param tol: Pivot tolerance (0 for exact input, Tolerances.FLOAT otherwise)
    :return: PsdCheck
    :raises PreconditionError: If m is not square symmetric
    """
    m = as_matrix(m)
    if not is_symmetric(m, tol=Tolerances.FLOAT):
        raise PreconditionError("ldlt_psd_check needs a symmetric matrix")
    exact = is_exact_matrix(m)
    if not exact and np.iscomplexobj(m):
        raise PreconditionError("ldlt_psd_check works on real matrices")
    if tol is None:
        tol = 0 if exact else Tolerances.FLOAT
    n = m.shape[0]
    work = m.copy() if exact else to_float(m).copy()
    elim = identity(n) if exact else np.eye(n)
    remaining = list(range(n))
    pivots, diagonal = [], []

    while remaining:
        p = max(remaining, key=lambda i: work[i, i])
        d = work[p, p]
        if d < -tol:
            witness = elim[p, :].copy()
            return PsdCheck(False, pivots, diagonal, witness=witness, witness_value=quadratic_form(m, witness))
        if d <= tol:
            for a_pos, i in enumerate(remaining):
                for j in remaining[a_pos + 1:]:
                    if abs(work[i, j]) > tol:
                        sign = 1 if work[i, j] > 0 else -1
                        witness = elim[i, :] - sign * elim[j, :]
                        return PsdCheck(False, pivots, diagonal, witness=witness,
                                        witness_value=quadratic_form(m, witness))
            pivots.extend(remaining)
            diagonal.extend([Fraction(0) if exact else 0.0] * len(remaining))
            break
        remaining.remove(p)
        pivots.append(p)
        diagonal.append(d)
        for i in remaining:
            factor = work[i, p] / d
            if factor == 0:
                continue
            work[i, :] = work[i, :] - factor * work[p, :]
            work[:, i] = work[:, i] - factor * work[:, p]
            elim[i, :] = elim[i, :] - factor * elim[p, :]

    lower = _lower_from_elimination(elim, pivots, exact)
    logger.debug(f"LDLᵀ: PSD with rank {sum(1 for d in diagonal if d != 0)} of {n}")
    return PsdCheck(True, pivots, diagonal, lower=lower)


def _lower_from_elimination(elim: np.ndarray, pivots: List[int], exact: bool) -> np.ndarray:
    """L = (P E Pᵀ)^{-1}; the permuted elimination matrix is unit lower triangular."""
    permuted = elim[np.ix_(pivots, pivots)]
    if exact:
        return from_sympy_matrix(to_sympy_matrix(permuted).inv())
    return np.linalg.inv(permuted.astype(float))


def is_psd(m, tol: Optional[float] = None) -> bool:
    return ldlt_psd_check(m, tol).psd


def sym_eigenvalues(m, tol: float = Tolerances.FLOAT) -> np.ndarray:
    """
    Sorted eigenvalues of a symmetric (Hermitian) matrix in floating point.

    :raises PreconditionError: If the matrix is not symmetric within tol
    :raises ConvergenceError: If LAPACK fails to converge
    """
    f = to_float(as_matrix(m))
    if f.shape[0] != f.shape[1] or np.max(np.abs(f - f.conj().T), initial=0.0) > max(tol, Tolerances.FLOAT):
        raise PreconditionError("sym_eigenvalues needs a symmetric matrix")
    if f.size == 0:
        return np.zeros(0)
    try:
        return np.linalg.eigvalsh(f)
    except np.linalg.LinAlgError as e:
        raise ConvergenceError(f"Eigenvalue iteration failed: {e}")


def min_eigenvalues(stack: np.ndarray) -> np.ndarray:
    """Smallest eigenvalue of each matrix in a (k, d, d) stack of symmetric float matrices."""
    if stack.shape[-1] == 0:
        return np.zeros(stack.shape[0])
    return np.linalg.eigvalsh(stack)[:, 0]


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Principal square root of a Hermitian PSD float matrix."""
    values, vectors = np.linalg.eigh(m)
    values = np.clip(values, 0.0, None)
    return (vectors * np.sqrt(values)) @ vectors.conj().T


# --- JSON ---
def matrix_to_json(m) -> list:
    m = as_matrix(m)
    return [[format_scalar(v) for v in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    if not isinstance(data, list) or any(not isinstance(row, list) for row in data):
        raise PreconditionError("Matrix JSON must be a list of rows")
    if data and len({len(row) for row in data}) != 1:
        raise PreconditionError("Matrix JSON rows have different lengths")
    return as_matrix([[parse_scalar(v) for v in row] for row in data]) if data else zeros(0, 0)
