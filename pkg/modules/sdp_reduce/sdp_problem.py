"""
Semidefinite programs in the form

    max / min ⟨C, X⟩  subject to  ⟨A_i, X⟩ = b_i,  X ⪰ 0,

with an optional group acting by X ↦ M(g)·X·M(g)ᵀ.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from core.config import Tolerances
from core.errors import DimensionMismatchError, NotInvariantError, PreconditionError
from core.matrices import (as_matrix, frobenius_inner, is_exact_matrix, is_symmetric, ldlt_psd_check,
                           matrices_equal, matrix_from_json, matrix_to_json, to_float)
from core.scalars import Scalar, format_scalar, is_exact, parse_scalar, to_scalar
from modules.groups.group_representation import GroupRepresentation
from modules.sdp_reduce.sdp_reduce_config import SENSES
from modules.symmetry_adapted.block_diagonal import check_commutes, commutant_average

logger = logging.getLogger("SdpReduce")


def _conjugate(m: np.ndarray, x: np.ndarray) -> np.ndarray:
    """M·X·Mᵀ."""
    if is_exact_matrix(m) and is_exact_matrix(x):
        return as_matrix(m.dot(x).dot(m.T))
    return to_float(m) @ to_float(x) @ to_float(m).T


def canonical_constraint(a: np.ndarray, b: Scalar) -> Tuple[np.ndarray, Scalar]:
    """Scale (A, b) so the first nonzero entry of A (row-major) is 1."""
    for v in a.flat:
        if v != 0:
            if a.dtype == object:
                return as_matrix(a / v), to_scalar(b) / v
            return a / v, to_scalar(b) / complex(v).real
    return a, b


@dataclass
class SDPProblem:
    objective: np.ndarray
    constraints: List[Tuple[np.ndarray, Scalar]]
    sense: str = "max"
    group: Optional[GroupRepresentation] = None
    name: str = "sdp"

    def __post_init__(self):
        self.objective = as_matrix(self.objective)
        self.constraints = [(as_matrix(a), to_scalar(b)) for a, b in self.constraints]
        if self.sense not in SENSES:
            raise PreconditionError(f"Unknown sense {self.sense!r}, expected one of {SENSES}")
        n = self.objective.shape[0]
        for k, m in enumerate([self.objective] + [a for a, _ in self.constraints]):
            if m.shape != (n, n):
                raise DimensionMismatchError(f"Matrix {k} has shape {m.shape}, expected {(n, n)}")
            if not is_symmetric(m):
                raise PreconditionError(f"Matrix {k} of {self.name} is not symmetric")
        if self.group is not None and self.group.degree != n:
            raise DimensionMismatchError(f"{self.group.name} acts on {self.group.degree} dimensions, SDP has {n}")

    @property
    def dim(self) -> int:
        return self.objective.shape[0]

    def objective_value(self, x) -> Scalar:
        return frobenius_inner(self.objective, as_matrix(x))

    def residuals(self, x) -> List[Scalar]:
        """⟨A_i, X⟩ - b_i for every constraint."""
        x = as_matrix(x)
        return [frobenius_inner(a, x) - b for a, b in self.constraints]

    def is_feasible(self, x, tol: float = Tolerances.FLOAT) -> bool:
        x = as_matrix(x)
        residuals = self.residuals(x)
        if is_exact_matrix(x) and all(is_exact(r) for r in residuals):
            if any(r != 0 for r in residuals):
                return False
        elif any(abs(r) > tol for r in residuals):
            return False
        return ldlt_psd_check(x, None if is_exact_matrix(x) else tol).psd

    def to_json(self) -> dict:
        return {"name": self.name, "sense": self.sense, "objective": matrix_to_json(self.objective),
                "constraints": [{"matrix": matrix_to_json(a), "rhs": format_scalar(b)}
                                for a, b in self.constraints]}

    @classmethod
    def from_json(cls, data: dict, group: Optional[GroupRepresentation] = None) -> "SDPProblem":
        """
        {"sense": "max"|"min", "objective": matrix, "constraints": [{"matrix": ..., "rhs": ...}], "name"?}

        :raises PreconditionError: On a malformed document
        """
        try:
            constraints = [(matrix_from_json(c["matrix"]), parse_scalar(c["rhs"])) for c in data["constraints"]]
            return cls(matrix_from_json(data["objective"]), constraints, data.get("sense", "max"), group,
                       data.get("name", "sdp"))
        except (KeyError, TypeError) as e:
            raise PreconditionError(f"Malformed SDP JSON: {e}")


def check_invariance(sdp: SDPProblem, tol: float = Tolerances.FLOAT) -> None:
    """
    The objective commutes with every generator and the constraint set is closed under
    the action (compared after canonical scaling).

    :raises PreconditionError: If no group is attached
    :raises NotInvariantError: With the violating generator and constraint index
    """
    group = sdp.group
    if group is None:
        raise PreconditionError(f"{sdp.name}: no group action attached")
    check_commutes(group, sdp.objective, tol)
    canonical = [canonical_constraint(a, b) for a, b in sdp.constraints]
    for g in group.generators():
        m = group.matrix(g)
        for k, (a, b) in enumerate(sdp.constraints):
            image, rhs = canonical_constraint(_conjugate(m, a), b)
            found = False
            for other, other_rhs in canonical:
                if matrices_equal(image, other, tol) and abs(complex(rhs) - complex(other_rhs)) <= tol:
                    found = True
                    break
            if not found:
                raise NotInvariantError(f"Constraint {k} of {sdp.name} leaves the constraint set under "
                                        f"generator {group.label(g)}", generator=group.label(g), item=k)
    logger.debug(f"{sdp.name}: invariant under {group.name}")


def average_invariant(sdp: SDPProblem, x) -> np.ndarray:
    """
    X_G = (1/|G|) Σ_g M(g)·X·M(g)ᵀ.

    :raises PreconditionError: If no group is attached
    """
    if sdp.group is None:
        raise PreconditionError(f"{sdp.name}: averaging needs a group action")
    x = as_matrix(x)
    if x.shape != (sdp.dim, sdp.dim):
        raise DimensionMismatchError(f"Matrix of shape {x.shape} for an SDP of size {sdp.dim}")
    return commutant_average(sdp.group, x)
