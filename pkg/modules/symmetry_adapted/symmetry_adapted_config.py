"""Symmetry-adapted basis configuration."""

from core.config import Tolerances

# Basis flavors: complex irreducible blocks, or real blocks with conjugate pairs merged
FLAVORS = ("complex", "real")

# Gram–Schmidt rejects residual vectors shorter than this
DEPENDENCE_TOL = Tolerances.DEPENDENCE

# Float entries of bases and zonal matrices are snapped to rationals with at most this denominator,
# and only when the rational lies within TIDY_TOL; anything else stays floating point
TIDY_DENOMINATOR = 10_000
TIDY_TOL = 1e-12

# Kind of an isotypic component inside a basis
KIND_COMPLEX = "complex"
KIND_REAL = "real"
KIND_PAIR = "pair"
