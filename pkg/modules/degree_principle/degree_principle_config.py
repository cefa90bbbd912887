"""Degree-principle reduction configuration."""

from core.config import Limits, Tolerances

# Partition enumeration: all partitions with at most r parts, or exactly r parts
MODES = ("at-most", "exact")

# Subproblem solvers of `symred degree --via`
VIA = ("grid", "sos")

# Grid search on [-box, box]^r with GRID_POINTS per axis, then coordinate descent down to SEARCH_TOL
DEFAULT_BOX = Limits.DEFAULT_BOX
GRID_POINTS = Limits.GRID_POINTS
SEARCH_TOL = Tolerances.SEARCH

# A reconstructed witness must reproduce the subproblem value within this relative tolerance
WITNESS_TOL = Tolerances.FLOAT

# Subproblems minimized concurrently
DEFAULT_WORKERS = 1
