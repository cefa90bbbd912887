"""Sums-of-squares search configuration."""

from core.config import Limits, Tolerances

# Certificate methods of `symred sos`
METHODS = ("blocks", "gram")

# Generator families for the block method
GENERATOR_SOURCES = ("adapted", "higher-specht")

# Alternating projections push the PSD step this far inside the cone, one stage after another;
# the iteration budget is shared evenly between the stages
EPSILON_SCHEDULE = (1e-3, 1e-5, 1e-7, 0.0)
PROJECTION_ITERATIONS = Limits.PROJECTION_ITERATIONS

# Numeric Gram solutions are rounded with growing denominator caps, up to DENOMINATOR_CAP
ROUNDING_CAPS = (1, 10, 100, 1_000, 10_000, 100_000, Limits.DENOMINATOR_CAP)

# An iterate counts as PSD when its smallest eigenvalue is at least -SEARCH_TOL
SEARCH_TOL = Tolerances.FLOAT

# Coordinates tried when looking for a point where the target is negative
NEGATIVE_POINT_VALUES = (-1, 0, 1)
NEGATIVE_POINT_WIDE_VALUES = (-2, -1, 0, 1, 2)
NEGATIVE_POINT_MAX_VARS = 6
NEGATIVE_POINT_WIDE_MAX_VARS = 3

# Rational bisection on λ for sos_lower_bound
LOWER_BOUND_STEPS = 30
LOWER_BOUND_BRACKET_STEPS = 20

# The π basis of symmetric quartics is linearly independent from n = 4 on
MIN_QUARTIC_N = 4
MAX_QUARTIC_N = Limits.MAX_NEWTON_N

# `symred sos --method quartic` decides symmetric quartic forms with the closed-form representation
CLI_METHODS = METHODS + ("quartic",)
