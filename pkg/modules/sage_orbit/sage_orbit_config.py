"""SAGE certification configuration."""

from core.config import Limits, Tolerances

# Entropy program: damped Newton until the Newton decrement drops below ENTROPY_TOL
ENTROPY_TOL = Tolerances.ENTROPY
NEWTON_ITERATIONS = Limits.NEWTON_ITERATIONS
ARMIJO = 0.25
BACKTRACK = 0.5
BACKTRACK_STEPS = 60

# Certificate checks: moment balance and entropy condition
BALANCE_TOL = 1e-9
CERTIFICATE_TOL = 1e-7

# λ bisection: upper end from samples of f in [-SAMPLE_BOUND, SAMPLE_BOUND]^n, lower end -BRACKET
BISECTION_TOL = Tolerances.SEARCH
BISECTION_STEPS = Limits.BISECTION_STEPS
BRACKET = Limits.DEFAULT_BOX
SAMPLE_COUNT = 200
SAMPLE_BOUND = 3.0
SAMPLE_SEED = 20240601

DEFAULT_WORKERS = 1
