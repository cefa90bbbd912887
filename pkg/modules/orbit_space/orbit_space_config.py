"""Orbit-space reformulation configuration."""

from core.config import Limits, Tolerances

# Built-in generating sets of `symred orbitspace --basis` for S:n
BASES = ("e", "p")

# Variable prefix of reformulated objectives, constraints and J entries
GENERATOR_PREFIX = "z"

# J(Π(x)) ⪰ 0 and p̃(Π(x)) = f(x) are checked exactly on random rational points x
SAMPLE_COUNT = 200
SAMPLE_BOUND = 3
SAMPLE_DENOMINATOR = 7
SAMPLE_SEED = 20240601

# Desk search over {J ⪰ 0, g̃ ≥ 0}: float slack of the feasibility filter and step tolerance
FEASIBILITY_TOL = Tolerances.FLOAT
SEARCH_TOL = Tolerances.ORBIT_SEARCH
DEFAULT_BOX = Limits.DEFAULT_BOX

# Name written into the SDPA comment of an exported Q_k
QK_NAME = "orbit-qk"
