"""Invariant ring configuration."""

from core.config import Limits

# Symmetric bases understood by rewrite_in_invariants and `symred rewrite --basis`
BASIS_KINDS = {
    "e": "elementary",
    "p": "powersum",
}
CUSTOM_KIND = "custom"

# Newton identities are applied for k ≤ n ≤ MAX_NEWTON_N
MAX_NEWTON_N = Limits.MAX_NEWTON_N

# Leading-term elimination gives up after this many subtractions
REWRITE_STEPS = Limits.REWRITE_STEPS

# Higher Specht and H-matrix computations sum over row and column stabilizers of S_n
MAX_SPECHT_N = 6

# Dihedral covariant bases are built in closed form for the plane realization up to this n
MAX_DIHEDRAL_N = 6

# Generator variable prefix of rewritten invariants and H-matrix entries
GENERATOR_PREFIX = "z"
