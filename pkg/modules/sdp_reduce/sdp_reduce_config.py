"""SDP reduction, θ-number and SDPA configuration."""

from core.config import Tolerances

# Optimization senses of an SDPProblem
SENSES = ("max", "min")

# SDPA text: comment lines start with one of these characters; the sense travels in the first one
SDPA_COMMENT_CHARS = ("*", '"')
SDPA_SENSE_TAG = "* symred sense="

# Entries at or below this magnitude are not written to SDPA files
SDPA_ZERO = Tolerances.SDPA_ZERO

# Decimal digits used to identify duplicate reduced constraints with float data
DEDUPE_DIGITS = 9

# Largest vertex count for the brute-force independence number
MAX_INDEPENDENCE_VERTICES = 40
