# demos_config.py
"""
Expected values of the named demos.
WORKED marks numbers printed with the worked examples, DERIVED marks values worked out from them by hand.
Polynomial expectations are assembled in demos.py from the generator variables.
"""

# WORKED: θ(C_k) = k/2 for even k
THETA_CYCLE = 10
THETA_VALUE = 5

# DERIVED: odd cycles follow n·cos(π/k)/(1 + cos(π/k))
THETA_CYCLES = range(3, 17)
THETA_TOL = 1e-6

# DERIVED: real blocks of the C4 circulant with first row (1, 2, 3, 4)
C4_FIXTURE = "c4_circulant.json"
C4_BLOCKS = [[[10]], [[-2, 2], [-2, -2]], [[-2]]]

# DERIVED: the diagonal entry at X1*X2 must match the coefficient -3 of X1^2*X2^2
MOTZKIN_FIXTURE = "motzkin.json"
MOTZKIN_GRAM_REASON = "Gram diagonal entry at X1*X2 forced to -3 < 0"

# WORKED: tableau T = [[1,2,4],[3,5]] read with V = [[1,3,5],[2,4]]
SPECHT_T = [[1, 2, 4], [3, 5]]
SPECHT_V = [[1, 3, 5], [2, 4]]
HIGHER_SPECHT = {"word": "31524", "index": "10201", "charge": 4}

# WORKED: Motzkin on the orbit space of S2 has minimum 0
ORBIT_MOTZKIN_MIN = 0.0
ORBIT_TOL = 1e-4

# DERIVED: min(p4 - p2) = -n/4, attained with every x_i^2 = 1/2
QUARTIC_FIXTURE = "quartic_n4.json"
DEGREE_MIN = -1.0
DEGREE_TOL = 1e-6

# WORKED: c1 = c2 = 1, c3 = 3, c4 = 2 once c1 is pinned to 1
SAGE_FIXTURE = "s3_signomial.json"
SAGE_GROUP = "S:3"
SAGE_PINS = {0: 1}
SAGE_COEFFICIENTS = [1, 1, 3, 2]

# DERIVED: e^x + e^-x - 2 is AGE with entropy -2
COSH_FIXTURE = "cosh.json"
COSH_GROUP = "trivial:1"
COSH_BOUND = 2.0
SAGE_TOL = 1e-6

# WORKED: block sizes of the symmetric quartic SOS problem stabilize at (2, 2, 1) from n = 4 on
QUARTIC_BLOCKS = [2, 2, 1]
QUARTIC_NS = (4, 5, 6)

# DERIVED: reduced θ model of C5 survives an SDPA write/read cycle
SDPA_CYCLE = 5
