"""
Named reproductions of the worked examples. Each demo recomputes its value with the library and
compares against the expectation in demos_config.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Tuple

from core.config import Paths
from core.core_report import Status, read_json_file
from core.errors import SymredError
from core.matrices import matrix_from_json
from core.polynomial import Polynomial, power_sum
from modules.degree_principle.degree_principle import minimize_all
from modules.demos import demos_config as cfg
from modules.groups import (CyclicGroup, PolynomialSpaceRepresentation, SymmetricGroup, Tableau, multiplicities,
                            parse_group_spec)
from modules.invariant_ring import (InvariantBasis, default_h_setup, h_matrix, higher_specht, newton_convert,
                                    rewrite_in_invariants)
from modules.orbit_space import HilbertMap, j_matrix, minimize, reformulate
from modules.sage_orbit import Signomial, certify_sage, sage_bound
from modules.sdp_reduce import (cycle_edges, export_sdpa, parse_sdpa, reduce_sdp, simplex_solve, solve_theta,
                                theta_closed_form, theta_cyclic_lp, theta_sdp)
from modules.sos_invariant import gram_feasibility, gram_setup, invariant_sos_blocks
from modules.symmetry_adapted import block_diagonalize

logger = logging.getLogger("Demos")


@dataclass
class DemoOutcome:
    name: str
    passed: bool
    observed: Any
    expected: Any
    error: str = ""

    def to_json(self) -> dict:
        data = {"name": self.name, "passed": self.passed, "observed": self.observed, "expected": self.expected}
        if self.error:
            data["error"] = self.error
        return data


DemoFunction = Callable[[], Tuple[bool, Any, Any]]
DEMOS: Dict[str, Tuple[str, DemoFunction]] = {}


def demo(name: str, description: str):
    def wrap(fn: DemoFunction) -> DemoFunction:
        DEMOS[name] = (description, fn)
        return fn
    return wrap


def _fixture_polynomial(name: str) -> Polynomial:
    data = read_json_file(Paths.fixture(name))
    return Polynomial.from_json(data.get("polynomial", data))


def _fixture_signomial(name: str) -> Signomial:
    return Signomial.from_json(read_json_file(Paths.fixture(name)))


def _z(m: int) -> List[Polynomial]:
    return Polynomial.variables(m)


@demo("theta-c10", "Lovász θ of the 10-cycle through the C10-reduced LP")
def theta_c10():
    value = solve_theta(cycle_edges(cfg.THETA_CYCLE), cfg.THETA_CYCLE).value
    return abs(float(value) - cfg.THETA_VALUE) <= cfg.THETA_TOL, value, cfg.THETA_VALUE


@demo("theta-cyclic", "Reduced cyclic LP against the closed form for k = 3..16")
def theta_cyclic():
    observed, expected = {}, {}
    for k in cfg.THETA_CYCLES:
        observed[k] = float(simplex_solve(theta_cyclic_lp(k)).value)
        expected[k] = float(theta_closed_form(k))
    passed = all(abs(observed[k] - expected[k]) <= cfg.THETA_TOL for k in cfg.THETA_CYCLES)
    return passed, observed, expected


@demo("c4-blockdiag", "Real block diagonalization of a C4 circulant")
def c4_blockdiag():
    matrix = matrix_from_json(read_json_file(Paths.fixture(cfg.C4_FIXTURE))["matrix"])
    blocks = [block.matrix.tolist() for block in block_diagonalize(CyclicGroup(4), matrix, flavor="real").blocks]
    return blocks == cfg.C4_BLOCKS, blocks, cfg.C4_BLOCKS


@demo("motzkin-gram", "Exact Gram infeasibility of the Motzkin polynomial")
def motzkin_gram():
    result = gram_feasibility(gram_setup(_fixture_polynomial(cfg.MOTZKIN_FIXTURE)))
    passed = result.status == Status.INFEASIBLE and result.reason == cfg.MOTZKIN_GRAM_REASON
    return passed, result.reason, cfg.MOTZKIN_GRAM_REASON


@demo("motzkin-rewrite", "Motzkin polynomial in e1, e2")
def motzkin_rewrite():
    e1, e2 = _z(2)
    expected = e1 ** 2 * e2 ** 2 - 2 * e2 ** 3 - 3 * e2 ** 2 + 1
    observed = rewrite_in_invariants(_fixture_polynomial(cfg.MOTZKIN_FIXTURE), InvariantBasis.elementary(2))
    names = ["e1", "e2"]
    return observed == expected, observed.format(names), expected.format(names)


@demo("newton-e2", "e2 in power sums for n = 2")
def newton_e2():
    p1, p2 = _z(2)
    expected = (p1 ** 2 - p2) / 2
    observed = newton_convert(_z(2)[1], "e2p", 2)
    names = ["p1", "p2"]
    return observed == expected, observed.format(names), expected.format(names)


@demo("s3-hmatrix", "H-matrix of S3 for the standard irreducible (2,1)")
def s3_hmatrix():
    s3 = SymmetricGroup(3)
    p1, p2, _ = _z(3)
    expected = p2 - p1 ** 2 / 3
    observed = h_matrix(s3, *default_h_setup(s3, "(2,1)")).matrix[0, 0]
    names = ["p1", "p2", "p3"]
    return observed == expected, observed.format(names), expected.format(names)


@demo("higher-specht", "Word, index and charge of a shape (3,2) tableau")
def higher_specht_demo():
    data = higher_specht(Tableau(cfg.SPECHT_T), Tableau(cfg.SPECHT_V)).to_json()
    observed = {key: data[key] for key in cfg.HIGHER_SPECHT}
    return observed == cfg.HIGHER_SPECHT, observed, cfg.HIGHER_SPECHT


@demo("j-matrix-s2", "J-matrix of S2 in the elementary generators")
def j_matrix_s2():
    z1, z2 = _z(2)
    expected = [[Polynomial.constant(2, 2), z1], [z1, z1 ** 2 - 2 * z2]]
    j = j_matrix(HilbertMap.for_group(SymmetricGroup(2), "e"))
    passed = all(j[i, k] == expected[i][k] for i in range(2) for k in range(2))
    return passed, j.format(prefix="z"), [[p.format(prefix="z") for p in row] for row in expected]


@demo("orbit-motzkin", "Motzkin minimum on the S2 orbit space")
def orbit_motzkin():
    problem = reformulate(HilbertMap.for_group(SymmetricGroup(2), "e"), _fixture_polynomial(cfg.MOTZKIN_FIXTURE))
    found = minimize(problem)
    return abs(found.value - cfg.ORBIT_MOTZKIN_MIN) <= cfg.ORBIT_TOL, found.value, cfg.ORBIT_MOTZKIN_MIN


@demo("degree-quartic", "Degree-principle minimum of p4 - p2 for n = 4")
def degree_quartic():
    found = minimize_all(_fixture_polynomial(cfg.QUARTIC_FIXTURE))
    observed = {"value": found.value, "partition": found.partition and list(found.partition)}
    return abs(found.value - cfg.DEGREE_MIN) <= cfg.DEGREE_TOL, observed, cfg.DEGREE_MIN


@demo("sage-s3", "Orbit decomposition and AGE certificate of the S3 signomial")
def sage_s3():
    group = parse_group_spec(cfg.SAGE_GROUP)
    certificate = certify_sage(_fixture_signomial(cfg.SAGE_FIXTURE), group, cfg.SAGE_PINS)
    coefficients = certificate.solved[0].coefficients if certificate.solved else []
    passed = certificate.feasible and certificate.verify(group) and coefficients == cfg.SAGE_COEFFICIENTS
    return passed, {"coefficients": coefficients, "feasible": certificate.feasible}, cfg.SAGE_COEFFICIENTS


@demo("sage-cosh", "SAGE lower bound of e^x + e^-x")
def sage_cosh():
    bound = sage_bound(_fixture_signomial(cfg.COSH_FIXTURE), parse_group_spec(cfg.COSH_GROUP))
    value = None if bound.value is None else float(bound.value)
    return value is not None and abs(value - cfg.COSH_BOUND) <= cfg.SAGE_TOL, value, cfg.COSH_BOUND


@demo("quartic-blocks", "Block sizes of symmetric quartic SOS for n = 4, 5, 6")
def quartic_blocks():
    observed = {}
    for n in cfg.QUARTIC_NS:
        rep = PolynomialSpaceRepresentation(SymmetricGroup(n), 2, homogeneous=True)
        observed[n] = [m for m in multiplicities(rep) if m]
    observed["blocks_n4"] = invariant_sos_blocks(SymmetricGroup(4), power_sum(4, 2) ** 2).block_sizes
    passed = all(sizes == cfg.QUARTIC_BLOCKS for sizes in observed.values())
    return passed, observed, cfg.QUARTIC_BLOCKS


@demo("sdpa-roundtrip", "SDPA write and re-read of the reduced C5 θ model")
def sdpa_roundtrip():
    text = export_sdpa(reduce_sdp(theta_sdp(cycle_edges(cfg.SDPA_CYCLE), cfg.SDPA_CYCLE))).render()
    again = parse_sdpa(text).render()
    return again == text, len(again.splitlines()), len(text.splitlines())


def run_demo(name: str) -> DemoOutcome:
    """
    :param name: Key of DEMOS
    :return: DemoOutcome; a library error inside the demo counts as a failure
    :raises KeyError: For an unknown demo
    """
    _, fn = DEMOS[name]
    logger.info(f"Running demo {name}")
    try:
        passed, observed, expected = fn()
    except SymredError as e:
        logger.error(f"Demo {name} raised {type(e).__name__}: {e}")
        return DemoOutcome(name, False, None, None, f"{type(e).__name__}: {e}")
    if not passed:
        logger.warning(f"Demo {name} failed: observed {observed!r}, expected {expected!r}")
    return DemoOutcome(name, bool(passed), observed, expected)


def run_all(names=None) -> List[DemoOutcome]:
    return [run_demo(name) for name in (names or DEMOS)]
