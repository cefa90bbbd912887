"""
Command front end for symmetric SAGE certificates: `symred sage`.
"""

import logging
from typing import Dict, List

from core.core_orchestrator import CoreOrchestrator
from core.core_report import CoreReportGenerator, Status
from core.errors import PreconditionError
from core.scalars import Scalar, to_scalar
from modules.groups.group_specs import parse_group_spec
from modules.sage_orbit.orbit_decomposition import certify_sage, sage_bound
from modules.sage_orbit.sage_orbit_config import BISECTION_TOL, DEFAULT_WORKERS
from modules.sage_orbit.signomial import Signomial

logger = logging.getLogger("Sage")


def parse_pins(items: List[str]) -> Dict[int, Scalar]:
    """["0=1", "2=1/3"] -> {0: 1, 2: 1/3}"""
    pins = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip().isdigit():
            raise PreconditionError(f"Pins look like INDEX=VALUE, got {item!r}")
        pins[int(key)] = to_scalar(value)
    return pins


class SageOrbitOrchestrator(CoreOrchestrator):
    """
    Checks SAGE membership of an invariant signomial per exponent orbit, or bisects for its SAGE bound.
    """

    COMMANDS = {
        "sage": "run_sage",
    }

    @classmethod
    def register(cls, subparsers) -> None:
        sage = subparsers.add_parser("sage", help="Orbit-decomposed SAGE certificate of an invariant signomial")
        sage.add_argument("--in", dest="input", required=True, help='Signomial JSON {"exponents": ..., "coeffs": ...}')
        sage.add_argument("--group", required=True, help='"S:n", "trivial:n" or an explicit group JSON')
        sage.add_argument("--bound", action="store_true", help="Bisect for the largest λ with f - λ SAGE")
        sage.add_argument("--pin", action="append", metavar="INDEX=VALUE",
                          help="Fix a template unknown when the identification is underdetermined")
        sage.add_argument("--bisection-tol", type=float, default=BISECTION_TOL, help="Final λ bracket width")
        sage.add_argument("--workers", type=int, default=DEFAULT_WORKERS, help="Concurrent AGE checks")

    def run_sage(self, args, report: CoreReportGenerator) -> None:
        rep = parse_group_spec(args.group)
        f = Signomial.from_json(self.load_json(args.input))
        pins = parse_pins(args.pin)
        report.add_diagnostic("terms", len(f.terms))

        if args.bound:
            bound = sage_bound(f, rep, pins, args.bisection_tol)
            report.add_diagnostic("sampled_minimum", float(bound.upper))
            if bound.certificate is not None:
                report.add_diagnostic("verified", bound.certificate.verify(rep))
            report.set_result(bound.status, bound.to_json()["value"], bound.to_json())
            return

        certificate = certify_sage(f, rep, pins, args.workers)
        verified = certificate.verify(rep)
        report.add_diagnostic("verified", verified)
        status = Status.FEASIBLE if certificate.feasible and verified else Status.INFEASIBLE
        report.set_result(status, certificate.to_json())
