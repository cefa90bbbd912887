"""
Command front end for orbit-space reformulations: `symred orbitspace`.
"""

import logging

from core.core_orchestrator import CoreOrchestrator
from core.core_report import CoreReportGenerator, Status
from core.errors import PreconditionError
from modules.groups.group_specs import parse_group_spec
from modules.invariant_ring.symmetric_functions import InvariantBasis
from modules.orbit_space.hilbert_map import HilbertMap
from modules.orbit_space.moment_relaxation import moment_relaxation_qk
from modules.orbit_space.orbit_space_config import BASES, DEFAULT_BOX, SAMPLE_COUNT
from modules.orbit_space.reformulation import minimize, reformulate, validate_samples
from modules.sdp_reduce.sdpa import export_sdpa

logger = logging.getLogger("OrbitSpace")


class OrbitSpaceOrchestrator(CoreOrchestrator):
    """
    Rewrites an invariant problem on the orbit space, validates it on samples, and optionally
    searches the reformulated problem or exports its moment relaxation.
    """

    COMMANDS = {
        "orbitspace": "run_orbitspace",
    }

    @classmethod
    def register(cls, subparsers) -> None:
        orbit = subparsers.add_parser("orbitspace", help="Reformulate an invariant problem on the orbit space")
        orbit.add_argument("--in", dest="input", required=True,
                           help='Polynomial JSON, or {"polynomial": ..., "constraints": [...]}')
        orbit.add_argument("--group", required=True, help='"S:n", "D:n:plane" or an explicit group JSON')
        orbit.add_argument("--basis", choices=BASES, default="e", help="Built-in generators of S:n")
        orbit.add_argument("--invariants", help='JSON {"invariants": [...], "relations"?: [...]} overriding --basis')
        orbit.add_argument("--samples", type=int, default=SAMPLE_COUNT, help="Random rational validation points")
        orbit.add_argument("--minimize", action="store_true", help="Desk search over {J ⪰ 0, g̃ ≥ 0}")
        orbit.add_argument("--box", type=float, default=DEFAULT_BOX, help="Search box half-width in z")
        orbit.add_argument("--qk", type=int, help="Build the moment relaxation of this order")
        orbit.add_argument("--out", help="SDPA path for --qk")

    def _hilbert_map(self, args) -> HilbertMap:
        rep = parse_group_spec(args.group)
        if not args.invariants:
            return HilbertMap.for_group(rep, args.basis)
        invariants = self.load_polynomials(args.invariants, "invariants")
        if not invariants:
            raise PreconditionError(f"{args.invariants}: no 'invariants' listed")
        relations = self.load_polynomials(args.invariants, "relations")
        hilbert = HilbertMap(InvariantBasis.custom(invariants), rep, relations)
        hilbert.verify_relations()
        return hilbert

    def run_orbitspace(self, args, report: CoreReportGenerator) -> None:
        hilbert = self._hilbert_map(args)
        f = self.load_polynomial(args.input)
        data = self.load_json(args.input)
        constraints = self.load_polynomials(args.input, "constraints") if isinstance(data, dict) else []
        problem = reformulate(hilbert, f, constraints)

        check = validate_samples(problem, args.samples)
        report.add_diagnostic("samples", check.to_json())
        certificate = {}
        if args.minimize:
            found = minimize(problem, args.box)
            report.add_diagnostic("minimum", found.to_json())
            certificate["minimum"] = found.value
        if args.qk is not None:
            relaxation = moment_relaxation_qk(problem, args.qk)
            report.add_diagnostic("qk", relaxation.to_json())
            if args.out:
                export_sdpa(relaxation.to_sdpa(), args.out)
                report.add_diagnostic("sdpa", args.out)
        status = Status.OK if check.ok else Status.FAIL
        report.set_result(status, problem.to_json(), certificate or None)
