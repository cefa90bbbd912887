"""
Command front end for sums-of-squares certificates: `symred sos`.
"""

import logging

from core.core_orchestrator import CoreOrchestrator
from core.core_report import CoreReportGenerator, Status
from core.errors import PreconditionError
from modules.groups.group_specs import parse_group_spec
from modules.sdp_reduce.sdpa import export_sdpa
from modules.sos_invariant.gram import gram_feasibility, gram_setup, sos_lower_bound
from modules.sos_invariant.invariant_blocks import invariant_sos_blocks, solve_blocks
from modules.sos_invariant.quartic import symmetric_quartic_polynomial
from modules.sos_invariant.sos_invariant_config import CLI_METHODS, GENERATOR_SOURCES

logger = logging.getLogger("SosInvariant")


class SosInvariantOrchestrator(CoreOrchestrator):
    """
    Gram-matrix, invariant block and symmetric quartic SOS decisions for one polynomial.
    """

    COMMANDS = {
        "sos": "run_sos",
    }

    @classmethod
    def register(cls, subparsers) -> None:
        sos = subparsers.add_parser("sos", help="Decide whether a polynomial is a sum of squares")
        sos.add_argument("--in", dest="input", required=True, help="Polynomial JSON")
        sos.add_argument("--group", help="Symmetry group for the block method (trivial group when omitted)")
        sos.add_argument("--method", choices=CLI_METHODS, help="Defaults to blocks with --group, gram otherwise")
        sos.add_argument("--generators", choices=GENERATOR_SOURCES, default="adapted",
                         help="Generator families of the block method")
        sos.add_argument("--emit-sdpa", dest="emit_sdpa", help="Write the feasibility SDP as SDPA")
        sos.add_argument("--lower-bound", dest="lower_bound", action="store_true",
                         help="Gram method: certified lower bound of f by bisection instead of a decision")

    def run_sos(self, args, report: CoreReportGenerator) -> None:
        f = self.load_polynomial(args.input)
        method = args.method or ("blocks" if args.group else "gram")
        report.add_diagnostic("method", method)
        if method == "quartic":
            self._quartic(f, report)
        elif method == "gram":
            self._gram(f, args, report)
        else:
            self._blocks(f, args, report)

    def _gram(self, f, args, report: CoreReportGenerator) -> None:
        if args.lower_bound:
            bound = sos_lower_bound(f, tol=self.tol)
            status = Status.FEASIBLE if bound.value is not None else Status.UNDECIDED
            report.set_result(status, bound.value, None if bound.certificate is None else bound.certificate.to_json())
            return
        problem = gram_setup(f)
        if args.emit_sdpa:
            export_sdpa(problem.affine_problem().to_sdpa("gram"), args.emit_sdpa)
            report.add_diagnostic("sdpa", args.emit_sdpa)
        result = gram_feasibility(problem, self.tol)
        report.add_diagnostic("monomials", len(problem.monomials))
        report.add_diagnostic("dof", result.dof)
        if result.reason:
            report.add_diagnostic("reason", result.reason)
        certificate = result.to_json() if result.feasible else None
        report.set_result(result.status, result.reason or result.status.value, certificate)

    def _blocks(self, f, args, report: CoreReportGenerator) -> None:
        rep = parse_group_spec(args.group or f"trivial:{f.num_vars}")
        if rep.degree != f.num_vars:
            raise PreconditionError(f"{rep.name} acts on {rep.degree} variables, f has {f.num_vars}")
        problem = invariant_sos_blocks(rep, f, source=args.generators)
        if args.emit_sdpa:
            export_sdpa(problem.affine_problem().to_sdpa(f"sos-{rep.name}"), args.emit_sdpa)
            report.add_diagnostic("sdpa", args.emit_sdpa)
        result = solve_blocks(problem, self.tol)
        report.add_diagnostic("block_sizes", problem.block_sizes)
        report.add_diagnostic("dof", result.dof)
        if result.reason:
            report.add_diagnostic("reason", result.reason)
        certificate = None if result.certificate is None else result.certificate.to_json()
        report.set_result(result.status, result.reason or result.status.value, certificate)

    def _quartic(self, f, report: CoreReportGenerator) -> None:
        result = symmetric_quartic_polynomial(f)
        if result.reason:
            report.add_diagnostic("reason", result.reason)
        report.add_diagnostic("gamma_set", result.gamma_set)
        report.set_result(result.status, result.to_json(),
                          None if result.parameters is None else result.parameters.to_json())
