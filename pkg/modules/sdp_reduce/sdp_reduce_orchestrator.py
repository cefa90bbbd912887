"""
Command front end for invariant SDPs: `symred theta` and `symred reduce-sdp`.
"""

import logging

from core.core_orchestrator import CoreOrchestrator
from core.core_report import CoreReportGenerator, Status
from core.errors import PreconditionError
from core.matrices import matrix_to_json
from modules.groups.group_specs import parse_group_spec
from modules.sdp_reduce.reduction import reduce_sdp
from modules.sdp_reduce.sdp_problem import SDPProblem
from modules.sdp_reduce.sdpa import export_sdpa
from modules.sdp_reduce.theta import (cycle_edges, independence_number, solve_theta, theta_closed_form,
                                      theta_cyclic_lp)
from modules.sdp_reduce.simplex import simplex_solve
from modules.sdp_reduce.sdp_reduce_config import MAX_INDEPENDENCE_VERTICES

logger = logging.getLogger("SdpReduce")


class SdpReduceOrchestrator(CoreOrchestrator):
    """
    θ numbers of small graphs and block reduction of user-supplied invariant SDPs.
    """

    COMMANDS = {
        "theta": "run_theta",
        "reduce-sdp": "run_reduce_sdp",
    }

    @classmethod
    def register(cls, subparsers) -> None:
        theta = subparsers.add_parser("theta", help="Lovász θ of a cycle or a circulant graph")
        source = theta.add_mutually_exclusive_group(required=True)
        source.add_argument("--cycle", type=int, help="Cycle length k for C_k")
        source.add_argument("--edges", help='Graph JSON {"n": vertices, "edges": [[i, j], ...]}')
        theta.add_argument("--out", help="Also export the reduced model as SDPA")

        reduce = subparsers.add_parser("reduce-sdp", help="Block-reduce an invariant SDP")
        reduce.add_argument("--in", dest="input", required=True, help="SDP JSON {sense, objective, constraints}")
        reduce.add_argument("--group", help="Group spec acting by X -> M X Mᵀ (trivial group when omitted)")
        reduce.add_argument("--out", help="SDPA file for the reduced problem")

    def _graph(self, args):
        if args.cycle is not None:
            return cycle_edges(args.cycle), args.cycle
        data = self.load_json(args.edges)
        try:
            return [tuple(e) for e in data["edges"]], int(data["n"])
        except (KeyError, TypeError, ValueError) as e:
            raise PreconditionError(f"{args.edges}: malformed graph JSON ({e})")

    def run_theta(self, args, report: CoreReportGenerator) -> None:
        edges, n = self._graph(args)
        solution = solve_theta(edges, n)
        report.add_diagnostic("block_sizes", solution.reduced.block_sizes)
        if n <= MAX_INDEPENDENCE_VERTICES:
            report.add_diagnostic("alpha", independence_number(edges, n))
        if args.cycle is not None:
            report.add_diagnostic("closed_form", theta_closed_form(n))
            report.add_diagnostic("cyclic_lp", simplex_solve(theta_cyclic_lp(n)).value)
        if args.out:
            export_sdpa(solution.reduced, args.out)
            report.add_diagnostic("out", args.out)
        certificate = None if solution.matrix is None else {"B": matrix_to_json(solution.matrix)}
        report.set_result(solution.status, solution.value, certificate)

    def run_reduce_sdp(self, args, report: CoreReportGenerator) -> None:
        group = parse_group_spec(args.group) if args.group else None
        sdp = SDPProblem.from_json(self.load_json(args.input), group)
        reduced = reduce_sdp(sdp, self.tol)
        report.add_diagnostic("block_sizes", reduced.block_sizes)
        report.add_diagnostic("constraints", len(reduced.constraints))
        if args.out:
            export_sdpa(reduced, args.out)
            report.add_diagnostic("out", args.out)
        if not reduced.is_lp:
            logger.info(f"{sdp.name}: blocks {reduced.block_sizes} need an SDP solver, reporting the reduction")
            report.set_result(Status.OK, reduced.to_json())
            return
        result, x = reduced.solve_lp()
        report.add_diagnostic("lp", result.to_json())
        certificate = None if x is None else {"X": matrix_to_json(x)}
        report.set_result(result.status, result.value, certificate)
