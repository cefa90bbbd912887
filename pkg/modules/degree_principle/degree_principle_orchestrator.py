"""
Command front end for the degree principle: `symred degree`.
"""

import logging

from core.core_orchestrator import CoreOrchestrator
from core.core_report import CoreReportGenerator, Status
from core.errors import DimensionMismatchError, PreconditionError
from core.scalars import format_scalar
from modules.degree_principle.degree_principle import minimize_all, sos_bounds
from modules.degree_principle.degree_principle_config import DEFAULT_BOX, DEFAULT_WORKERS, VIA

logger = logging.getLogger("DegreePrinciple")


class DegreePrincipleOrchestrator(CoreOrchestrator):
    """
    Reduces a symmetric problem in n variables to its r-variable orbit-type subproblems.
    """

    COMMANDS = {
        "degree": "run_degree",
    }

    @classmethod
    def register(cls, subparsers) -> None:
        degree = subparsers.add_parser("degree", help="Minimize a symmetric problem through the degree principle")
        degree.add_argument("--in", dest="input", required=True,
                            help='Polynomial JSON, or {"polynomial": ..., "constraints": [...]}')
        degree.add_argument("--n", type=int, help="Expected number of variables")
        degree.add_argument("--box", type=float, default=DEFAULT_BOX, help="Search box half-width per T_j")
        degree.add_argument("--via", choices=VIA, default="grid", help="Subproblem solver")
        degree.add_argument("--exact", action="store_true", help="Only partitions with exactly r parts")
        degree.add_argument("--workers", type=int, default=DEFAULT_WORKERS, help="Concurrent subproblems")

    def run_degree(self, args, report: CoreReportGenerator) -> None:
        f = self.load_polynomial(args.input)
        if args.n is not None and args.n != f.num_vars:
            raise DimensionMismatchError(f"--n {args.n} but the polynomial has {f.num_vars} variables")
        data = self.load_json(args.input)
        constraints = self.load_polynomials(args.input, "constraints") if isinstance(data, dict) else []

        if args.via == "sos":
            if constraints:
                raise PreconditionError("--via sos handles unconstrained problems only")
            bounds = sos_bounds(f)
            report.add_diagnostic("subproblems", [
                {"partition": list(lam), "bound": None if v is None else format_scalar(v)}
                for lam, (v, _) in bounds.items()])
            certified = [v for v, _ in bounds.values()]
            if any(v is None for v in certified):
                report.set_result(Status.UNDECIDED, None)
                return
            lam, (value, certificate) = min(bounds.items(), key=lambda item: (item[1][0], item[0]))
            report.set_result(Status.OK, {"value": format_scalar(value), "partition": list(lam), "point": None},
                              certificate.to_json() if certificate else None)
            return

        found = minimize_all(f, constraints, args.box, "exact" if args.exact else "at-most", workers=args.workers)
        report.add_diagnostic("r", found.r)
        report.add_diagnostic("subproblems", [s.to_json() for s in found.subresults])
        if found.partition is None:
            report.set_result(Status.INFEASIBLE, None)
            return
        if found.unbounded:
            report.add_diagnostic("unbounded", True)
        if found.boundary_hit:
            report.add_diagnostic("boundary_hit", True)
        status = Status.UNBOUNDED if found.unbounded else Status.OK
        report.set_result(status, {"value": found.value, "partition": list(found.partition), "point": found.point})
