"""
Command front end for the worked examples: `symred demo NAME | --all | --list`.
"""

import logging

from core.core_orchestrator import CoreOrchestrator
from core.core_report import CoreReportGenerator, Status
from core.errors import PreconditionError
from modules.demos.demos import DEMOS, run_all

logger = logging.getLogger("Demos")


class DemoOrchestrator(CoreOrchestrator):
    """
    Runs named demos and reports pass when every observed value matches its expectation.
    """

    COMMANDS = {
        "demo": "run_demo",
    }

    @classmethod
    def register(cls, subparsers) -> None:
        demo = subparsers.add_parser("demo", help="Reproduce a worked example")
        demo.add_argument("name", nargs="?", help="Demo name (see --list)")
        demo.add_argument("--all", action="store_true", help="Run every demo")
        demo.add_argument("--list", action="store_true", help="List the demos and exit")

    def run_demo(self, args, report: CoreReportGenerator) -> None:
        if args.list:
            report.set_result(Status.OK, {name: description for name, (description, _) in DEMOS.items()})
            return
        if args.all:
            names = list(DEMOS)
        elif args.name:
            if args.name not in DEMOS:
                raise PreconditionError(f"Unknown demo {args.name!r}, choose from {', '.join(DEMOS)}")
            names = [args.name]
        else:
            raise PreconditionError("Name a demo, or pass --all or --list")

        outcomes = run_all(names)
        failed = [o.name for o in outcomes if not o.passed]
        logger.info(f"{len(outcomes) - len(failed)}/{len(outcomes)} demos passed")
        report.add_diagnostic("failed", failed)
        value = outcomes[0] if len(outcomes) == 1 else {o.name: o.passed for o in outcomes}
        certificate = None if len(outcomes) == 1 else [o.to_json() for o in outcomes]
        report.set_result(Status.FAIL if failed else Status.PASS, value, certificate)
