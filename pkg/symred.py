"""
symred command line.
Dispatches each subcommand to the module orchestrator that registered it and prints the result envelope.
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional, Type

from core.config import ExitCodes, Tolerances, setup_logging
from core.core_orchestrator import CoreOrchestrator
from core.errors import SymredError
from modules.degree_principle.degree_principle_orchestrator import DegreePrincipleOrchestrator
from modules.demos.demos_orchestrator import DemoOrchestrator
from modules.invariant_ring.invariant_ring_orchestrator import InvariantRingOrchestrator
from modules.orbit_space.orbit_space_orchestrator import OrbitSpaceOrchestrator
from modules.sage_orbit.sage_orbit_orchestrator import SageOrbitOrchestrator
from modules.sdp_reduce.sdp_reduce_orchestrator import SdpReduceOrchestrator
from modules.sos_invariant.sos_invariant_orchestrator import SosInvariantOrchestrator
from modules.symmetry_adapted.symmetry_adapted_orchestrator import SymmetryAdaptedOrchestrator

logger = logging.getLogger("Symred")

ORCHESTRATORS: List[Type[CoreOrchestrator]] = [
    SymmetryAdaptedOrchestrator,
    SdpReduceOrchestrator,
    SosInvariantOrchestrator,
    InvariantRingOrchestrator,
    OrbitSpaceOrchestrator,
    DegreePrincipleOrchestrator,
    SageOrbitOrchestrator,
    DemoOrchestrator,
]


class SymredArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with ExitCodes.USAGE."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ExitCodes.USAGE, f"{self.prog}: error: {message}\n")


class SymredOrchestrator:
    """
    Top-level coordinator.
    Maps every subcommand to the module orchestrator that declares it.
    """

    def __init__(self, orchestrators: Optional[List[Type[CoreOrchestrator]]] = None):
        self.orchestrators = orchestrators or ORCHESTRATORS
        self.commands: Dict[str, Type[CoreOrchestrator]] = {}
        for orchestrator in self.orchestrators:
            for command in orchestrator.COMMANDS:
                self.commands[command] = orchestrator

    def build_parser(self) -> argparse.ArgumentParser:
        parser = SymredArgumentParser(prog="symred",
                                      description="Symmetry reduction for polynomial and semidefinite optimization")
        parser.add_argument("--format", choices=["json", "text"], default="json", help="Result rendering")
        parser.add_argument("--tol", type=float, default=Tolerances.FLOAT, help="Float tolerance")
        verbosity = parser.add_mutually_exclusive_group()
        verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
        verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
        subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND",
                                           parser_class=SymredArgumentParser)
        for orchestrator in self.orchestrators:
            orchestrator.register(subparsers)
        return parser

    def run(self, args) -> int:
        """
        :param args: Parsed namespace with .command
        :return: Process exit code
        """
        orchestrator = self.commands[args.command](tol=args.tol)
        report = orchestrator.execute(args.command, args)
        print(report.render())
        return report.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    suite = SymredOrchestrator()
    parser = suite.build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else ExitCodes.USAGE

    setup_logging(args.verbose, args.quiet)
    try:
        return suite.run(args)
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return 130
    except SymredError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
