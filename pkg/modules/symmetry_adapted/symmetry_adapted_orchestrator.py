"""
Command front end for symmetry-adapted bases and block diagonalization:
`symred sab` and `symred blockdiag`.
"""

import json
import logging

from core.core_orchestrator import CoreOrchestrator
from core.core_report import CoreReportGenerator, Status, write_text_file
from modules.groups.group_specs import parse_group_spec
from modules.symmetry_adapted.adapted_basis import SymmetryAdaptedBasis, symmetry_adapted_basis
from modules.symmetry_adapted.block_diagonal import block_diagonalize
from modules.symmetry_adapted.symmetry_adapted_config import FLAVORS

logger = logging.getLogger("SymAdapted")


class SymmetryAdaptedOrchestrator(CoreOrchestrator):
    """
    Builds symmetry-adapted bases for a group spec and block-diagonalizes invariant matrices.
    """

    COMMANDS = {
        "sab": "run_sab",
        "blockdiag": "run_blockdiag",
    }

    @classmethod
    def register(cls, subparsers) -> None:
        sab = subparsers.add_parser("sab", help="Symmetry-adapted basis of a group representation")
        sab.add_argument("--group", required=True, help='Group spec, e.g. "C:4", "S:3", "D:3:plane" or a JSON file')
        sab.add_argument("--flavor", choices=FLAVORS, default="complex")
        sab.add_argument("--orthonormal", action="store_true", help="Orthonormalize every copy")
        sab.add_argument("--out", help="Write the basis JSON to this file")

        blockdiag = subparsers.add_parser("blockdiag", help="Block-diagonalize a matrix commuting with the action")
        blockdiag.add_argument("--group", required=True)
        blockdiag.add_argument("--in", dest="input", required=True, help="Matrix JSON (list of rows or {matrix})")
        blockdiag.add_argument("--basis", help="Basis JSON written by `symred sab` (built on the fly otherwise)")
        blockdiag.add_argument("--flavor", choices=FLAVORS, default="real")

    def run_sab(self, args, report: CoreReportGenerator) -> None:
        rep = parse_group_spec(args.group)
        basis = symmetry_adapted_basis(rep, args.flavor, orthonormal=args.orthonormal, tol=self.tol)
        if args.out:
            write_text_file(args.out, json.dumps(basis.to_json(), indent=2, ensure_ascii=False))
            report.add_diagnostic("out", args.out)
        report.add_diagnostic("group", rep.describe())
        report.set_result(Status.OK, basis.to_json())

    def run_blockdiag(self, args, report: CoreReportGenerator) -> None:
        rep = parse_group_spec(args.group)
        x = self.load_matrix(args.input)
        basis = SymmetryAdaptedBasis.from_json(self.load_json(args.basis)) if args.basis else None
        result = block_diagonalize(rep, x, basis=basis, flavor=args.flavor, tol=self.tol)
        logger.info(f"{rep.name}: {len(result.blocks)} blocks, off-block mass {result.off_block_mass:.3g}")
        report.add_diagnostic("off_block_mass", result.off_block_mass)
        report.add_diagnostic("repetition_mass", result.repetition_mass)
        report.add_diagnostic("spectrum", [complex(z) for z in result.spectrum()])
        report.set_result(Status.OK, {"blocks": [b.to_json() for b in result.blocks]},
                          certificate={"basis": result.basis.to_json(), "permutation": result.permutation})
