"""
Command front end for invariant rings: `symred rewrite`, `symred hmatrix` and `symred higher-specht`.
"""

import logging

from core.core_orchestrator import CoreOrchestrator
from core.core_report import CoreReportGenerator, Status
from modules.groups.group_specs import parse_group_spec
from modules.groups.tableaux import standard_tableaux
from modules.invariant_ring.h_matrix import default_h_setup, h_matrix, parse_shape
from modules.invariant_ring.higher_specht import charge, higher_specht_family, homogeneous_multiplicity, word_index
from modules.invariant_ring.invariant_ring_config import BASIS_KINDS, GENERATOR_PREFIX
from modules.invariant_ring.symmetric_functions import InvariantBasis, rewrite_in_invariants

logger = logging.getLogger("InvRing")


class InvariantRingOrchestrator(CoreOrchestrator):
    """
    Rewrites symmetric polynomials in e/p generators, builds H-matrices and lists higher Specht data.
    """

    COMMANDS = {
        "rewrite": "run_rewrite",
        "hmatrix": "run_hmatrix",
        "higher-specht": "run_higher_specht",
    }

    @classmethod
    def register(cls, subparsers) -> None:
        rewrite = subparsers.add_parser("rewrite", help="Write a symmetric polynomial in e_k or p_k")
        rewrite.add_argument("--in", dest="input", required=True, help="Polynomial JSON")
        rewrite.add_argument("--basis", choices=sorted(BASIS_KINDS), default="e")

        hmatrix = subparsers.add_parser("hmatrix", help="H-matrix of one irreducible of S:n or D:n:plane")
        hmatrix.add_argument("--group", required=True, help='"S:n" or "D:n:plane"')
        hmatrix.add_argument("--irrep", required=True, help='Shape "(2,1)" for S:n, label "tau_1" for D:n:plane')

        specht = subparsers.add_parser("higher-specht", help="Words, indices and charges of a shape")
        specht.add_argument("--shape", required=True, help='Partition, e.g. "3,2"')
        specht.add_argument("--list", action="store_true", help="Also list every F_V^T polynomial")
        specht.add_argument("--degree", type=int, help="Report the multiplicity of the shape in forms of this degree")

    def run_rewrite(self, args, report: CoreReportGenerator) -> None:
        f = self.load_polynomial(args.input)
        basis = InvariantBasis.from_name(args.basis, f.num_vars)
        g = rewrite_in_invariants(f, basis)
        names = [f"{args.basis}{k + 1}" for k in range(basis.size)]
        report.add_diagnostic("basis", basis.kind)
        report.set_result(Status.OK, {"expression": g.format(names), "polynomial": g.to_json()})

    def run_hmatrix(self, args, report: CoreReportGenerator) -> None:
        rep = parse_group_spec(args.group)
        polys, basis, label = default_h_setup(rep, args.irrep)
        result = h_matrix(rep, polys, basis, label)
        report.add_diagnostic("generators", [p.format() for p in basis.polynomials])
        report.add_diagnostic("variables", [f"{GENERATOR_PREFIX}{k + 1}" for k in range(basis.size)])
        report.set_result(Status.OK, result.to_json())

    def run_higher_specht(self, args, report: CoreReportGenerator) -> None:
        shape = parse_shape(args.shape)
        tableaux = []
        for t in standard_tableaux(shape):
            tableaux.append({"T": t.to_json(), "word": "".join(map(str, t.word())),
                             "index": "".join(map(str, word_index(t.word()))), "charge": charge(t)})
        value = {"shape": list(shape), "tableaux": tableaux}
        if args.list:
            value["polynomials"] = [{"T": h.t.to_json(), "V": h.v.to_json(), "F": h.polynomial.format()}
                                    for h in higher_specht_family(shape)]
        if args.degree is not None:
            report.add_diagnostic("multiplicity", homogeneous_multiplicity(shape, args.degree))
        logger.info(f"Shape {shape}: {len(tableaux)} standard tableaux")
        report.set_result(Status.OK, value)
