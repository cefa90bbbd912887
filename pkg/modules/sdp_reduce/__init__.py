"""Invariant SDPs: averaging, block reduction, θ models, exact simplex and SDPA export."""

from modules.sdp_reduce.reduction import ReducedSDP, reduce_sdp
from modules.sdp_reduce.sdp_problem import SDPProblem, average_invariant, check_invariance
from modules.sdp_reduce.sdpa import SdpaData, export_sdpa, parse_sdpa
from modules.sdp_reduce.simplex import LPProblem, LPResult, simplex_solve
from modules.sdp_reduce.theta import (ThetaSolution, cycle_edges, independence_number, solve_theta,
                                      theta_closed_form, theta_cyclic_lp, theta_sdp)

__all__ = ['ReducedSDP', 'reduce_sdp', 'SDPProblem', 'average_invariant', 'check_invariance', 'SdpaData',
           'export_sdpa', 'parse_sdpa', 'LPProblem', 'LPResult', 'simplex_solve', 'ThetaSolution', 'cycle_edges',
           'independence_number', 'solve_theta', 'theta_closed_form', 'theta_cyclic_lp', 'theta_sdp']
