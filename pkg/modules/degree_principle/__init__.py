"""Degree-principle reduction of symmetric problems to orbit-type subproblems."""

from modules.degree_principle.degree_principle import (DegreeMinimum, SubProblem, SubResult, compute_r,
                                                       enumerate_partitions, minimize_all, minimize_subproblem,
                                                       sos_bounds, substitute_partition)

__all__ = ['DegreeMinimum', 'SubProblem', 'SubResult', 'compute_r', 'enumerate_partitions', 'minimize_all',
           'minimize_subproblem', 'sos_bounds', 'substitute_partition']
