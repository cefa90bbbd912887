"""Hilbert maps, J-matrices, orbit-space reformulation and its moment relaxation."""

from modules.orbit_space.hilbert_map import HilbertMap, differential_gram, j_matrix
from modules.orbit_space.moment_relaxation import MomentRelaxation, minimum_order, moment_relaxation_qk
from modules.orbit_space.reformulation import (OrbitMinimum, OrbitSpaceProblem, SampleCheck, minimize, reformulate,
                                               validate_samples)

__all__ = ['HilbertMap', 'differential_gram', 'j_matrix', 'MomentRelaxation', 'minimum_order',
           'moment_relaxation_qk', 'OrbitMinimum', 'OrbitSpaceProblem', 'SampleCheck', 'minimize', 'reformulate',
           'validate_samples']
