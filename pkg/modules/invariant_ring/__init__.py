"""Symmetric functions, rewriting in generators, higher Specht polynomials, harmonics and H-matrices."""

from modules.invariant_ring.h_matrix import HMatrix, default_h_setup, dihedral_covariants, dihedral_invariants, h_matrix
from modules.invariant_ring.harmonics import (alternating_decomposition, apply_diff_operator, derivative_span,
                                              harmonic_pairing, jacobian_determinant, steinberg_factor)
from modules.invariant_ring.higher_specht import (HigherSpecht, character_multiplicity, charge, higher_specht,
                                                  higher_specht_family, homogeneous_multiplicity, specht_generators,
                                                  specht_polynomial, word_index)
from modules.invariant_ring.symmetric_functions import InvariantBasis, newton_convert, rewrite_in_invariants

__all__ = ['HMatrix', 'default_h_setup', 'dihedral_covariants', 'dihedral_invariants', 'h_matrix',
           'alternating_decomposition', 'apply_diff_operator', 'derivative_span', 'harmonic_pairing',
           'jacobian_determinant', 'steinberg_factor', 'HigherSpecht', 'character_multiplicity', 'charge',
           'higher_specht', 'higher_specht_family', 'homogeneous_multiplicity', 'specht_generators',
           'specht_polynomial', 'word_index', 'InvariantBasis', 'newton_convert', 'rewrite_in_invariants']
