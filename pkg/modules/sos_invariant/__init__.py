"""Sums of squares: Gram matrices, Newton polytopes, invariant block decompositions and symmetric quartics."""

from modules.sos_invariant.affine_psd import AffinePsdProblem, PsdSearchResult, solve_affine_psd
from modules.sos_invariant.gram import (GramProblem, GramResult, LowerBound, gram_feasibility, gram_setup,
                                        half_newton_monomials, negative_point, sos_lower_bound)
from modules.sos_invariant.invariant_blocks import (BlockGramCertificate, BlockSOSProblem, BlockSOSResult,
                                                    GeneratorFamily, average_gram, b_matrix, generator_families,
                                                    invariant_sos_blocks, monomial_action, solve_blocks,
                                                    verify_certificate)
from modules.sos_invariant.quartic import (QuarticParameters, QuarticResult, quartic_coefficients,
                                           symmetric_quartic_form, symmetric_quartic_polynomial)

__all__ = ['AffinePsdProblem', 'PsdSearchResult', 'solve_affine_psd', 'GramProblem', 'GramResult', 'LowerBound',
           'gram_feasibility', 'gram_setup', 'half_newton_monomials', 'negative_point', 'sos_lower_bound',
           'BlockGramCertificate', 'BlockSOSProblem', 'BlockSOSResult', 'GeneratorFamily', 'average_gram',
           'b_matrix', 'generator_families', 'invariant_sos_blocks', 'monomial_action', 'solve_blocks',
           'verify_certificate', 'QuarticParameters', 'QuarticResult', 'quartic_coefficients',
           'symmetric_quartic_form', 'symmetric_quartic_polynomial']
