"""Isotypic projections, symmetry-adapted bases, block diagonalization and zonal matrices."""

from modules.symmetry_adapted.adapted_basis import IsotypicComponent, SymmetryAdaptedBasis, symmetry_adapted_basis
from modules.symmetry_adapted.block_diagonal import (Block, BlockDiagonalization, block_diagonalize,
                                                     check_commutes, commutant_average)
from modules.symmetry_adapted.isotypic import gram_schmidt, isotypic_project, isotypic_projector
from modules.symmetry_adapted.zonal import ZonalBlock, ZonalMatrices, zonal_matrices

__all__ = ['IsotypicComponent', 'SymmetryAdaptedBasis', 'symmetry_adapted_basis', 'Block', 'BlockDiagonalization',
           'block_diagonalize', 'check_commutes', 'commutant_average', 'gram_schmidt', 'isotypic_project',
           'isotypic_projector', 'ZonalBlock', 'ZonalMatrices', 'zonal_matrices']
