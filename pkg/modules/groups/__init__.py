"""Finite groups, characters, Specht modules and polynomial actions."""

from modules.groups.families import CyclicGroup, DihedralGroup, ExplicitGroup, SymmetricGroup
from modules.groups.group_representation import CharacterTable, ConjugacyClass, GroupRepresentation
from modules.groups.polynomial_action import (PolynomialSpaceRepresentation, act_on_polynomial,
                                              frobenius_schur_indicator, is_invariant, multiplicities,
                                              reynolds)
from modules.groups.group_specs import parse_group_spec
from modules.groups.tableaux import SpechtModule, Tableau, specht_module, standard_tableaux

__all__ = ['CyclicGroup', 'DihedralGroup', 'ExplicitGroup', 'SymmetricGroup', 'CharacterTable', 'ConjugacyClass',
           'GroupRepresentation', 'PolynomialSpaceRepresentation', 'act_on_polynomial',
           'frobenius_schur_indicator', 'is_invariant', 'multiplicities', 'reynolds', 'parse_group_spec',
           'SpechtModule', 'Tableau', 'specht_module', 'standard_tableaux']
