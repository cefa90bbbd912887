import json
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_polynomial
from core.errors import DimensionMismatchError, InputOutputError, PreconditionError, UnsupportedError
from core.matrices import as_matrix, to_float
from core.polynomial import Polynomial, elementary_symmetric, power_sum, vandermonde
from modules.groups import (CyclicGroup, DihedralGroup, ExplicitGroup, PolynomialSpaceRepresentation,
                            SymmetricGroup, Tableau, act_on_polynomial, frobenius_schur_indicator, is_invariant,
                            multiplicities, parse_group_spec, reynolds, specht_module, standard_tableaux)
from modules.groups.tableaux import hook_length_dimension, partitions


class TestEnumeration:
    def test_s3_class_sizes(self, s3):
        assert [c.size for c in s3.conjugacy_classes()] == [1, 3, 2]

    def test_c4_singletons(self, c4):
        assert [c.size for c in c4.conjugacy_classes()] == [1, 1, 1, 1]

    def test_d3_matches_s3_by_brute_force(self, d3):
        generators = [d3.matrix(g) for g in d3.generators()]
        explicit = ExplicitGroup(generators, name="D3-brute")
        assert explicit.order == 6
        assert sorted(c.size for c in explicit.conjugacy_classes()) == [1, 2, 3]
        assert sorted(c.size for c in d3.conjugacy_classes()) == [1, 2, 3]

    @pytest.mark.parametrize("group", [SymmetricGroup(4), CyclicGroup(6), DihedralGroup(5), DihedralGroup(6)])
    def test_classes_partition_elements(self, group):
        assert sum(c.size for c in group.conjugacy_classes()) == group.order == len(group.elements())
        indices = {group.class_index(g) for g in group.elements()}
        assert indices == set(range(len(group.conjugacy_classes())))

    def test_elements_closed(self, d3):
        elements = set(d3.elements())
        assert all(d3.multiply(g, h) in elements for g in elements for h in elements)

    def test_generators_orthogonal(self):
        for group in (SymmetricGroup(4), DihedralGroup(4, "plane"), DihedralGroup(5, "plane")):
            group.check_orthogonal()


class TestCharacterTable:
    def test_s3_rows(self, s3):
        table = s3.character_table()
        assert table.rows == [[1, 1, 1], [2, 0, -1], [1, -1, 1]]
        assert table.dims == [1, 2, 1]

    def test_c4_generator_value(self, c4):
        assert c4.character_table().rows[1][1] == 1j

    @pytest.mark.parametrize("group", [SymmetricGroup(n) for n in range(1, 6)]
                             + [CyclicGroup(n) for n in range(1, 13)]
                             + [DihedralGroup(n) for n in range(3, 9)])
    def test_orthonormal_and_dimension_sum(self, group):
        table = group.character_table()
        table.validate()
        assert sum(d * d for d in table.dims) == group.order

    def test_explicit_without_table(self):
        group = ExplicitGroup([as_matrix([[0, 1], [1, 0]])])
        with pytest.raises(UnsupportedError):
            group.character_table()

    def test_explicit_with_irreps(self):
        group = ExplicitGroup([as_matrix([[0, 1], [1, 0]])], irreps=[[[[1]]], [[[-1]]]])
        assert group.character_table().rows == [[1, 1], [1, -1]]
        assert multiplicities(group) == [1, 1]

    def test_explicit_bad_irrep(self):
        with pytest.raises(PreconditionError):
            ExplicitGroup([as_matrix([[0, 1], [1, 0]])], irreps=[[[[2]]]])

    def test_frobenius_schur(self, s3, c4):
        assert [frobenius_schur_indicator(s3, i) for i in range(3)] == [1, 1, 1]
        assert [frobenius_schur_indicator(c4, i) for i in range(4)] == [1, 0, 1, 0]

    def test_natural_multiplicities(self, s3):
        assert multiplicities(s3) == [1, 1, 0]


class TestSpechtModules:
    def test_dimensions(self):
        assert specht_module((2, 1)).dimension == 2
        assert specht_module((3,)).dimension == 1
        assert specht_module((1, 1, 1)).dimension == 1
        for shape in partitions(5):
            assert specht_module(shape).dimension == hook_length_dimension(shape)

    def test_trivial_and_sign(self, s3):
        for g in s3.elements():
            assert specht_module((3,)).character(g) == 1
            sign = specht_module((1, 1, 1)).character(g)
            assert sign == (1 if sum(1 for i in range(3) for j in range(i + 1, 3) if g[i] > g[j]) % 2 == 0 else -1)

    @pytest.mark.parametrize("shape", [(2, 1), (3, 1), (2, 2), (3, 2), (2, 2, 1)])
    def test_coxeter_relations(self, shape):
        module = specht_module(shape)
        eye = np.eye(module.dimension, dtype=np.int64)
        s = module.generator_matrices
        for i, a in enumerate(s):
            assert np.array_equal(a @ a, eye)
            if i + 1 < len(s):
                b = s[i + 1]
                assert np.array_equal(a @ b @ a, b @ a @ b)
            for j in range(i + 2, len(s)):
                assert np.array_equal(a @ s[j], s[j] @ a)

    def test_matrix_is_homomorphism(self):
        group = SymmetricGroup(4)
        module = specht_module((2, 2))
        for g in group.elements()[::5]:
            for h in group.elements()[::7]:
                assert np.array_equal(module.matrix(group.multiply(g, h)), module.matrix(g) @ module.matrix(h))

    def test_invalid_partition(self):
        with pytest.raises(PreconditionError):
            specht_module((1, 2))

    def test_standard_tableaux(self):
        tableaux = standard_tableaux((2, 1))
        assert [t.rows for t in tableaux] == [((1, 2), (3,)), ((1, 3), (2,))]
        assert all(t.is_standard() for t in tableaux)
        assert Tableau([[1, 2, 4], [3, 5]]).word() == (3, 1, 5, 2, 4)


class TestPolynomialAction:
    def test_swap(self, s2):
        x1, x2 = Polynomial.variables(2)
        assert act_on_polynomial(s2, (1, 0), x1 ** 2 * x2) == x2 ** 2 * x1

    def test_cyclic_shift(self, c4):
        x = Polynomial.variables(4)
        assert act_on_polynomial(c4, 1, x[0]) == x[1]

    def test_identity(self, s3, rng):
        f = random_polynomial(rng, 3, 3)
        assert act_on_polynomial(s3, s3.identity, f) == f

    def test_dimension_mismatch(self, s3):
        with pytest.raises(DimensionMismatchError):
            act_on_polynomial(s3, s3.identity, Polynomial.variable(0, 2))

    def test_left_action(self, rng):
        for group in (SymmetricGroup(3), DihedralGroup(4, "plane"), CyclicGroup(3)):
            elements = group.elements()
            for _ in range(10):
                g, h = rng.choice(elements), rng.choice(elements)
                f = random_polynomial(rng, group.degree, 3)
                lhs = act_on_polynomial(group, g, act_on_polynomial(group, h, f))
                assert lhs == act_on_polynomial(group, group.multiply(g, h), f)

    def test_morphism(self, s3, rng):
        f, h = random_polynomial(rng, 3, 2), random_polynomial(rng, 3, 2)
        g = (2, 0, 1)
        assert act_on_polynomial(s3, g, f * h) == act_on_polynomial(s3, g, f) * act_on_polynomial(s3, g, h)


class TestReynolds:
    def test_two_element_average(self, s2):
        x1, x2 = Polynomial.variables(2)
        assert reynolds(s2, x1 ** 2) == (x1 ** 2 + x2 ** 2) / 2

    def test_power_sum_expression(self, s3, xs3):
        x1, x2, _ = xs3
        p1, p2 = power_sum(3, 1), power_sum(3, 2)
        assert reynolds(s3, (x2 - x1) ** 2) == p2 - Fraction(1, 3) * p1 ** 2

    def test_alternating_vanishes(self, s3):
        assert reynolds(s3, vandermonde([0, 1, 2], 3)).is_zero()

    def test_idempotent(self, rng):
        for group in (SymmetricGroup(3), CyclicGroup(4), DihedralGroup(4, "plane")):
            for _ in range(35):
                f = random_polynomial(rng, group.degree, 4)
                once = reynolds(group, f)
                assert reynolds(group, once) == once
                assert is_invariant(group, once)

    def test_fixes_invariants(self, s3, rng):
        f = elementary_symmetric(3, 2) * power_sum(3, 3) + 5
        assert reynolds(s3, f) == f

    def test_invariant_linearity(self, s3, rng):
        f = random_polynomial(rng, 3, 3)
        h = power_sum(3, 2)
        assert reynolds(s3, h * f) == h * reynolds(s3, f)

    def test_plane_dihedral(self):
        d4 = DihedralGroup(4, "plane")
        x, y = Polynomial.variables(2)
        assert reynolds(d4, x ** 2) == (x ** 2 + y ** 2) / 2
        assert reynolds(d4, x ** 3 * y).is_zero()


class TestPolynomialSpace:
    def test_dimension_and_character(self, s3):
        space = PolynomialSpaceRepresentation(s3, 2)
        assert space.degree == 10
        assert space.character(s3.identity) == 10
        table = space.character_table()
        assert sum(m * d for m, d in zip(multiplicities(space), table.dims)) == 10

    def test_float_matrices(self):
        d3 = DihedralGroup(3, "plane")
        space = PolynomialSpaceRepresentation(d3, 2, homogeneous=True)
        m = space.matrix((1, 0))
        assert m.shape == (3, 3)
        # rotation by 120 degrees on quadratic forms has eigenvalues 1, e^{±4πi/3}
        assert np.trace(to_float(m)) == pytest.approx(0.0, abs=1e-12)
        assert multiplicities(space) == [1, 0, 1]


class TestGroupSpecs:
    def test_families(self):
        assert parse_group_spec("S:3").order == 6
        assert parse_group_spec("C:4").order == 4
        assert parse_group_spec("D:5").degree == 5
        assert parse_group_spec("D:4:plane").degree == 2
        assert parse_group_spec("trivial:2").order == 1

    def test_malformed(self):
        with pytest.raises(PreconditionError):
            parse_group_spec("S:x")

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputOutputError):
            parse_group_spec(str(tmp_path / "nope.json"))

    def test_json_group(self, tmp_path):
        path = tmp_path / "swap.json"
        path.write_text(json.dumps({"generators": [[[0, 1], [1, 0]]],
                                    "irreps": [{"generators": [[[1]]]}, {"generators": [[[-1]]]}]}))
        group = parse_group_spec(str(path))
        assert group.order == 2 and group.name == "swap"
        assert group.is_permutation
        x1, x2 = Polynomial.variables(2)
        assert reynolds(group, x1) == (x1 + x2) / 2
