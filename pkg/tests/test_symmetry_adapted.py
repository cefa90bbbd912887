from fractions import Fraction

import numpy as np
import pytest

from conftest import random_rational_matrix
from core.errors import NotInvariantError, PreconditionError, UnsupportedError
from core.matrices import as_matrix, identity, is_exact_matrix, matrices_equal, to_float
from modules.groups import (CyclicGroup, DihedralGroup, ExplicitGroup, PolynomialSpaceRepresentation,
                            SymmetricGroup, frobenius_schur_indicator)
from modules.symmetry_adapted import (SymmetryAdaptedBasis, block_diagonalize, commutant_average,
                                      isotypic_project, isotypic_projector, symmetry_adapted_basis, zonal_matrices)
from modules.symmetry_adapted.adapted_basis import check_block_action


def circulant(values):
    n = len(values)
    return as_matrix([[values[(j - i) % n] for j in range(n)] for i in range(n)])


def random_commutant(rep, np_rng):
    a = np_rng.standard_normal((rep.degree, rep.degree))
    return commutant_average(rep, a + a.T)


def quaternion_group():
    i = [[1j, 0], [0, -1j]]
    j = [[0, 1], [-1, 0]]
    return ExplicitGroup([i, j], name="Q8",
                         irreps=[[[[1]], [[1]]], [[[1]], [[-1]]], [[[-1]], [[1]]], [[[-1]], [[-1]]], [i, j]])


def assert_projector_algebra(rep):
    count = len(rep.character_table().rows)
    projectors = [isotypic_projector(rep, i) for i in range(count)]
    n = rep.degree
    if all(is_exact_matrix(p) for p in projectors) and n <= 20:
        total = projectors[0]
        for p in projectors[1:]:
            total = total + p
        assert matrices_equal(total, identity(n))
        for i, p in enumerate(projectors):
            assert matrices_equal(p.dot(p), p)
            for q in projectors[i + 1:]:
                assert all(v == 0 for v in p.dot(q).flat)
        return
    floats = [to_float(p) for p in projectors]
    assert np.allclose(sum(floats), np.eye(n), atol=1e-9)
    for i, p in enumerate(floats):
        assert np.allclose(p @ p, p, atol=1e-9)
        for q in floats[i + 1:]:
            assert np.allclose(p @ q, 0, atol=1e-9)


class TestIsotypicProjection:
    def test_s2_trivial_and_sign(self, s2):
        x1, x2 = Fraction(3), Fraction(7)
        assert list(isotypic_project(s2, 0, [x1, x2])) == [5, 5]
        assert list(isotypic_project(s2, 1, [x1, x2])) == [-2, 2]

    def test_c4_character_one(self, c4):
        image = isotypic_project(c4, 1, [1, 0, 0, 0])
        assert np.allclose(image, np.array([1, -1j, -1, 1j]) / 4)

    def test_unknown_index(self, s3):
        with pytest.raises(PreconditionError):
            isotypic_project(s3, 3, [1, 0, 0])

    def test_wrong_length(self, s3):
        with pytest.raises(PreconditionError):
            isotypic_project(s3, 0, [1, 0])

    @pytest.mark.parametrize("group", [SymmetricGroup(n) for n in range(1, 6)]
                             + [CyclicGroup(n) for n in range(1, 13)]
                             + [DihedralGroup(n) for n in range(3, 9)]
                             + [DihedralGroup(n, "plane") for n in range(3, 9)])
    def test_natural_algebra(self, group):
        assert_projector_algebra(group)

    @pytest.mark.parametrize("group", [SymmetricGroup(n) for n in range(2, 6)]
                             + [CyclicGroup(n) for n in range(2, 13)]
                             + [DihedralGroup(n) for n in range(3, 9)]
                             + [DihedralGroup(n, "plane") for n in range(3, 9)])
    def test_polynomial_space_algebra(self, group):
        assert_projector_algebra(PolynomialSpaceRepresentation(group, 3))


class TestSymmetryAdaptedBasis:
    def test_c4_fourier_basis(self, c4):
        basis = symmetry_adapted_basis(c4, "complex")
        expected = [[1, 1, 1, 1], [1, -1j, -1, 1j], [1, -1, 1, -1], [1, 1j, -1, -1j]]
        for vector, target in zip(basis.vectors, expected):
            assert np.allclose(to_float(np.asarray(list(vector), dtype=object)), target)
        assert [c.kind for c in basis.components] == ["complex"] * 4

    def test_c4_real_basis(self, c4):
        basis = symmetry_adapted_basis(c4, "real")
        assert [list(v) for v in basis.vectors] == [[1, 1, 1, 1], [2, 0, -2, 0], [0, -2, 0, 2], [1, -1, 1, -1]]
        assert basis.realified == [(1, 3)]
        assert [c.kind for c in basis.components] == ["real", "pair", "real"]

    def test_s3_natural(self, s3):
        basis = symmetry_adapted_basis(s3, "real")
        assert list(basis.vectors[0]) == [1, 1, 1]
        assert [c.label for c in basis.components] == ["(3)", "(2,1)"]
        assert [(c.multiplicity, c.dim) for c in basis.components] == [(1, 1), (1, 2)]
        assert is_exact_matrix(basis.matrix())

    def test_real_flavor_is_real(self):
        for group in (CyclicGroup(5), CyclicGroup(6), DihedralGroup(5), DihedralGroup(4, "plane")):
            basis = symmetry_adapted_basis(group, "real")
            for v in basis.vectors:
                assert np.max(np.abs(np.imag(to_float(np.asarray(list(v), dtype=object)))), initial=0.0) <= 1e-12

    @pytest.mark.parametrize("group", [SymmetricGroup(3), SymmetricGroup(4), CyclicGroup(5), CyclicGroup(6),
                                       DihedralGroup(4), DihedralGroup(5), DihedralGroup(5, "plane"),
                                       PolynomialSpaceRepresentation(SymmetricGroup(3), 2)])
    @pytest.mark.parametrize("flavor", ["complex", "real"])
    def test_group_matrices_become_block_diagonal(self, group, flavor):
        basis = symmetry_adapted_basis(group, flavor)
        assert basis.dimension == group.degree
        assert sum(c.size for c in basis.components) == group.degree
        assert check_block_action(group, basis)

    def test_orthonormal(self):
        for group in (SymmetricGroup(4), CyclicGroup(6), DihedralGroup(5)):
            b = to_float(symmetry_adapted_basis(group, "real", orthonormal=True).matrix())
            assert np.allclose(b.conj().T @ b, np.eye(group.degree), atol=1e-9)

    def test_quaternionic_rejected_in_real_flavor(self):
        group = quaternion_group()
        assert frobenius_schur_indicator(group, 4) == -1
        with pytest.raises(UnsupportedError):
            symmetry_adapted_basis(group, "real")
        assert symmetry_adapted_basis(group, "complex").dimension == 2

    def test_missing_irreps(self):
        with pytest.raises(UnsupportedError):
            symmetry_adapted_basis(ExplicitGroup([[[0, 1], [1, 0]]], characters=[[1, 1], [1, -1]]))

    def test_unknown_flavor(self, s3):
        with pytest.raises(PreconditionError):
            symmetry_adapted_basis(s3, "quaternionic")

    def test_json_round_trip(self, c4):
        basis = symmetry_adapted_basis(c4, "real")
        again = SymmetryAdaptedBasis.from_json(basis.to_json())
        assert [list(v) for v in again.vectors] == [list(v) for v in basis.vectors]
        assert [c.positions for c in again.components] == [c.positions for c in basis.components]


class TestBlockDiagonalize:
    def test_c4_complex_diagonal(self, c4, rng):
        for _ in range(20):
            a, b, c, d = (Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4))
            result = block_diagonalize(c4, circulant([a, b, c, d]), flavor="complex")
            assert result.off_block_mass < 1e-10
            values = [complex(to_float(blk.matrix)[0, 0]) for blk in result.blocks]
            # the χ₁ image is spanned by (1, -i, -1, i), so χ₁ carries α - iβ - γ + iδ
            expected = [a + b + c + d, complex(a - c, d - b), a - b + c - d, complex(a - c, b - d)]
            assert np.allclose(values, [complex(v) for v in expected], atol=1e-10)

    def test_c4_real_blocks_exact(self, c4, rng):
        for _ in range(20):
            a, b, c, d = (Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4))
            result = block_diagonalize(c4, circulant([a, b, c, d]), flavor="real")
            assert result.off_block_mass == 0.0
            blocks = [blk.matrix for blk in result.blocks]
            assert matrices_equal(blocks[0], as_matrix([[a + b + c + d]]))
            # realified pair block; its trace is twice the real part of the χ₁ eigenvalue
            assert matrices_equal(blocks[1], as_matrix([[a - c, d - b], [b - d, a - c]]))
            assert matrices_equal(blocks[2], as_matrix([[a - b + c - d]]))

    def test_c4_worked_example(self, c4):
        result = block_diagonalize(c4, circulant([1, 2, 3, 4]), flavor="real")
        assert [blk.matrix.tolist() for blk in result.blocks] == [[[10]], [[-2, 2], [-2, -2]], [[-2]]]

    def test_s3_gram_spectrum(self, s3):
        a, b = Fraction(5), Fraction(2)
        x = as_matrix([[a if i == j else b for j in range(3)] for i in range(3)])
        result = block_diagonalize(s3, x)
        assert [(blk.matrix.tolist(), blk.repeats) for blk in result.blocks] == [([[a + 2 * b]], 1), ([[a - b]], 2)]
        assert np.allclose(result.spectrum().real, [3, 3, 9])

    def test_not_commuting(self, s3):
        with pytest.raises(NotInvariantError) as info:
            block_diagonalize(s3, as_matrix([[1, 0, 0], [0, 2, 0], [0, 0, 3]]))
        assert info.value.generator is not None

    @pytest.mark.parametrize("group", [SymmetricGroup(3), SymmetricGroup(4), CyclicGroup(5), CyclicGroup(8),
                                       DihedralGroup(4), DihedralGroup(5), DihedralGroup(6, "plane")])
    def test_spectrum_preserved(self, group, np_rng):
        basis = symmetry_adapted_basis(group, "real")
        for _ in range(50):
            x = random_commutant(group, np_rng)
            result = block_diagonalize(group, x, basis=basis)
            assert result.off_block_mass < 1e-9
            assert np.allclose(np.sort(result.spectrum().real), np.linalg.eigvalsh(x), atol=1e-8)

    def test_commutant_average_is_invariant(self, d3, rng):
        x = commutant_average(d3, random_rational_matrix(rng, 3, 3))
        assert is_exact_matrix(x)
        for g in d3.generators():
            m = d3.matrix(g)
            assert matrices_equal(m.dot(x), x.dot(m))


class TestZonalMatrices:
    def test_c4_trivial_component(self, c4):
        zonal = zonal_matrices(c4)
        trivial = zonal.blocks[0]
        assert trivial.size == 1
        assert all(v == Fraction(1, 4) for v in trivial.entries.flat)

    def test_c4_pair_is_one_by_one(self, c4):
        zonal = zonal_matrices(c4)
        assert [b.size for b in zonal.blocks] == [1, 1, 1]
        assert zonal.blocks[1].entries[0, 2, 0, 0] == Fraction(-1, 2)

    @pytest.mark.parametrize("group", [SymmetricGroup(3), SymmetricGroup(4), CyclicGroup(4), CyclicGroup(7),
                                       DihedralGroup(4), DihedralGroup(5), DihedralGroup(5, "plane"),
                                       PolynomialSpaceRepresentation(CyclicGroup(3), 2)])
    def test_reconstruction(self, group, np_rng):
        zonal = zonal_matrices(group)
        assert matrices_equal(zonal.reconstruct(zonal.project(identity(group.degree))),
                              as_matrix(np.eye(group.degree)), 1e-9)
        for _ in range(10):
            x = random_commutant(group, np_rng)
            assert np.allclose(to_float(zonal.reconstruct(zonal.project(x))), x, atol=1e-9)

    def test_s3_gram_block(self, s3):
        zonal = zonal_matrices(s3)
        a, b = Fraction(5), Fraction(2)
        x = as_matrix([[a if i == j else b for j in range(3)] for i in range(3)])
        blocks = zonal.project(x)
        assert blocks[0].tolist() == [[a + 2 * b]]
        assert blocks[1].tolist() == [[a - b]]

    def test_contraction_scales_by_dimension(self, np_rng):
        group = DihedralGroup(5)
        zonal = zonal_matrices(group)
        x = random_commutant(group, np_rng)
        for block, reduced, projected in zip(zonal.blocks, zonal.reduce(x), zonal.project(x)):
            assert np.allclose(to_float(reduced), block.repeats * to_float(projected).T, atol=1e-9)
