from fractions import Fraction

import pytest

from core.errors import NotInvariantError, PreconditionError, RewriteError, UnsupportedError
from core.polynomial import Polynomial, elementary_symmetric, power_sum, vandermonde
from modules.groups import DihedralGroup
from modules.groups.polynomial_action import reynolds
from modules.groups.tableaux import Tableau, partitions
from modules.invariant_ring import (InvariantBasis, alternating_decomposition, apply_diff_operator,
                                    character_multiplicity, charge, default_h_setup, derivative_span,
                                    dihedral_covariants, h_matrix, higher_specht, higher_specht_family,
                                    homogeneous_multiplicity, newton_convert, rewrite_in_invariants,
                                    specht_generators, specht_polynomial, steinberg_factor, word_index)
from modules.invariant_ring.harmonics import pairing_matrix
from modules.invariant_ring.higher_specht import specht_action_matrix


def zs(m):
    return Polynomial.variables(m)


class TestNewtonIdentities:
    def test_e2_in_two_variables(self):
        z1, z2 = zs(2)
        assert newton_convert(z2, "e2p", 2) == (z1 ** 2 - z2) / 2

    @pytest.mark.parametrize("n", [3, 6])
    def test_round_trip(self, n):
        for z in zs(n):
            assert newton_convert(newton_convert(z, "e2p", n), "p2e", n) == z

    def test_expansion_matches_power_sums(self):
        n = 4
        p_in_e = newton_convert(zs(4)[2], "p2e", n)
        assert p_in_e.substitute([elementary_symmetric(n, k) for k in range(1, 5)]) == power_sum(n, 3)

    def test_too_many_generators(self):
        with pytest.raises(PreconditionError):
            newton_convert(zs(3)[0], "e2p", 2)

    def test_unknown_direction(self):
        with pytest.raises(PreconditionError):
            newton_convert(zs(2)[0], "e2x", 2)


class TestRewrite:
    def test_motzkin_elementary(self, motzkin):
        e1, e2 = zs(2)
        g = rewrite_in_invariants(motzkin, InvariantBasis.elementary(2))
        assert g == e1 ** 2 * e2 ** 2 - 2 * e2 ** 3 - 3 * e2 ** 2 + 1

    def test_motzkin_power_sums(self, motzkin):
        p1, p2 = zs(2)
        g = rewrite_in_invariants(motzkin, InvariantBasis.powersum(2))
        expected = (p1 ** 4 * p2 - 3 * p1 ** 4 - 2 * p1 ** 2 * p2 ** 2 + 6 * p1 ** 2 * p2 + p2 ** 3
                    - 3 * p2 ** 2 + 4) / 4
        assert g == expected

    def test_formatted_expression(self, motzkin):
        g = rewrite_in_invariants(motzkin, InvariantBasis.elementary(2))
        assert g.format(["e1", "e2"]) == "e1^2*e2^2 - 2*e2^3 - 3*e2^2 + 1"

    def test_not_symmetric(self, xs3):
        with pytest.raises(NotInvariantError):
            rewrite_in_invariants(xs3[0] ** 2, InvariantBasis.elementary(3))

    def test_custom_basis(self):
        x1, x2 = zs(2)
        basis = InvariantBasis.custom([x1 ** 2 + x2 ** 2, x1 ** 2 * x2 ** 2])
        f = x1 ** 4 + x2 ** 4
        z1, z2 = zs(2)
        assert rewrite_in_invariants(f, basis) == z1 ** 2 - 2 * z2

    def test_custom_basis_outside_algebra(self):
        x1, x2 = zs(2)
        basis = InvariantBasis.custom([x1 ** 2 + x2 ** 2])
        with pytest.raises(RewriteError):
            rewrite_in_invariants(x1 * x2, basis)

    def test_constant_generator_rejected(self):
        with pytest.raises(PreconditionError):
            InvariantBasis.custom([Polynomial.constant(1, 2)])


class TestHigherSpecht:
    t = Tableau([[1, 2, 4], [3, 5]])
    v = Tableau([[1, 3, 5], [2, 4]])

    def test_word_and_index(self):
        assert self.t.word() == (3, 1, 5, 2, 4)
        assert word_index(self.t.word()) == (1, 0, 2, 0, 1)
        assert charge(self.t) == 4

    def test_monomial(self):
        spec = higher_specht(self.t, self.v)
        assert spec.monomial == Polynomial.monomial((0, 1, 0, 2, 1))
        assert spec.to_json()["word"] == "31524"
        assert spec.to_json()["index"] == "10201"

    def test_one_row_shape_is_one(self):
        t = Tableau([[1, 2, 3]])
        assert higher_specht(t, t).polynomial == Polynomial.constant(1, 3)

    def test_sign_shape_is_vandermonde(self):
        t = Tableau([[1], [2], [3]])
        f = higher_specht(t, t).polynomial
        delta = vandermonde([0, 1, 2], 3)
        assert f in (delta, -delta)

    def test_specht_polynomial(self):
        x1, _, x3 = zs(3)
        assert specht_polynomial(Tableau([[1, 2], [3]])) == x1 - x3

    def test_shape_mismatch(self):
        with pytest.raises(PreconditionError):
            higher_specht(Tableau([[1, 2, 3]]), Tableau([[1, 2], [3]]))

    def test_non_standard(self):
        with pytest.raises(PreconditionError):
            higher_specht(Tableau([[2, 1], [3]]), Tableau([[1, 2], [3]]))

    def test_s3_family_is_a_basis(self):
        family = [h.polynomial for shape in partitions(3) for h in higher_specht_family(shape)]
        assert len(family) == 6
        assert pairing_matrix(family).rank() == 6

    def test_generators_per_shape(self):
        counts = {shape: len(polys) for shape, polys in specht_generators(3, 2, homogeneous=True).items()}
        assert counts == {(3,): 2, (2, 1): 2, (1, 1, 1): 0}

    @pytest.mark.parametrize("shape", [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])
    def test_multiplicity_from_charges(self, shape):
        for degree in range(4):
            assert homogeneous_multiplicity(shape, degree) == character_multiplicity(shape, degree)

    def test_action_matrix_traces(self):
        assert specht_action_matrix((2, 1), (0, 1, 2)).trace() == 2
        assert specht_action_matrix((2, 1), (1, 0, 2)).trace() == 0
        assert specht_action_matrix((3, 1), (1, 0, 2, 3)).trace() == 1


class TestHarmonics:
    def test_diff_operator(self):
        x1, x2 = zs(2)
        assert apply_diff_operator(x1 ** 2, x1 ** 2 * x2) == x2
        assert apply_diff_operator(x1 + x2, x1 * x2) == x1 + x2

    def test_derivative_span_of_vandermonde(self):
        assert len(derivative_span(vandermonde([0, 1, 2], 3))) == 6

    def test_steinberg_elementary(self):
        assert steinberg_factor([elementary_symmetric(2, 1), elementary_symmetric(2, 2)]) == 1

    def test_steinberg_power_sums(self):
        assert steinberg_factor([power_sum(2, 1), power_sum(2, 2)]) == -2

    def test_jacobian_not_vandermonde(self):
        x1, x2 = zs(2)
        with pytest.raises(PreconditionError):
            steinberg_factor([x1, x2])

    def test_alternating_decomposition(self):
        delta = vandermonde([0, 1, 2], 3)
        e1 = elementary_symmetric(3, 1)
        g0, g1 = alternating_decomposition(e1 + delta * 2)
        assert g0 == e1
        assert g1 == Polynomial.constant(2, 3)

    def test_alternating_rejects_non_invariant(self, xs3):
        with pytest.raises(NotInvariantError):
            alternating_decomposition(xs3[0])


class TestHMatrix:
    def test_s3_standard(self, s3):
        h = h_matrix(s3, *default_h_setup(s3, "(2,1)"))
        p1, p2, p3 = zs(3)
        assert h.size == 2
        assert h.matrix[0, 0] == p2 - p1 ** 2 / 3
        assert h.matrix[0, 1] == -p1 ** 3 / 3 + p1 * p2 * Fraction(4, 3) - p3
        assert h.matrix[1, 1] == -p1 ** 4 / 6 + p1 ** 2 * p2 * Fraction(2, 3) - p1 * p3 * Fraction(2, 3) + p2 ** 2 / 6

    def test_s3_sign(self, s3):
        h = h_matrix(s3, *default_h_setup(s3, "(1,1,1)"))
        p1, p2, p3 = zs(3)
        expected = (-p1 ** 6 + 9 * p1 ** 4 * p2 - 8 * p1 ** 3 * p3 - 21 * p1 ** 2 * p2 ** 2 + 36 * p1 * p2 * p3
                    + 3 * p2 ** 3 - 18 * p3 ** 2) / 6
        assert h.matrix[0, 0] == expected

    def test_s3_trivial(self, s3):
        h = h_matrix(s3, *default_h_setup(s3, "3"))
        assert h.matrix[0, 0] == Polynomial.constant(1, 3)

    def test_expansion_is_reynolds(self, s3):
        h = h_matrix(s3, *default_h_setup(s3, "(2,1)"))
        s = h.polynomials
        assert h.expand()[0, 1] == reynolds(s3, s[0] * s[1])

    def test_d3_plane(self):
        d3 = DihedralGroup(3, "plane")
        h = h_matrix(d3, *default_h_setup(d3, "tau_1"))
        z1, z2 = zs(2)
        assert h.matrix[0, 0] == z1 / 2
        assert h.matrix[0, 1] == -z2 / 4
        assert h.matrix[1, 1] == z1 ** 2 / 8

    def test_dihedral_labels(self):
        assert set(dihedral_covariants(4)) == {"rho_0", "rho_1", "rho_2", "rho_3", "tau_1"}
        assert set(dihedral_covariants(5)) == {"rho_0", "rho_1", "tau_1", "tau_2"}

    def test_unknown_irrep(self):
        d3 = DihedralGroup(3, "plane")
        with pytest.raises(PreconditionError):
            default_h_setup(d3, "tau_9")

    def test_wrong_shape_size(self, s3):
        with pytest.raises(PreconditionError):
            default_h_setup(s3, "(2,2)")

    def test_unsupported_group(self, c4):
        with pytest.raises(UnsupportedError):
            default_h_setup(c4, "chi_0")

    def test_json(self, s3):
        data = h_matrix(s3, *default_h_setup(s3, "(2,1)")).to_json()
        assert data["irrep"] == "(2,1)"
        assert data["size"] == 2
        assert data["basis"] == "powersum"
        assert len(data["s"]) == 2
