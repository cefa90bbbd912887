from fractions import Fraction

import pytest

from core.core_report import Status
from core.errors import NotInvariantError, PreconditionError, UnsupportedError
from core.matrices import as_matrix, identity, matrices_equal
from core.polynomial import Polynomial, power_sum
from modules.groups import SymmetricGroup
from modules.groups.polynomial_action import PolynomialSpaceRepresentation, multiplicities
from modules.sos_invariant import (BlockGramCertificate, average_gram, gram_feasibility, gram_setup,
                                   half_newton_monomials, invariant_sos_blocks, monomial_action, negative_point,
                                   quartic_coefficients, solve_blocks, sos_lower_bound, symmetric_quartic_form,
                                   symmetric_quartic_polynomial, verify_certificate)
from modules.sos_invariant.quartic import gamma_form, quartic_polynomial


def symmetric_quadratic(n, a, b):
    xs = Polynomial.variables(n)
    f = Polynomial.zero(n)
    for i in range(n):
        f = f + xs[i] ** 2 * a
        for j in range(i + 1, n):
            f = f + xs[i] * xs[j] * b
    return f


class TestNewtonPolytope:
    def test_sum_of_two_squares(self):
        x1, x2 = Polynomial.variables(2)
        assert half_newton_monomials(x1 ** 2 + x2 ** 2) == [(1, 0), (0, 1)]

    def test_motzkin(self, motzkin):
        assert half_newton_monomials(motzkin) == [(0, 0), (1, 1), (1, 2), (2, 1)]

    def test_constant(self):
        assert half_newton_monomials(Polynomial.constant(1, 2)) == [(0, 0)]

    def test_odd_degree_rejected(self):
        x1, x2 = Polynomial.variables(2)
        with pytest.raises(PreconditionError):
            gram_setup(x1 ** 3 + x2 ** 2)


class TestGramFeasibility:
    def test_motzkin_forced_diagonal(self, motzkin):
        result = gram_feasibility(gram_setup(motzkin))
        assert result.status == Status.INFEASIBLE
        assert result.reason == "Gram diagonal entry at X1*X2 forced to -3 < 0"

    def test_identity_certificate(self):
        x1, x2 = Polynomial.variables(2)
        result = gram_feasibility(gram_setup(x1 ** 2 + x2 ** 2))
        assert result.status == Status.FEASIBLE
        assert matrices_equal(result.gram, identity(2))

    def test_two_squares_identified(self):
        x1, x2 = Polynomial.variables(2)
        f = (x1 + x2) ** 2 + (x1 - x2) ** 2
        result = gram_feasibility(gram_setup(f))
        assert result.status == Status.FEASIBLE
        assert matrices_equal(result.gram, identity(2) * 2)

    def test_certificate_reproduces_target(self):
        x1, x2 = Polynomial.variables(2)
        f = x1 ** 4 + x1 ** 2 * x2 ** 2 + x2 ** 4 + 1
        result = gram_feasibility(gram_setup(f))
        assert result.status == Status.FEASIBLE
        assert result.problem.gram_polynomial(result.gram) == f

    def test_negative_value_is_infeasible(self):
        x1, x2 = Polynomial.variables(2)
        result = gram_feasibility(gram_setup(x1 ** 2 - x2 ** 2))
        assert result.status == Status.INFEASIBLE
        assert "forced" in result.reason

    def test_negative_point(self):
        x1 = Polynomial.variable(0, 1)
        point, value = negative_point(x1 ** 2 - 1)
        assert point == [0]
        assert value == -1

    def test_no_negative_point(self, motzkin):
        assert negative_point(motzkin) is None


class TestLowerBound:
    def test_shifted_parabola(self):
        x1 = Polynomial.variable(0, 1)
        bound = sos_lower_bound(x1 ** 2 - 2 * x1 + 3)
        assert bound.value <= 2
        assert float(bound.value) == pytest.approx(2, abs=1e-6)
        assert bound.certificate.feasible

    def test_float_input_rejected(self):
        x1 = Polynomial.variable(0, 1)
        with pytest.raises(PreconditionError):
            sos_lower_bound(x1 ** 2 * 0.5)


class TestAverageGram:
    def test_swap_average(self, s2):
        averaged = average_gram(s2, [(1, 0), (0, 1)], [[1, 0], [0, 3]])
        assert matrices_equal(averaged, as_matrix([[2, 0], [0, 2]]))

    def test_commuting_matrix_unchanged(self, s2):
        q = as_matrix([[2, 1], [1, 2]])
        assert matrices_equal(average_gram(s2, [(1, 0), (0, 1)], q), q)

    def test_represents_same_invariant(self, s2):
        x1, x2 = Polynomial.variables(2)
        problem = gram_setup((x1 ** 2 + x2 ** 2) ** 2)
        assert problem.monomials == [(0, 2), (1, 1), (2, 0)]
        q = as_matrix([[1, 0, Fraction(1, 2)], [0, 1, 0], [Fraction(1, 2), 0, 1]])
        averaged = average_gram(s2, problem.monomials, q)
        assert problem.gram_polynomial(averaged) == problem.gram_polynomial(q)

    def test_average_commutes_with_action(self, s3):
        monomials = [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
        q = as_matrix([[1, 0, 0], [0, 2, -1], [0, -1, 2]])
        averaged = average_gram(s3, monomials, q)
        for g in s3.elements():
            p = monomial_action(s3, monomials, g)
            assert matrices_equal(p.dot(averaged), averaged.dot(p))

    def test_basis_not_closed(self, s2):
        with pytest.raises(PreconditionError):
            average_gram(s2, [(1, 0)], [[1]])


class TestInvariantBlocks:
    def test_quadratic_feasible(self, s3):
        f = symmetric_quadratic(3, 1, -1)
        problem = invariant_sos_blocks(s3, f)
        assert problem.block_sizes == [1, 1]
        result = solve_blocks(problem)
        assert result.status == Status.FEASIBLE
        assert verify_certificate(result.certificate, f)

    def test_quadratic_infeasible(self, s3):
        result = solve_blocks(invariant_sos_blocks(s3, symmetric_quadratic(3, 1, 3)))
        assert result.status == Status.INFEASIBLE
        assert "forced" in result.reason

    @pytest.mark.parametrize("a, b", [(1, 0), (2, 1), (1, -1), (1, 3), (3, -4), (0, 1)])
    def test_closed_form_condition(self, s3, a, b):
        # f = α(ΣX)² + βΣ(X_i - X_j)² with a = α + 2β, b = 2(α - β)
        alpha, beta = Fraction(a + b, 3), Fraction(2 * a - b, 6)
        result = solve_blocks(invariant_sos_blocks(s3, symmetric_quadratic(3, a, b)))
        assert result.feasible == (alpha >= 0 and beta >= 0)

    def test_closed_form_random_corpus(self, rng):
        # f = α(ΣX)² + βΣ_{i<j}(X_i - X_j)² with a = α + (n - 1)β, b = 2(α - β)
        for _ in range(100):
            n, a, b = rng.randint(2, 6), rng.randint(1, 6), rng.randint(-12, 12)
            alpha, beta = Fraction(2 * a + (n - 1) * b, 2 * n), Fraction(2 * a - b, 2 * n)
            expected = Status.FEASIBLE if alpha >= 0 and beta >= 0 else Status.INFEASIBLE
            f = symmetric_quadratic(n, a, b)
            blocks = solve_blocks(invariant_sos_blocks(SymmetricGroup(n), f))
            gram = gram_feasibility(gram_setup(f))
            assert (blocks.status, gram.status) == (expected, expected), (n, a, b)

    def test_square_of_invariant(self, s3, xs3):
        f = (xs3[0] + xs3[1] + xs3[2]) ** 2
        result = solve_blocks(invariant_sos_blocks(s3, f))
        assert result.status == Status.FEASIBLE
        by_label = {block.label: a for block, a in zip(result.certificate.blocks, result.certificate.matrices)}
        assert by_label["(3)"][0, 0] == 1
        assert all(a[0, 0] == 0 for label, a in by_label.items() if label != "(3)")

    def test_perturbed_certificate_rejected(self, s3):
        f = symmetric_quadratic(3, 1, -1)
        result = solve_blocks(invariant_sos_blocks(s3, f))
        bumped = [a.copy() for a in result.certificate.matrices]
        bumped[0][0, 0] = bumped[0][0, 0] + 1
        assert not verify_certificate(BlockGramCertificate(result.certificate.blocks, bumped), f)

    def test_non_psd_certificate_rejected(self, s3):
        f = symmetric_quadratic(3, 1, -1)
        result = solve_blocks(invariant_sos_blocks(s3, f))
        negated = [a * -1 for a in result.certificate.matrices]
        assert not verify_certificate(BlockGramCertificate(result.certificate.blocks, negated), f * -1)

    def test_not_invariant(self, s3, xs3):
        with pytest.raises(NotInvariantError):
            invariant_sos_blocks(s3, xs3[0] ** 2 + xs3[1] ** 2)

    def test_higher_specht_generators(self, s3):
        f = symmetric_quadratic(3, 1, -1)
        result = solve_blocks(invariant_sos_blocks(s3, f, source="higher-specht"))
        assert result.status == Status.FEASIBLE
        assert verify_certificate(result.certificate, f)

    def test_higher_specht_needs_symmetric_group(self, c4):
        x = Polynomial.variables(4)
        f = sum((xi ** 2 for xi in x[1:]), x[0] ** 2)
        with pytest.raises(UnsupportedError):
            invariant_sos_blocks(c4, f, source="higher-specht")

    def test_quartic_block_sizes_n4(self):
        f = power_sum(4, 2) ** 2
        assert invariant_sos_blocks(SymmetricGroup(4), f).block_sizes == [2, 2, 1]

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_block_sizes_stabilize(self, n):
        group = SymmetricGroup(n)
        sizes = [m for m in multiplicities(PolynomialSpaceRepresentation(group, 2, homogeneous=True)) if m]
        assert sizes == [2, 2, 1]

    def test_sdpa_export(self, s3):
        problem = invariant_sos_blocks(s3, symmetric_quadratic(3, 1, -1))
        data = problem.affine_problem().to_sdpa("quadratic")
        assert data.block_sizes == [-2]
        assert data.num_constraints == len(problem.affine_problem().rows)


class TestSymmetricQuartic:
    def test_square_of_pi2(self):
        result = symmetric_quartic_form([0, 0, 1, 0, 0], 4)
        assert result.status == Status.FEASIBLE
        params = result.parameters
        assert matrices_equal(params.alpha, as_matrix([[0, 0], [0, 1]]))
        assert matrices_equal(params.beta, as_matrix([[0, 0], [0, 0]]))
        assert params.gamma == 0

    def test_pi4_minus_pi2_squared(self):
        result = symmetric_quartic_form([0, 0, -1, 0, 1], 4)
        assert result.is_sos
        assert result.parameters.beta[1, 1] == 1
        assert result.parameters.polynomial(4) == quartic_polynomial([0, 0, -1, 0, 1], 4)

    def test_gamma_form_needs_gamma(self):
        result = symmetric_quartic_polynomial(gamma_form(5))
        assert result.is_sos
        assert result.parameters.gamma == 1

    def test_negative_form(self):
        result = symmetric_quartic_form([0, 0, -1, 0, 0], 4)
        assert result.status == Status.INFEASIBLE

    def test_agrees_with_gram(self):
        f = quartic_polynomial([1, 0, 0, 0, -1], 4)
        assert symmetric_quartic_polynomial(f).status == Status.INFEASIBLE
        assert gram_feasibility(gram_setup(f)).status == Status.INFEASIBLE

    def test_agrees_with_gram_random_corpus(self, rng):
        p1, p2 = power_sum(4, 1), power_sum(4, 2)
        forms = []
        for _ in range(25):
            forms.append(quartic_polynomial([rng.randint(-3, 3) for _ in range(5)], 4))
            q = p1 ** 2 * rng.randint(-3, 3) + p2 * rng.randint(-3, 3)
            forms.append(q ** 2 + p2 ** 2 * rng.randint(1, 3))
        decided = set()
        for f in forms:
            if f.is_zero():
                continue
            gram = gram_feasibility(gram_setup(f))
            if gram.status == Status.UNDECIDED:
                continue
            assert symmetric_quartic_polynomial(f).status == gram.status, f
            decided.add(gram.status)
        assert decided == {Status.FEASIBLE, Status.INFEASIBLE}

    def test_coefficients_recovered(self):
        coeffs = [Fraction(3), Fraction(-1, 2), Fraction(2), Fraction(5, 3), Fraction(-7)]
        assert quartic_coefficients(quartic_polynomial(coeffs, 5)) == coeffs

    @pytest.mark.parametrize("coeffs, n", [([0, 0, 1, 0, 0], 6), ([0, 0, -1, 0, 1], 4),
                                           (quartic_coefficients(gamma_form(5)), 5)])
    def test_parametrization_reproduces_form(self, coeffs, n):
        result = symmetric_quartic_form(coeffs, n)
        assert result.is_sos
        assert result.parameters is not None
        assert result.parameters.polynomial(n) == quartic_polynomial(coeffs, n)
        assert set(result.to_json()["parametrization"]) == {"alpha11", "alpha12", "alpha22", "beta11", "beta12",
                                                             "beta22", "gamma"}

    def test_small_n_unsupported(self):
        with pytest.raises(UnsupportedError):
            symmetric_quartic_form([0, 0, 1, 0, 0], 3)

    def test_rejects_non_symmetric(self):
        x = Polynomial.variables(4)
        with pytest.raises(PreconditionError):
            quartic_coefficients(x[0] ** 4)

    def test_rejects_wrong_degree(self):
        with pytest.raises(PreconditionError):
            quartic_coefficients(power_sum(4, 2))
