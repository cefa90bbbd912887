from fractions import Fraction

import numpy as np
import pytest

from conftest import random_polynomial, random_rational_matrix
from core.config import Limits
from core.desk_search import DeskMinimizer, _points_per_axis, grid
from core.errors import DimensionMismatchError, InconsistentSystemError, PreconditionError
from core.matrices import (as_matrix, exact_nullspace, exact_rank, exact_solve, is_exact_matrix, ldlt_psd_check,
                           matrix_from_json, matrix_to_json, quadratic_form, sym_eigenvalues)
from core.matrix_polynomial import MatrixPolynomial
from core.polynomial import Polynomial, elementary_symmetric, monomials_of_degree, power_sum, vandermonde
from core.scalars import format_scalar, parse_scalar, rationalize, root_of_unity, to_scalar


class TestScalars:
    def test_exact_stays_exact(self):
        assert to_scalar(3) == Fraction(3)
        assert isinstance(to_scalar("3/6"), Fraction) and to_scalar("3/6") == Fraction(1, 2)

    def test_mixing_gives_float(self):
        assert isinstance(to_scalar(Fraction(1, 2)) + 0.5, float)

    def test_json_encoding(self):
        assert format_scalar(Fraction(-2, 4)) == "-1/2"
        assert format_scalar(1j) == [0.0, 1.0]
        assert parse_scalar("-1/2") == Fraction(-1, 2)
        assert parse_scalar([0.0, 1.0]) == 1j

    def test_roots_of_unity_snap(self):
        assert root_of_unity(1, 4) == 1j
        assert root_of_unity(2, 4) == Fraction(-1)
        assert abs(root_of_unity(1, 5) ** 5 - 1) < 1e-12

    def test_rationalize(self):
        assert rationalize(0.3333333333333333) == Fraction(1, 3)


class TestPolynomialArithmetic:
    def test_binomial(self):
        x1, x2 = Polynomial.variables(2)
        assert (x1 + x2) * (x1 + x2) == x1 ** 2 + 2 * x1 * x2 + x2 ** 2

    def test_additive_identity(self):
        x1, x2 = Polynomial.variables(2)
        p = 3 * x1 - x2 ** 2
        assert p + Polynomial.zero(2) == p

    def test_difference_of_squares(self):
        x1, x2 = Polynomial.variables(2)
        assert (x1 - x2) * (x1 + x2) == x1 ** 2 - x2 ** 2

    def test_no_zero_coefficients_stored(self):
        x1, x2 = Polynomial.variables(2)
        assert (x1 - x1).terms == {}
        assert Polynomial(2, {(1, 0): 0}).is_zero()

    def test_variable_count_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            Polynomial.variable(0, 2) + Polynomial.variable(0, 3)

    def test_ring_axioms(self, rng):
        for _ in range(30):
            p, q, r = (random_polynomial(rng, 3, 3) for _ in range(3))
            assert (p * q) * r == p * (q * r)
            assert p * (q + r) == p * q + p * r
            assert p * q == q * p
            assert p + q == q + p

    def test_grlex_leading_term(self):
        x1, x2 = Polynomial.variables(2)
        p = x2 ** 3 + x1 * x2 + x1 ** 3
        assert p.leading_exponent() == (3, 0)
        assert [e for e, _ in p.items()] == [(3, 0), (0, 3), (1, 1)]

    def test_division(self):
        x1, x2 = Polynomial.variables(2)
        product = (x1 ** 2 - x2) * (x1 + 3 * x2)
        assert product.divide_exact(x1 + 3 * x2) == x1 ** 2 - x2
        with pytest.raises(PreconditionError):
            (x1 ** 2 + 1).divide_exact(x1 + x2)

    def test_symmetric_families(self):
        x1, x2, x3 = Polynomial.variables(3)
        assert elementary_symmetric(3, 2) == x1 * x2 + x1 * x3 + x2 * x3
        assert power_sum(3, 2) == x1 ** 2 + x2 ** 2 + x3 ** 2
        assert power_sum(3, 0) == 3
        assert vandermonde([0, 1, 2], 3) == (x1 - x2) * (x1 - x3) * (x2 - x3)

    def test_monomial_enumeration(self):
        assert len(monomials_of_degree(3, 2)) == 6
        assert monomials_of_degree(2, 2)[-1] == (2, 0)

    def test_json_schema(self):
        x1, x2 = Polynomial.variables(2)
        p = Fraction(1, 2) * x1 ** 2 - x2
        data = p.to_json()
        assert data["vars"] == 2
        assert {"c": "1/2", "e": [2, 0]} in data["terms"]
        assert Polynomial.from_json(data) == p


class TestPolynomialEvaluation:
    def test_motzkin_at_one(self, motzkin):
        assert motzkin.evaluate([1, 1]) == 0

    def test_constant_term_at_zero(self, rng):
        p = random_polynomial(rng, 3, 4)
        assert p.evaluate([0, 0, 0]) == p.constant_term()

    def test_pythagoras(self):
        x1, x2 = Polynomial.variables(2)
        assert (x1 ** 2 + x2 ** 2).evaluate([3, 4]) == 25

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            Polynomial.variable(0, 2).evaluate([1])

    def test_homomorphism(self, rng):
        for _ in range(30):
            p, q = random_polynomial(rng, 3, 3), random_polynomial(rng, 3, 3)
            point = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)]
            assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)

    def test_batched_matches_exact(self, rng, motzkin):
        points = np.array([[0.5, -1.5], [2.0, 0.25]])
        values = motzkin.evaluate_many(points)
        for point, value in zip(points, values):
            assert value == pytest.approx(float(motzkin.evaluate([float(v) for v in point])))

    def test_substitute_and_derivative(self):
        x1, x2 = Polynomial.variables(2)
        p = x1 ** 2 * x2
        assert p.substitute([x1 + x2, x2]) == (x1 + x2) ** 2 * x2
        assert p.derivative(0) == 2 * x1 * x2
        assert p.gradient() == [2 * x1 * x2, x1 ** 2]


class TestPsdCheck:
    def test_identity_is_psd(self):
        result = ldlt_psd_check(as_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
        assert result.psd and result.rank == 3

    def test_indefinite_witness(self):
        m = as_matrix([[1, 2], [2, 1]])
        result = ldlt_psd_check(m)
        assert not result.psd
        assert result.witness_value < 0
        assert result.witness_value == quadratic_form(m, result.witness)
        assert all(isinstance(v, Fraction) for v in result.witness)

    def test_all_ones_gram(self):
        # aI + b(J - I) with a = b = 1
        result = ldlt_psd_check(as_matrix([[1, 1, 1], [1, 1, 1], [1, 1, 1]]))
        assert result.psd and result.rank == 1

    def test_zero_diagonal_with_coupling(self):
        m = as_matrix([[0, 1], [1, 0]])
        result = ldlt_psd_check(m)
        assert not result.psd and result.witness_value < 0

    def test_factorization_reconstructs(self):
        m = as_matrix([[4, 2, 0], [2, 3, 1], [0, 1, 2]])
        result = ldlt_psd_check(m)
        assert result.psd
        permuted = m[np.ix_(result.pivots, result.pivots)]
        lower = result.lower
        d = np.empty((3, 3), dtype=object)
        d.fill(Fraction(0))
        for i, v in enumerate(result.diagonal):
            d[i, i] = v
        assert np.all(lower.dot(d).dot(lower.T) == permuted)

    def test_non_symmetric_rejected(self):
        with pytest.raises(PreconditionError):
            ldlt_psd_check(as_matrix([[1, 2], [0, 1]]))

    def test_agrees_with_eigenvalues(self, rng):
        for _ in range(200):
            a = as_matrix(random_rational_matrix(rng, 5, 3))
            b = as_matrix(random_rational_matrix(rng, 5, 5))
            m = a.dot(a.T) + (b + b.T) * Fraction(rng.choice([0, 0, 1]), 8)
            exact = ldlt_psd_check(m).psd
            numeric = sym_eigenvalues(m)[0] >= -1e-9
            assert exact == numeric


class TestEigenvalues:
    def test_diagonal(self):
        assert sym_eigenvalues(as_matrix([[1, 0, 0], [0, 2, 0], [0, 0, 3]])) == pytest.approx([1, 2, 3])

    def test_rank_one(self):
        assert sym_eigenvalues(np.ones((3, 3))) == pytest.approx([0, 0, 3], abs=1e-12)


class TestExactLinearAlgebra:
    def test_rank_and_nullspace(self):
        rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
        assert exact_rank(rows) == 2
        (v,) = exact_nullspace(rows)
        assert all(sum(Fraction(r) * x for r, x in zip(row, v)) == 0 for row in rows)

    def test_solve(self):
        particular, null = exact_solve([[1, 1], [1, -1]], [3, 1])
        assert list(particular) == [2, 1] and null == []

    def test_inconsistent(self):
        with pytest.raises(InconsistentSystemError):
            exact_solve([[1, 1], [1, 1]], [1, 2])

    def test_matrix_json(self):
        m = as_matrix([[Fraction(1, 2), 0], [0, 3]])
        assert matrix_to_json(m) == [["1/2", "0"], ["0", "3"]]
        assert is_exact_matrix(matrix_from_json(matrix_to_json(m)))


class TestMatrixPolynomial:
    def test_symmetry_enforced(self):
        z1, z2 = Polynomial.variables(2)
        with pytest.raises(PreconditionError):
            MatrixPolynomial([[z1, z2], [z1, z2]])

    def test_pair_and_evaluate(self):
        z1, z2 = Polynomial.variables(2)
        j = MatrixPolynomial([[Polynomial.constant(2, 2), z1], [z1, z1 ** 2 - 2 * z2]])
        assert j.pair(as_matrix([[1, 0], [0, 1]])) == 2 + z1 ** 2 - 2 * z2
        value = j.evaluate([1, 0])
        assert value[1, 1] == 1 and value[0, 1] == 1
        assert j.evaluate_many(np.array([[1.0, 0.0]]))[0] == pytest.approx(np.array([[2, 1], [1, 1]]))


class TestDeskSearch:
    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_full_grid_up_to_three_axes(self, dim):
        assert _points_per_axis(dim, Limits.GRID_POINTS) == Limits.GRID_POINTS

    @pytest.mark.parametrize("dim, expected", [(4, 16), (5, 9), (6, 6)])
    def test_grid_capped_beyond_three_axes(self, dim, expected):
        per_axis = _points_per_axis(dim, Limits.GRID_POINTS)
        assert per_axis == expected
        assert per_axis ** dim <= Limits.GRID_BUDGET

    def test_grid_floor(self):
        assert _points_per_axis(20, Limits.GRID_POINTS) == 3
        assert _points_per_axis(0, Limits.GRID_POINTS) == 1

    def test_sweep_size(self):
        pts = grid(np.full(4, -1.0), np.full(4, 1.0), _points_per_axis(4, Limits.GRID_POINTS))
        assert pts.shape == (16 ** 4, 4)

    def test_four_axis_minimum(self):
        search = DeskMinimizer(lambda pts: np.sum((pts - 0.3) ** 2, axis=1))
        found = search.minimize([-1.0] * 4, [1.0] * 4)
        assert found.value == pytest.approx(0, abs=1e-9)
        assert found.point == pytest.approx([0.3] * 4, abs=1e-4)
