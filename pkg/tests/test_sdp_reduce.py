import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_rational_matrix
from core.core_report import Status
from core.errors import NotInvariantError, PreconditionError, SdpaFormatError, UnsupportedError
from core.matrices import as_matrix, identity, matrices_equal
from modules.groups import CyclicGroup, SymmetricGroup
from modules.sdp_reduce import (LPProblem, SDPProblem, SdpaData, average_invariant, cycle_edges, export_sdpa,
                                independence_number, parse_sdpa, reduce_sdp, simplex_solve, solve_theta,
                                theta_closed_form, theta_cyclic_lp, theta_sdp)


def complete_edges(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def body_lines(text):
    return [line for line in text.splitlines() if line and line[0] not in "*\""]


class TestSimplex:
    def test_bounded_variable(self):
        # max x subject to x + s = 1
        result = simplex_solve(LPProblem([1, 0], [[1, 1]], [1]))
        assert result.status == Status.OPTIMAL
        assert result.value == 1
        assert result.solution == [1, 0]

    def test_infeasible_pair(self):
        # x - s1 = 1 and x + s2 = 0
        result = simplex_solve(LPProblem([1, 0, 0], [[1, -1, 0], [1, 0, 1]], [1, 0]))
        assert result.status == Status.INFEASIBLE
        assert result.value is None

    def test_unbounded(self):
        result = simplex_solve(LPProblem([1, 0], [[1, -1]], [0]))
        assert result.status == Status.UNBOUNDED

    def test_redundant_rows(self):
        result = simplex_solve(LPProblem([1, 1], [[1, 1], [2, 2]], [1, 2]))
        assert result.status == Status.OPTIMAL
        assert result.value == 1

    def test_width_mismatch(self):
        with pytest.raises(PreconditionError):
            LPProblem([1, 0], [[1]], [1])


class TestThetaLP:
    def test_c4_exact(self):
        result = simplex_solve(theta_cyclic_lp(4))
        assert result.status == Status.OPTIMAL
        assert result.value == 2
        assert result.solution == [Fraction(1, 2), 0, Fraction(1, 2)]

    def test_c5(self):
        assert simplex_solve(theta_cyclic_lp(5)).value == pytest.approx(math.sqrt(5), abs=1e-6)

    def test_c7(self):
        assert simplex_solve(theta_cyclic_lp(7)).value == pytest.approx(3.3176989, abs=1e-6)

    def test_c10(self):
        assert float(simplex_solve(theta_cyclic_lp(10)).value) == pytest.approx(5, abs=1e-9)

    @pytest.mark.parametrize("k", range(3, 17))
    def test_closed_form(self, k):
        assert float(simplex_solve(theta_cyclic_lp(k)).value) == pytest.approx(float(theta_closed_form(k)), abs=1e-6)

    def test_too_small(self):
        with pytest.raises(PreconditionError):
            theta_cyclic_lp(2)


class TestThetaModel:
    def test_c4_reduces_to_three_variables(self):
        reduced = reduce_sdp(theta_sdp(cycle_edges(4), 4))
        assert reduced.block_sizes == [1, 1, 1]
        assert reduced.is_lp
        assert len(reduced.constraints) == 2

    def test_c4_value_and_reconstruction(self):
        solution = solve_theta(cycle_edges(4), 4)
        assert solution.status == Status.OPTIMAL
        assert solution.value == 2
        sdp = solution.reduced.source
        assert sdp.is_feasible(solution.matrix)
        assert sdp.objective_value(solution.matrix) == 2

    def test_c10(self):
        solution = solve_theta(cycle_edges(10), 10)
        assert float(solution.value) == pytest.approx(5, abs=1e-7)
        assert solution.reduced.source.is_feasible(solution.matrix, tol=1e-7)

    def test_complete_graph(self):
        assert float(solve_theta(complete_edges(3), 3).value) == pytest.approx(1, abs=1e-9)

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_empty_graph(self, n):
        assert float(solve_theta([], n).value) == pytest.approx(n, abs=1e-9)

    @pytest.mark.parametrize("k", range(3, 13))
    def test_cycles_match_closed_form(self, k):
        assert float(solve_theta(cycle_edges(k), k).value) == pytest.approx(float(theta_closed_form(k)), abs=1e-6)

    def test_self_loop(self):
        with pytest.raises(PreconditionError):
            theta_sdp([(0, 0)], 3)

    def test_path_is_not_circulant(self):
        sdp = theta_sdp([(0, 1), (1, 2)], 3)
        assert sdp.group is None
        assert reduce_sdp(sdp).block_sizes == [3]
        with pytest.raises(UnsupportedError):
            solve_theta([(0, 1), (1, 2)], 3)


class TestIndependence:
    @pytest.mark.parametrize("k", range(3, 17))
    def test_sandwich(self, k):
        alpha = independence_number(cycle_edges(k), k)
        assert alpha == k // 2
        assert alpha <= float(theta_closed_form(k)) + 1e-9

    def test_complete(self):
        assert independence_number(complete_edges(5), 5) == 1

    def test_empty(self):
        assert independence_number([], 4) == 4


class TestReduction:
    def test_trivial_group_keeps_one_block(self, rng):
        a = as_matrix(random_rational_matrix(rng, 3, 3))
        c = a + a.T
        sdp = SDPProblem(c, [(identity(3), 1)], "max")
        reduced = reduce_sdp(sdp)
        assert reduced.block_sizes == [3]
        assert matrices_equal(as_matrix(reduced.objective_blocks[0]), c)

    def test_not_invariant(self):
        objective = as_matrix([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
        sdp = SDPProblem(objective, [(identity(4), 1)], "max", CyclicGroup(4))
        with pytest.raises(NotInvariantError) as info:
            reduce_sdp(sdp)
        assert info.value.generator == "g^1"

    def test_constraint_set_not_invariant(self):
        a = as_matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        sdp = SDPProblem(identity(3), [(a, 1)], "min", SymmetricGroup(3))
        with pytest.raises(NotInvariantError) as info:
            reduce_sdp(sdp)
        assert info.value.item == 0

    def test_min_identity_objective(self):
        # min <C, X> with trace X = 1 equals the smallest eigenvalue of C
        c = as_matrix([[1, 2], [2, 1]])
        sdp = SDPProblem(c, [(identity(2), 1)], "min", SymmetricGroup(2))
        reduced = reduce_sdp(sdp)
        assert reduced.block_sizes == [1, 1]
        result, x = reduced.solve_lp()
        assert float(result.value) == pytest.approx(-1, abs=1e-9)
        assert float(sdp.objective_value(x)) == pytest.approx(-1, abs=1e-9)
        assert sdp.is_feasible(x)

    def test_reduced_lp_value_matches_cyclic_lp(self):
        for k in (5, 6, 9):
            reduced = reduce_sdp(theta_sdp(cycle_edges(k), k))
            result, _ = reduced.solve_lp()
            assert float(result.value) == pytest.approx(float(simplex_solve(theta_cyclic_lp(k)).value), abs=1e-7)


class TestAveraging:
    def test_invariant_matrix_unchanged(self):
        sdp = theta_sdp(cycle_edges(4), 4)
        x = as_matrix([[1, 2, 3, 2], [2, 1, 2, 3], [3, 2, 1, 2], [2, 3, 2, 1]])
        assert matrices_equal(average_invariant(sdp, x), x)

    def test_c4_average_is_circulant(self, rng):
        sdp = theta_sdp(cycle_edges(4), 4)
        a = as_matrix(random_rational_matrix(rng, 4, 4))
        averaged = average_invariant(sdp, a + a.T)
        for i in range(4):
            for j in range(4):
                assert averaged[i, j] == averaged[0, (j - i) % 4]

    def test_objective_preserved(self, rng):
        sdp = theta_sdp(cycle_edges(5), 5)
        a = as_matrix(random_rational_matrix(rng, 5, 5))
        x = a + a.T
        assert sdp.objective_value(average_invariant(sdp, x)) == sdp.objective_value(x)
        assert np.trace(average_invariant(sdp, x)) == np.trace(x)

    def test_needs_group(self):
        sdp = SDPProblem(identity(2), [(identity(2), 1)])
        with pytest.raises(PreconditionError):
            average_invariant(sdp, identity(2))


class TestSdpa:
    def test_smallest_instance(self):
        sdp = SDPProblem([[1]], [([[1]], 1)], "min", name="tiny")
        text = SdpaData.from_problem(sdp).render()
        lines = body_lines(text)
        assert lines == ["1", "1", "-1", "1", "0 1 1 1 -1", "1 1 1 1 1"]
        assert text.startswith("* symred sense=min")

    def test_reduced_theta_c4(self):
        data = export_sdpa(reduce_sdp(theta_sdp(cycle_edges(4), 4)))
        lines = body_lines(data.render())
        assert lines[2] == "-3"
        assert lines[3] == "1 0"

    @pytest.mark.parametrize("k", [4, 5])
    def test_reexport_is_byte_identical(self, k, tmp_path):
        target = tmp_path / "theta.dat-s"
        export_sdpa(reduce_sdp(theta_sdp(cycle_edges(k), k)), str(target))
        text = target.read_text(encoding="utf-8")
        assert parse_sdpa(text).render() == text

    def test_parsed_problem_equals_source(self):
        sdp = SDPProblem(as_matrix([[2, 1], [1, 3]]), [(identity(2), 1), (as_matrix([[0, 1], [1, 0]]), 0)],
                         "min", name="pair")
        restored = parse_sdpa(SdpaData.from_problem(sdp).render()).to_sdp_problem()
        assert restored.sense == "min"
        assert restored.name == "pair"
        assert matrices_equal(restored.objective, sdp.objective)
        for (a, b), (c, d) in zip(restored.constraints, sdp.constraints):
            assert matrices_equal(a, c) and b == d

    def test_braces_and_commas(self):
        text = "\"plain SDPA\n1\n1\n{2}\n{1}\n0 1 1 1 1\n0 1 2 2 1\n1 1 1 1 1\n1 1 2 2 1\n"
        data = parse_sdpa(text)
        assert data.block_sizes == [2]
        assert data.sense == "max"
        assert len(data.entries) == 4

    @pytest.mark.parametrize("text", ["1\n1\n", "1\n1\n2\n1\n0 1 3 3 1\n", "1\n1\n2\n1\n0 1 1\n", "1\n1\nx\n1\n"])
    def test_malformed(self, text):
        with pytest.raises(SdpaFormatError):
            parse_sdpa(text)
