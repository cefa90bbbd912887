from fractions import Fraction
from math import comb

import numpy as np
import pytest

from core.errors import NotInvariantError, PreconditionError
from core.polynomial import Polynomial, elementary_symmetric, power_sum
from modules.degree_principle import (compute_r, enumerate_partitions, minimize_all, sos_bounds,
                                      substitute_partition)
from modules.degree_principle.degree_principle import SubResult, _best


def ts(k):
    return Polynomial.variables(k)


def quartic(n):
    return power_sum(n, 4) - power_sum(n, 2)


class TestComputeR:
    def test_quartic(self):
        assert compute_r(quartic(3)) == 2

    def test_cubic_uses_floor_two(self):
        assert compute_r(power_sum(3, 3)) == 2

    def test_constraint_degree_dominates(self):
        assert compute_r(power_sum(2, 10), [power_sum(2, 7)]) == 7

    def test_not_symmetric(self, xs3):
        with pytest.raises(NotInvariantError):
            compute_r(xs3[0] ** 2 + xs3[1] ** 2)

    def test_constraint_not_symmetric(self, xs3):
        with pytest.raises(NotInvariantError):
            compute_r(power_sum(3, 2), [xs3[2]])


class TestPartitions:
    def test_exact_parts(self):
        assert enumerate_partitions(5, 2, "exact") == [(4, 1), (3, 2)]

    def test_at_most(self):
        assert enumerate_partitions(4, 2) == [(4,), (3, 1), (2, 2)]

    @pytest.mark.parametrize("n", range(5, 41))
    def test_two_part_count(self, n):
        assert len(enumerate_partitions(n, 2)) == n // 2 + 1

    def test_count_bound(self):
        for n in range(1, 13):
            for r in range(1, min(4, n) + 1):
                assert len(enumerate_partitions(n, r)) <= comb(n + r, r)

    def test_parts_non_increasing(self):
        for lam in enumerate_partitions(9, 4):
            assert list(lam) == sorted(lam, reverse=True)
            assert sum(lam) == 9

    def test_r_out_of_range(self):
        with pytest.raises(PreconditionError):
            enumerate_partitions(3, 4)
        with pytest.raises(PreconditionError):
            enumerate_partitions(3, 0)


class TestSubstitution:
    def test_sum_of_squares(self):
        t1, t2 = ts(2)
        assert substitute_partition(power_sum(3, 2), (2, 1)).objective == 2 * t1 ** 2 + t2 ** 2

    def test_e2(self):
        t1, t2 = ts(2)
        assert substitute_partition(elementary_symmetric(3, 2), (2, 1)).objective == t1 ** 2 + 2 * t1 * t2

    def test_constant(self):
        sub = substitute_partition(Polynomial.constant(5, 3), (3,))
        assert sub.objective.constant_term() == 5
        assert sub.objective.degree == 0

    def test_lift_agrees(self):
        f = quartic(4)
        sub = substitute_partition(f, (3, 1))
        t = [Fraction(1, 2), Fraction(-2)]
        assert sub.objective.evaluate(t) == f.evaluate(sub.lift(t))

    def test_constraints_substituted(self):
        sub = substitute_partition(power_sum(3, 1), (3,), [Polynomial.constant(1, 3) - power_sum(3, 2)])
        assert sub.constraints[0] == 1 - 3 * ts(1)[0] ** 2

    def test_wrong_total(self):
        with pytest.raises(PreconditionError):
            substitute_partition(quartic(4), (2, 1))

    def test_increasing_parts(self):
        with pytest.raises(PreconditionError):
            substitute_partition(quartic(3), (1, 2))


class TestMinimizeAll:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_quartic_minimum(self, n):
        found = minimize_all(quartic(n))
        assert found.value == pytest.approx(-n / 4, abs=1e-6)
        assert found.r == 2
        assert not found.unbounded

    def test_witness_reproduces_value(self):
        f = quartic(4)
        found = minimize_all(f)
        assert len(found.point) == 4
        assert len(set(found.point)) <= found.r
        value = float(f.evaluate_many(np.array([found.point]))[0])
        assert value == pytest.approx(found.value, abs=1e-9)

    def test_sum_of_squares(self):
        found = minimize_all(power_sum(3, 2))
        assert found.value == pytest.approx(0, abs=1e-12)
        assert found.point == pytest.approx([0, 0, 0], abs=1e-6)

    def test_never_above_samples(self, np_rng):
        f = quartic(5)
        found = minimize_all(f)
        samples = np_rng.uniform(-2, 2, size=(100, 5))
        assert np.all(found.value <= np.real(f.evaluate_many(samples)) + 1e-9)

    def test_constrained(self):
        g = Polynomial.constant(1, 3) - power_sum(3, 2)
        found = minimize_all(power_sum(3, 1), [g])
        assert found.value == pytest.approx(-3 ** 0.5, abs=1e-3)

    def test_boundary_flagged(self):
        found = minimize_all(power_sum(2, 1), box=5)
        assert found.value == pytest.approx(-10)
        assert found.boundary_hit

    def test_exact_mode(self):
        found = minimize_all(quartic(4), mode="exact")
        assert all(len(s.partition) == 2 for s in found.subresults)
        assert found.value == pytest.approx(-1, abs=1e-6)

    def test_workers_agree(self):
        serial = minimize_all(quartic(5))
        pooled = minimize_all(quartic(5), workers=3)
        assert pooled.value == serial.value
        assert pooled.partition == serial.partition

    def test_tied_partitions_pick_smallest(self):
        found = minimize_all(quartic(4))
        assert all(s.value == pytest.approx(-1, abs=1e-6) for s in found.subresults)
        assert found.partition == (2, 2)
        assert minimize_all(quartic(4)).partition == found.partition

    def test_search_noise_is_a_tie(self):
        results = [SubResult((4,), -1.0 - 1e-12, [0.7]), SubResult((3, 1), -1.0 - 2e-12, [0.7, 0.7]),
                   SubResult((2, 2), -1.0 + 1e-12, [0.7, -0.7])]
        assert _best(results, 1e-6).partition == (2, 2)

    def test_real_gap_beats_partition_order(self):
        results = [SubResult((4,), -1.1, [0.7]), SubResult((2, 2), -1.0, [0.7, -0.7]),
                   SubResult((3, 1), float("-inf"), None)]
        assert _best(results, 1e-6).partition == (4,)


class TestSosBounds:
    def test_quartic_bound(self):
        bounds = sos_bounds(quartic(3))
        assert set(bounds) == {(3,), (2, 1)}
        value = min(v for v, _ in bounds.values())
        assert -1 <= value <= Fraction(-3, 4)
