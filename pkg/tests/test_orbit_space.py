import random
from math import comb

import pytest

from core.errors import NotInvariantError, PreconditionError, UnsupportedError
from core.matrices import as_matrix
from core.polynomial import Polynomial, elementary_symmetric, power_sum
from modules.groups import DihedralGroup, ExplicitGroup, SymmetricGroup
from modules.invariant_ring import InvariantBasis
from modules.orbit_space import (HilbertMap, differential_gram, j_matrix, minimize, minimum_order,
                                 moment_relaxation_qk, reformulate, validate_samples)


def zs(m):
    return Polynomial.variables(m)


@pytest.fixture
def tau_map():
    """S₂ swapping X1, X2 and negating X3: not a reflection group, one relation among τ1..τ4."""
    x1, x2, x3 = Polynomial.variables(3)
    group = ExplicitGroup([as_matrix([[0, 1, 0], [1, 0, 0], [0, 0, -1]])])
    taus = [x1 + x2, x1 * x2, x3 ** 2, x3 * (x1 - x2)]
    t1, t2, t3, t4 = zs(4)
    return HilbertMap(InvariantBasis.custom(taus), group, [t1 ** 2 * t3 - 4 * t2 * t3 - t4 ** 2])


class TestJMatrix:
    def test_elementary_s2(self):
        z1, z2 = zs(2)
        j = j_matrix(HilbertMap.for_group(SymmetricGroup(2), "e"))
        assert j[0, 0] == Polynomial.constant(2, 2)
        assert j[0, 1] == z1
        assert j[1, 1] == z1 ** 2 - 2 * z2

    def test_power_sums_s2(self):
        z1, z2 = zs(2)
        j = j_matrix(HilbertMap.for_group(SymmetricGroup(2), "p"))
        assert j[0, 1] == 2 * z1
        assert j[1, 1] == 4 * z2

    def test_d4_plane(self):
        x, y = Polynomial.variables(2)
        hilbert = HilbertMap(InvariantBasis.custom([x ** 2 + y ** 2, x ** 2 * y ** 2]), DihedralGroup(4, "plane"))
        assert j_matrix(hilbert)[0, 0] == 4 * zs(2)[0]

    def test_d3_plane_euler_identity(self):
        j = j_matrix(HilbertMap.for_group(DihedralGroup(3, "plane")))
        z1, z2 = zs(2)
        assert j[0, 0] == 4 * z1
        assert j[0, 1] == 6 * z2

    @pytest.mark.parametrize("basis", ["e", "p"])
    def test_identity_after_substitution(self, basis):
        hilbert = HilbertMap.for_group(SymmetricGroup(3), basis)
        expanded = j_matrix(hilbert).substitute(hilbert.generators)
        gram = differential_gram(hilbert)
        assert all(expanded[i, j] == gram[i][j] for i in range(3) for j in range(3))

    def test_non_invariant_generator(self, s2):
        x1, x2 = Polynomial.variables(2)
        with pytest.raises(NotInvariantError):
            HilbertMap(InvariantBasis.custom([x1, x1 * x2]), s2)

    def test_no_builtin_generators(self, c4):
        with pytest.raises(UnsupportedError):
            HilbertMap.for_group(c4)


class TestNonReflectionAction:
    def test_relation_vanishes(self, tau_map):
        tau_map.verify_relations()

    def test_wrong_relation(self, tau_map):
        t1, t2, t3, _ = zs(4)
        tau_map.relations = [t1 ** 2 * t3 - t2 * t3]
        with pytest.raises(PreconditionError):
            tau_map.verify_relations()

    def test_j_entries(self, tau_map):
        t1, t2, t3, t4 = zs(4)
        j = j_matrix(tau_map)
        assert j[0, 1] == t1
        assert j[1, 3] == -t4
        assert j[2, 3] == 2 * t4
        assert j[3, 3] == t1 ** 2 - 4 * t2 + 2 * t3

    def test_samples_satisfy_relation(self, tau_map):
        x1, x2, x3 = Polynomial.variables(3)
        problem = reformulate(tau_map, x3 ** 2 + x1 ** 2 + x2 ** 2)
        assert validate_samples(problem, 50).ok

    def test_search_refuses_relations(self, tau_map):
        x1, x2, _ = Polynomial.variables(3)
        with pytest.raises(UnsupportedError):
            minimize(reformulate(tau_map, x1 + x2))


class TestReformulate:
    @pytest.fixture
    def motzkin_problem(self, motzkin):
        return reformulate(HilbertMap.for_group(SymmetricGroup(2), "e"), motzkin)

    def test_motzkin_objective(self, motzkin_problem):
        z1, z2 = zs(2)
        assert motzkin_problem.objective == z1 ** 2 * z2 ** 2 - 2 * z2 ** 3 - 3 * z2 ** 2 + 1

    def test_samples(self, motzkin_problem):
        check = validate_samples(motzkin_problem, rng=random.Random(7))
        assert check.count == 200
        assert check.ok

    def test_motzkin_minimum(self, motzkin_problem):
        found = minimize(motzkin_problem)
        assert found.value == pytest.approx(0, abs=1e-4)
        assert not found.unbounded

    def test_square_of_e1(self):
        problem = reformulate(HilbertMap.for_group(SymmetricGroup(2), "e"), elementary_symmetric(2, 1) ** 2)
        assert problem.objective == zs(2)[0] ** 2
        assert minimize(problem).value == pytest.approx(0, abs=1e-4)

    def test_constraint_rewritten(self):
        hilbert = HilbertMap.for_group(SymmetricGroup(3), "p")
        g = Polynomial.constant(1, 3) - power_sum(3, 2)
        problem = reformulate(hilbert, power_sum(3, 1), [g])
        assert problem.constraints[0] == 1 - zs(3)[1]
        assert validate_samples(problem, 30).ok

    def test_constrained_minimum(self):
        # min e1 on the unit disc of S₂ is -√2
        hilbert = HilbertMap.for_group(SymmetricGroup(2), "p")
        g = Polynomial.constant(1, 2) - power_sum(2, 2)
        found = minimize(reformulate(hilbert, power_sum(2, 1), [g]), box=3)
        assert found.value == pytest.approx(-2 ** 0.5, abs=1e-3)

    def test_not_invariant(self, xs3):
        with pytest.raises(NotInvariantError):
            reformulate(HilbertMap.for_group(SymmetricGroup(3)), xs3[0])


class TestMomentRelaxation:
    @pytest.fixture
    def motzkin_problem(self, motzkin):
        return reformulate(HilbertMap.for_group(SymmetricGroup(2), "e"), motzkin)

    def test_block_sizes(self, motzkin_problem):
        relaxation = moment_relaxation_qk(motzkin_problem, 2)
        assert relaxation.block_sizes == [comb(4, 2), 2 * comb(3, 2)]
        assert relaxation.offset == 1

    def test_order_too_small(self, motzkin_problem):
        assert minimum_order(motzkin_problem) == 2
        with pytest.raises(PreconditionError):
            moment_relaxation_qk(motzkin_problem, 1)

    def test_sdpa_shape(self, motzkin_problem):
        data = moment_relaxation_qk(motzkin_problem, 3).to_sdpa()
        assert data.num_constraints == comb(2 + 6, 6) - 1
        assert data.block_sizes == [comb(5, 3), 2 * comb(4, 2)]
        assert data.to_sdp_problem().dim == comb(5, 3) + 2 * comb(4, 2)

    def test_localizing_block(self):
        hilbert = HilbertMap.for_group(SymmetricGroup(2), "p")
        g = Polynomial.constant(1, 2) - power_sum(2, 2)
        relaxation = moment_relaxation_qk(reformulate(hilbert, power_sum(2, 1), [g]), 2)
        assert relaxation.block_sizes == [6, 3, 6]

    def test_moment_matrix_entries(self, motzkin_problem):
        relaxation = moment_relaxation_qk(motzkin_problem, 2)
        moment = relaxation.blocks[0]
        # y_(1,0) sits at rows (0,0)x(1,0) and (1,0)x(0,0) of the grlex basis 1, z2, z1, ...
        assert moment.matrices[(1, 0)][0, 2] == 1
        assert moment.matrices[(1, 0)][2, 0] == 1
        assert moment.matrices[(0, 0)][0, 0] == 1

    def test_relations_become_scalar_blocks(self, tau_map):
        x1, x2, x3 = Polynomial.variables(3)
        problem = reformulate(tau_map, x1 ** 2 + x2 ** 2 + x3 ** 2)
        relaxation = moment_relaxation_qk(problem, 2)
        relation_blocks = [b for b in relaxation.blocks if b.label.startswith("relation")]
        # one pair per monomial of degree ≤ 2k - 3 in four variables
        assert len(relation_blocks) == 2 * 5
        assert all(b.size == 1 for b in relation_blocks)
