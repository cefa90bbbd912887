"""Shared pytest fixtures."""

import random
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.polynomial import Polynomial  # noqa: E402
from modules.groups import CyclicGroup, DihedralGroup, SymmetricGroup  # noqa: E402


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def np_rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def s2():
    return SymmetricGroup(2)


@pytest.fixture
def s3():
    return SymmetricGroup(3)


@pytest.fixture
def c4():
    return CyclicGroup(4)


@pytest.fixture
def d3():
    return DihedralGroup(3)


@pytest.fixture
def xs3():
    return Polynomial.variables(3)


@pytest.fixture
def motzkin():
    x1, x2 = Polynomial.variables(2)
    return x1 ** 4 * x2 ** 2 + x1 ** 2 * x2 ** 4 - 3 * x1 ** 2 * x2 ** 2 + 1


def random_polynomial(rng: random.Random, num_vars: int, degree: int, terms: int = 5) -> Polynomial:
    """Random exact polynomial with small rational coefficients."""
    result = {}
    for _ in range(terms):
        exponent = [0] * num_vars
        for _ in range(rng.randint(0, degree)):
            exponent[rng.randrange(num_vars)] += 1
        result[tuple(exponent)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Polynomial(num_vars, result)


def random_rational_matrix(rng: random.Random, rows: int, cols: int, bound: int = 5):
    return [[Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]
