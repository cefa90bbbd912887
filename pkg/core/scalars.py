"""
Scalar conventions.

Exact values are fractions.Fraction (always reduced, positive denominator);
float values are Python float or complex. Mixing the two follows Python's
numeric tower, so exact op exact stays exact and exact op float becomes float.
"""

import cmath
import math
from fractions import Fraction
from numbers import Rational
from typing import Union

import numpy as np
import sympy

from core.config import Limits, Tolerances
from core.errors import PreconditionError

Scalar = Union[Fraction, float, complex]


def to_scalar(value) -> Scalar:
    """
    Normalize ints, Fractions, sympy rationals, floats, complex numbers and
    "num/den" strings into the library's scalar types.

    :param value: Any supported numeric value
    :return: Fraction, float or complex
    :raises PreconditionError: On unsupported input
    """
    if isinstance(value, bool):
        raise PreconditionError(f"Boolean is not a scalar: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, np.complexfloating):
        value = complex(value)
    if isinstance(value, complex):
        return value.real if value.imag == 0 else value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, sympy.Expr) and value.is_number:
        c = complex(value)
        return c.real if c.imag == 0 else c
    try:
        c = complex(value)
    except (TypeError, ValueError):
        raise PreconditionError(f"Unsupported scalar: {value!r}")
    return c.real if c.imag == 0 else c


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def is_zero(value, tol: float = 0.0) -> bool:
    if is_exact(value):
        return value == 0
    return abs(value) <= tol


def conj(value):
    return value.conjugate() if isinstance(value, complex) else value


def to_sympy(value):
    """Fraction -> sympy.Rational; floats pass through sympy.Float / complex."""
    value = to_scalar(value)
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, complex):
        return sympy.Float(value.real) + sympy.I * sympy.Float(value.imag)
    return sympy.Float(value)


def rationalize(value, max_denominator: int = Limits.DENOMINATOR_CAP,
                tol: float = Tolerances.FLOAT) -> Scalar:
    """
    Continued-fraction rounding of a float. Returns the Fraction when it lies
    within tol of the input, otherwise the input unchanged.

    :param value: Scalar to round
    :param max_denominator: Denominator cap
    :param tol: Acceptance distance
    :return: Fraction or the original float/complex
    """
    if is_exact(value):
        return Fraction(value)
    if isinstance(value, complex):
        if abs(value.imag) > tol:
            return value
        value = value.real
    candidate = Fraction(value).limit_denominator(max_denominator)
    if abs(float(candidate) - value) <= tol:
        return candidate
    return value


def format_scalar(value):
    """
    JSON encoding: exact -> "num/den" (or "num"), float/complex -> [re, im].
    """
    value = to_scalar(value)
    if isinstance(value, Fraction):
        return str(value)
    c = complex(value)
    return [c.real, c.imag]


def parse_scalar(obj) -> Scalar:
    """
    Inverse of format_scalar. Bare JSON integers are read as exact,
    bare JSON floats as float.
    """
    if isinstance(obj, (list, tuple)):
        if len(obj) != 2:
            raise PreconditionError(f"Complex scalar must be [re, im], got {obj!r}")
        re_part, im_part = float(obj[0]), float(obj[1])
        return re_part if im_part == 0.0 else complex(re_part, im_part)
    return to_scalar(obj)


def root_of_unity(k: int, n: int) -> Scalar:
    """
    e^{2πik/n}, snapped to an exact value when it is one of ±1, ±i.
    """
    k %= n
    if (4 * k) % n == 0:
        quarter = (4 * k) // n
        return [Fraction(1), 1j, Fraction(-1), -1j][quarter]
    return cmath.exp(2j * math.pi * k / n)


def cos_2pi(k: int, n: int) -> Scalar:
    """
    cos(2πk/n) exactly when rational (angles that are multiples of π/3 or π/2), float otherwise.
    """
    k %= n
    if (4 * k) % n == 0:
        return [Fraction(1), Fraction(0), Fraction(-1), Fraction(0)][(4 * k) // n]
    if (6 * k) % n == 0:
        return [Fraction(1), Fraction(1, 2), Fraction(-1, 2), Fraction(-1), Fraction(-1, 2), Fraction(1, 2)][(6 * k) // n]
    return math.cos(2 * math.pi * k / n)


def sin_2pi(k: int, n: int) -> Scalar:
    """sin(2πk/n), exact for multiples of π/2, float otherwise."""
    k %= n
    if (4 * k) % n == 0:
        return [Fraction(0), Fraction(1), Fraction(0), Fraction(-1)][(4 * k) // n]
    return math.sin(2 * math.pi * k / n)
