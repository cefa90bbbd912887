"""
Signomials f(x) = Σ c_α e^{⟨α,x⟩} with rational exponent vectors α.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from core.errors import DimensionMismatchError, PreconditionError
from core.scalars import Scalar, format_scalar, parse_scalar, to_scalar

Exponent = Tuple[Fraction, ...]


def as_exponent(values: Iterable) -> Exponent:
    out = []
    for v in values:
        v = to_scalar(v)
        if not isinstance(v, Fraction):
            raise PreconditionError(f"Signomial exponents must be rational, got {v!r}")
        out.append(v)
    return tuple(out)


def format_exponent(alpha: Exponent) -> str:
    return "(" + ",".join(str(a) for a in alpha) + ")"


def act(matrix: np.ndarray, alpha: Exponent) -> Exponent:
    """M·α for an exact group matrix M."""
    return tuple(sum((matrix[i, j] * alpha[j] for j in range(len(alpha))), Fraction(0))
                 for i in range(matrix.shape[0]))


class Signomial:
    """
    Finite sum of exponentials. Zero coefficients are dropped, exponents are unique.
    """

    def __init__(self, num_vars: int, terms: Dict[Exponent, Scalar] = None):
        self.num_vars = num_vars
        self._terms: Dict[Exponent, Scalar] = {}
        for alpha, c in (terms or {}).items():
            alpha = as_exponent(alpha)
            if len(alpha) != num_vars:
                raise DimensionMismatchError(f"Exponent {format_exponent(alpha)} has {len(alpha)} entries, "
                                             f"expected {num_vars}")
            c = to_scalar(c)
            if c != 0:
                self._terms[alpha] = c

    @classmethod
    def from_pairs(cls, exponents: Sequence[Sequence], coeffs: Sequence) -> "Signomial":
        """
        :raises PreconditionError: On repeated exponents or mismatched lengths
        """
        if len(exponents) != len(coeffs):
            raise DimensionMismatchError(f"{len(exponents)} exponents but {len(coeffs)} coefficients")
        if not exponents:
            raise PreconditionError("A signomial needs at least one term")
        keys = [as_exponent(e) for e in exponents]
        if len(set(keys)) != len(keys):
            raise PreconditionError("Signomial exponents must be pairwise distinct")
        return cls(len(keys[0]), dict(zip(keys, coeffs)))

    @classmethod
    def from_json(cls, data: dict) -> "Signomial":
        """{"exponents": [[...], ...], "coeffs": [...]}, optionally wrapped as {"signomial": {...}}."""
        if "signomial" in data:
            data = data["signomial"]
        try:
            exponents, coeffs = data["exponents"], data["coeffs"]
        except KeyError as e:
            raise PreconditionError(f"Signomial JSON is missing {e}")
        return cls.from_pairs(exponents, [parse_scalar(c) for c in coeffs])

    def to_json(self) -> dict:
        keys = self.exponents()
        return {"exponents": [[str(a) for a in alpha] for alpha in keys],
                "coeffs": [format_scalar(self._terms[alpha]) for alpha in keys]}

    @property
    def terms(self) -> Dict[Exponent, Scalar]:
        return dict(self._terms)

    def exponents(self) -> List[Exponent]:
        return sorted(self._terms, reverse=True)

    def coefficient(self, alpha: Exponent) -> Scalar:
        return self._terms.get(tuple(alpha), Fraction(0))

    def positive_support(self) -> List[Exponent]:
        return [a for a in self.exponents() if self._terms[a] > 0]

    def negative_support(self) -> List[Exponent]:
        return [a for a in self.exponents() if self._terms[a] < 0]

    def shift(self, value: Scalar) -> "Signomial":
        """f - value."""
        zero = tuple([Fraction(0)] * self.num_vars)
        terms = dict(self._terms)
        terms[zero] = terms.get(zero, Fraction(0)) - to_scalar(value)
        return Signomial(self.num_vars, terms)

    def scaled(self, factor: Scalar) -> "Signomial":
        return Signomial(self.num_vars, {a: c * to_scalar(factor) for a, c in self._terms.items()})

    def transformed(self, matrix: np.ndarray) -> "Signomial":
        """Apply α ↦ Mα to every exponent."""
        return Signomial(self.num_vars, {act(matrix, a): c for a, c in self._terms.items()})

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != self.num_vars:
            raise DimensionMismatchError(f"Points of shape {points.shape} for {self.num_vars} variables")
        keys = list(self._terms)
        if not keys:
            return np.zeros(points.shape[0])
        exps = np.array([[float(a) for a in alpha] for alpha in keys])
        coeffs = np.array([float(self._terms[a]) for a in keys])
        return np.exp(points @ exps.T) @ coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, Signomial) and self.num_vars == other.num_vars and self._terms == other._terms

    def __repr__(self) -> str:
        return f"Signomial({self.format()})"

    def format(self, names: Sequence[str] = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.num_vars)]
        parts = []
        for alpha in self.exponents():
            inner = "+".join(f"{a}*{n}" if a != 1 else n for a, n in zip(alpha, names) if a != 0)
            parts.append(f"{self._terms[alpha]}" + (f"*e^({inner})" if inner else ""))
        return " + ".join(parts).replace("+ -", "- ") or "0"
