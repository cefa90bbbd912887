"""
Sparse multivariate polynomials over exact rationals or complex floats.

Terms are stored as a map exponent-tuple -> coefficient with no zero coefficients.
Monomials are compared in graded lexicographic order, X1 > X2 > ... > Xn.
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.config import Limits, Tolerances
from core.errors import DimensionMismatchError, PreconditionError
from core.scalars import Scalar, format_scalar, is_exact, parse_scalar, rationalize, to_scalar

logger = logging.getLogger("Algebra")

Exponent = Tuple[int, ...]


def grlex_key(exponent: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sort key for graded lexicographic order (larger key = larger monomial)."""
    return sum(exponent), tuple(exponent)


def monomials_of_degree(num_vars: int, degree: int) -> List[Exponent]:
    """
    All exponent vectors of total degree `degree`, ascending in graded lex order.
    """
    if degree < 0:
        return []
    result = []
    for cut in itertools.combinations_with_replacement(range(num_vars), degree):
        exponent = [0] * num_vars
        for index in cut:
            exponent[index] += 1
        result.append(tuple(exponent))
    return sorted(set(result), key=grlex_key)


def monomials_up_to(num_vars: int, degree: int) -> List[Exponent]:
    """All exponent vectors of degree ≤ `degree`, ascending in graded lex order."""
    result = []
    for d in range(degree + 1):
        result.extend(monomials_of_degree(num_vars, d))
    return result


def _is_exact_zero(value) -> bool:
    return value == 0


class Polynomial:
    """
    Immutable sparse polynomial in `num_vars` variables.
    """

    __slots__ = ("num_vars", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Optional[Mapping[Sequence[int], object]] = None):
        """
        :param num_vars: Number of variables
        :param terms: Mapping exponent -> coefficient (zero coefficients are dropped)
        :raises PreconditionError: If an exponent has the wrong length or a negative entry
        """
        if num_vars < 0:
            raise PreconditionError(f"Negative variable count: {num_vars}")
        self.num_vars = num_vars
        clean: Dict[Exponent, Scalar] = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != num_vars:
                raise PreconditionError(f"Exponent {exponent} does not have {num_vars} entries")
            if any(e < 0 for e in exponent):
                raise PreconditionError(f"Negative exponent in {exponent}")
            coeff = to_scalar(coeff)
            if exponent in clean:
                coeff = clean[exponent] + coeff
            if _is_exact_zero(coeff):
                clean.pop(exponent, None)
            else:
                clean[exponent] = coeff
        self._terms = clean
        self._hash = None

    # --- constructors ---
    @classmethod
    def zero(cls, num_vars: int) -> "Polynomial":
        return cls(num_vars)

    @classmethod
    def constant(cls, value, num_vars: int) -> "Polynomial":
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def variable(cls, index: int, num_vars: int) -> "Polynomial":
        """The variable X_{index+1} (0-based index)."""
        if not 0 <= index < num_vars:
            raise PreconditionError(f"Variable index {index} out of range for {num_vars} variables")
        exponent = [0] * num_vars
        exponent[index] = 1
        return cls(num_vars, {tuple(exponent): 1})

    @classmethod
    def variables(cls, num_vars: int) -> List["Polynomial"]:
        return [cls.variable(i, num_vars) for i in range(num_vars)]

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def _raw(cls, num_vars: int, terms: Dict[Exponent, Scalar]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly.num_vars = num_vars
        poly._terms = terms
        poly._hash = None
        return poly

    # --- inspection ---
    @property
    def terms(self) -> Dict[Exponent, Scalar]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Exponent, Scalar]]:
        """Terms sorted from the leading (largest) monomial down."""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def support(self) -> List[Exponent]:
        return [e for e, _ in self.items()]

    def coefficient(self, exponent: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(exponent), Fraction(0))

    def constant_term(self) -> Scalar:
        return self.coefficient((0,) * self.num_vars)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self._terms.values())

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def leading_exponent(self) -> Exponent:
        if not self._terms:
            raise PreconditionError("Zero polynomial has no leading term")
        return max(self._terms, key=grlex_key)

    def leading_coefficient(self) -> Scalar:
        return self._terms[self.leading_exponent()]

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._raw(self.num_vars, {e: c for e, c in self._terms.items() if sum(e) == degree})

    # --- arithmetic ---
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.num_vars != self.num_vars:
                raise DimensionMismatchError(
                    f"Variable-count mismatch: {self.num_vars} vs {other.num_vars}")
            return other
        return Polynomial.constant(other, self.num_vars)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        terms = dict(self._terms)
        for exponent, coeff in other._terms.items():
            value = terms.get(exponent, 0) + coeff
            if _is_exact_zero(value):
                terms.pop(exponent, None)
            else:
                terms[exponent] = value
        return Polynomial._raw(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.num_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                scalar = to_scalar(other)
            except PreconditionError:
                return NotImplemented
            if _is_exact_zero(scalar):
                return Polynomial.zero(self.num_vars)
            return Polynomial._raw(self.num_vars, {e: c * scalar for e, c in self._terms.items()})
        other = self._coerce(other)
        terms: Dict[Exponent, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                value = terms.get(exponent, 0) + c1 * c2
                if _is_exact_zero(value):
                    terms.pop(exponent, None)
                else:
                    terms[exponent] = value
        return Polynomial._raw(self.num_vars, terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Polynomial":
        scalar = to_scalar(scalar)
        if _is_exact_zero(scalar):
            raise ZeroDivisionError("Polynomial division by zero scalar")
        if is_exact(scalar):
            return self * (Fraction(1) / scalar)
        return Polynomial._raw(self.num_vars, {e: c / scalar for e, c in self._terms.items()})

    def __pow__(self, power: int) -> "Polynomial":
        if not isinstance(power, int) or power < 0:
            raise PreconditionError(f"Only non-negative integer powers are supported, got {power!r}")
        result = Polynomial.constant(1, self.num_vars)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.num_vars == other.num_vars and self._terms == other._terms
        try:
            return self._terms == Polynomial.constant(other, self.num_vars)._terms
        except PreconditionError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    def is_close(self, other, tol: float = Tolerances.FLOAT) -> bool:
        """Coefficient-wise comparison within tol (for float pipelines)."""
        other = self._coerce(other)
        keys = set(self._terms) | set(other._terms)
        return all(abs(complex(self.coefficient(e)) - complex(other.coefficient(e))) <= tol for e in keys)

    # --- evaluation and composition ---
    def evaluate(self, point: Sequence) -> Scalar:
        """
        Evaluate at a point. Exact inputs give an exact result.

        :param point: Sequence of num_vars scalars
        :return: Scalar value
        :raises DimensionMismatchError: If the point has the wrong length
        """
        if len(point) != self.num_vars:
            raise DimensionMismatchError(f"Point of length {len(point)} for {self.num_vars} variables")
        values = [to_scalar(x) for x in point]
        total = Fraction(0)
        for exponent, coeff in self._terms.items():
            term = coeff
            for x, e in zip(values, exponent):
                if e:
                    term = term * x ** e
            total = total + term
        return total

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """
        Float evaluation at many points at once.

        :param points: Array of shape (k, num_vars)
        :return: Array of shape (k,)
        """
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != self.num_vars:
            raise DimensionMismatchError(f"Points of shape {points.shape} for {self.num_vars} variables")
        has_complex = any(isinstance(c, complex) for c in self._terms.values())
        out = np.zeros(points.shape[0], dtype=complex if has_complex else float)
        for exponent, coeff in self._terms.items():
            column = np.full(points.shape[0], complex(coeff) if has_complex else float(coeff))
            for index, e in enumerate(exponent):
                if e:
                    column = column * points[:, index] ** e
            out += column
        return out

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """
        Compose: replace X_i by images[i]. All images share one variable count.

        :param images: One polynomial per variable
        :return: Polynomial in the images' variables
        """
        if len(images) != self.num_vars:
            raise DimensionMismatchError(f"{len(images)} images for {self.num_vars} variables")
        if not images:
            return Polynomial.constant(self.constant_term(), 0)
        target_vars = images[0].num_vars
        if any(img.num_vars != target_vars for img in images):
            raise DimensionMismatchError("Substitution images have different variable counts")
        power_cache: Dict[Tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = images[i] ** e
            return power_cache[key]

        result = Polynomial.zero(target_vars)
        for exponent, coeff in self._terms.items():
            term = Polynomial.constant(coeff, target_vars)
            for i, e in enumerate(exponent):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def permute(self, perm: Sequence[int]) -> "Polynomial":
        """
        Apply X_i -> X_{perm[i]} (0-based permutation).
        """
        if len(perm) != self.num_vars:
            raise DimensionMismatchError(f"Permutation of length {len(perm)} for {self.num_vars} variables")
        terms = {}
        for exponent, coeff in self._terms.items():
            image = [0] * self.num_vars
            for i, e in enumerate(exponent):
                image[perm[i]] = e
            terms[tuple(image)] = coeff
        return Polynomial._raw(self.num_vars, terms)

    def linear_transform(self, matrix) -> "Polynomial":
        """
        Apply X_i -> Σ_j matrix[j][i] X_j, i.e. f -> f ∘ matrixᵀ.

        :param matrix: Square array-like of scalars, size num_vars
        """
        m = np.asarray(matrix, dtype=object)
        if m.shape != (self.num_vars, self.num_vars):
            raise DimensionMismatchError(f"Matrix of shape {m.shape} for {self.num_vars} variables")
        xs = Polynomial.variables(self.num_vars)
        images = []
        for i in range(self.num_vars):
            image = Polynomial.zero(self.num_vars)
            for j in range(self.num_vars):
                entry = to_scalar(m[j, i])
                if not _is_exact_zero(entry):
                    image = image + xs[j] * entry
            images.append(image)
        return self.substitute(images)

    def derivative(self, index: int) -> "Polynomial":
        terms = {}
        for exponent, coeff in self._terms.items():
            e = exponent[index]
            if e:
                lowered = list(exponent)
                lowered[index] -= 1
                terms[tuple(lowered)] = coeff * e
        return Polynomial._raw(self.num_vars, terms)

    def gradient(self) -> List["Polynomial"]:
        return [self.derivative(i) for i in range(self.num_vars)]

    def divide(self, divisor: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        """
        Multivariate division by a single divisor using graded lex leading terms.

        :return: (quotient, remainder) with self = quotient * divisor + remainder
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("Division by the zero polynomial")
        lead_e = divisor.leading_exponent()
        lead_c = divisor.leading_coefficient()
        quotient = Polynomial.zero(self.num_vars)
        remainder = Polynomial.zero(self.num_vars)
        rest = self
        steps = 0
        while not rest.is_zero():
            steps += 1
            if steps > Limits.REWRITE_STEPS:
                raise PreconditionError("Polynomial division did not terminate")
            e = rest.leading_exponent()
            c = rest._terms[e]
            if all(a >= b for a, b in zip(e, lead_e)):
                factor = Polynomial.monomial(tuple(a - b for a, b in zip(e, lead_e)), c / lead_c)
                quotient = quotient + factor
                rest = rest - factor * divisor
            else:
                lead = Polynomial.monomial(e, c)
                remainder = remainder + lead
                rest = rest - lead
        return quotient, remainder

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial":
        """
        Exact division; raises if the divisor does not divide self.
        """
        quotient, remainder = self.divide(divisor)
        if not remainder.is_zero():
            raise PreconditionError(f"Division is not exact, remainder {remainder}")
        return quotient

    # --- coefficient maintenance ---
    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self.num_vars, {e: fn(c) for e, c in self._terms.items()})

    def chop(self, tol: float = Tolerances.FLOAT) -> "Polynomial":
        """Drop float coefficients below tol; purely real complex values become float."""
        terms = {}
        for e, c in self._terms.items():
            if is_exact(c):
                terms[e] = c
                continue
            if abs(c) <= tol:
                continue
            if isinstance(c, complex) and abs(c.imag) <= tol:
                c = c.real
            terms[e] = c
        return Polynomial._raw(self.num_vars, terms)

    def rationalized(self, max_denominator: int = Limits.DENOMINATOR_CAP,
                     tol: float = Tolerances.FLOAT) -> "Polynomial":
        """
        Round float coefficients to nearby rationals (continued fractions, capped denominator).
        Coefficients that do not round within tol are kept as floats.
        """
        chopped = self.chop(tol)
        return Polynomial(self.num_vars, {e: rationalize(c, max_denominator, tol) for e, c in chopped._terms.items()})

    # --- serialization ---
    def to_json(self) -> dict:
        return {
            "vars": self.num_vars,
            "terms": [{"c": format_scalar(c), "e": list(e)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Polynomial":
        """
        :param data: {"vars": n, "terms": [{"c": "num/den" | [re, im], "e": [...]}]}
        :raises PreconditionError: On malformed input
        """
        try:
            num_vars = int(data["vars"])
            terms: Dict[Exponent, Scalar] = {}
            for term in data["terms"]:
                exponent = tuple(int(e) for e in term["e"])
                terms[exponent] = terms.get(exponent, Fraction(0)) + parse_scalar(term["c"])
        except (KeyError, TypeError) as e:
            raise PreconditionError(f"Malformed polynomial JSON: {e}")
        return cls(num_vars, terms)

    def format(self, names: Optional[Sequence[str]] = None, prefix: str = "X") -> str:
        """
        Human readable form, leading term first, e.g. "X1^2*X2 - 3/2*X3 + 1".
        """
        if names is None:
            names = [f"{prefix}{i + 1}" for i in range(self.num_vars)]
        if not self._terms:
            return "0"
        pieces = []
        for exponent, coeff in self.items():
            factors = [f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(exponent) if e]
            monomial = "*".join(factors)
            if is_exact(coeff):
                sign = "-" if coeff < 0 else "+"
                magnitude = abs(coeff)
                if monomial and magnitude == 1:
                    body = monomial
                else:
                    body = f"{magnitude}*{monomial}" if monomial else f"{magnitude}"
            else:
                real_negative = not isinstance(coeff, complex) and coeff < 0
                sign = "-" if real_negative else "+"
                magnitude = -coeff if real_negative else coeff
                body = f"{magnitude:g}*{monomial}" if monomial else f"{magnitude:g}"
                if isinstance(coeff, complex):
                    body = f"({coeff.real:g}{coeff.imag:+g}j)" + (f"*{monomial}" if monomial else "")
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({self.format()})"

    __str__ = format


def elementary_symmetric(num_vars: int, k: int) -> Polynomial:
    """e_k(X_1..X_n); e_0 = 1, e_k = 0 for k > n."""
    if k < 0:
        raise PreconditionError(f"Negative index {k}")
    terms = {}
    for combo in itertools.combinations(range(num_vars), k):
        exponent = [0] * num_vars
        for i in combo:
            exponent[i] = 1
        terms[tuple(exponent)] = 1
    return Polynomial(num_vars, terms)


def power_sum(num_vars: int, k: int) -> Polynomial:
    """p_k = X_1^k + ... + X_n^k; p_0 = n."""
    if k < 0:
        raise PreconditionError(f"Negative index {k}")
    if k == 0:
        return Polynomial.constant(num_vars, num_vars)
    terms = {}
    for i in range(num_vars):
        exponent = [0] * num_vars
        exponent[i] = k
        terms[tuple(exponent)] = 1
    return Polynomial(num_vars, terms)


def vandermonde(variables: Sequence[int], num_vars: int) -> Polynomial:
    """Π_{a<b} (X_{variables[a]} - X_{variables[b]}) for 0-based variable indices."""
    xs = Polynomial.variables(num_vars)
    result = Polynomial.constant(1, num_vars)
    for a, b in itertools.combinations(range(len(variables)), 2):
        result = result * (xs[variables[a]] - xs[variables[b]])
    return result


def linear_independence_rank(polys: Iterable[Polynomial]) -> int:
    """Exact rank of the coefficient matrix of a family of polynomials."""
    from core.matrices import exact_rank

    polys = list(polys)
    if not polys:
        return 0
    support = sorted({e for p in polys for e in p.terms}, key=grlex_key)
    rows = [[p.coefficient(e) for e in support] for p in polys]
    return exact_rank(rows)


def iter_exponents(polys: Iterable[Polynomial]) -> Iterator[Exponent]:
    seen = set()
    for p in polys:
        for e in p.terms:
            if e not in seen:
                seen.add(e)
                yield e
