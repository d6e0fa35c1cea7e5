"""
Dense integer polynomials in one variable q.

Coefficients are stored in ascending order of degree with trailing zeros
trimmed, so the zero polynomial is the empty tuple. Python integers are
arbitrary precision, so no coefficient can overflow.
"""

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

import sympy

Q = sympy.Symbol("q")


def _trim(coeffs: Iterable[int]) -> Tuple[int, ...]:
    values = list(coeffs)
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class IntPolynomial:
    """
    Polynomial with integer coefficients.

    Attributes:
        coeffs: coeffs[k] is the coefficient of q^k.
    """
    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        for c in self.coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"Non-integer coefficient {c!r}")
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def from_list(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (c,))

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, k: int) -> int:
        if k < 0:
            raise ValueError("Coefficient index must be nonnegative")
        return self.coeffs[k] if k < len(self.coeffs) else 0

    def evaluate(self, q0: int) -> int:
        """Horner evaluation at an integer."""
        total = 0
        for c in reversed(self.coeffs):
            total = total * q0 + c
        return total

    def scale(self, c: int) -> "IntPolynomial":
        return IntPolynomial(tuple(c * a for a in self.coeffs))

    def reversed_to(self, d: int) -> "IntPolynomial":
        """q^d * p(1/q); requires degree <= d."""
        if self.degree > d:
            raise ValueError(f"Degree {self.degree} exceeds {d}")
        padded = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return IntPolynomial(tuple(reversed(padded)))

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        long, short = (self.coeffs, other.coeffs) if len(self.coeffs) >= len(other.coeffs) else (other.coeffs, self.coeffs)
        result = list(long)
        for k, c in enumerate(short):
            result[k] += c
        return IntPolynomial(tuple(result))

    def __neg__(self) -> "IntPolynomial":
        return self.scale(-1)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO
        result = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    result[i + j] += a * b
        return IntPolynomial(tuple(result))

    __rmul__ = __mul__

    def to_sympy(self) -> sympy.Expr:
        return sum((c * Q**k for k, c in enumerate(self.coeffs)), sympy.Integer(0))

    def __str__(self) -> str:
        return str(self.to_sympy()).replace("**", "^")

    @classmethod
    def from_sympy(cls, expr: sympy.Expr) -> "IntPolynomial":
        """
        Converts a sympy polynomial expression in q.

        Raises:
            ValueError: If a coefficient is not an integer.
        """
        poly = sympy.Poly(sympy.expand(expr), Q)
        coeffs = []
        for c in reversed(poly.all_coeffs()):
            if not c.is_integer:
                raise ValueError(f"Coefficient {c} is not an integer")
            coeffs.append(int(c))
        return cls(tuple(coeffs))


ZERO = IntPolynomial()
ONE = IntPolynomial((1,))
Q_POLY = IntPolynomial((0, 1))
Q_MINUS_ONE = IntPolynomial((-1, 1))


def poly_add(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return a + b


def poly_mul(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return a * b


def poly_scale(a: IntPolynomial, c: int) -> IntPolynomial:
    return a.scale(c)


def coefficient(p: IntPolynomial, k: int) -> int:
    return p.coefficient(k)


def evaluate(p: IntPolynomial, q0: int) -> int:
    return p.evaluate(q0)
