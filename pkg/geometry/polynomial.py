"""
Single-variable integer polynomials, constant term first.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

import sympy
from sympy.parsing.sympy_parser import (
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

T = sympy.Symbol("t")


def _trim(coefficients: Iterable[int]) -> Tuple[int, ...]:
    coeffs = [int(c) for c in coefficients]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    @classmethod
    def from_counts(cls, counts: Dict[int, int]) -> "IntPolynomial":
        """Generating polynomial sum_k counts[k] t^k."""
        if not counts:
            return cls(())
        coeffs = [0] * (max(counts) + 1)
        for power, count in counts.items():
            coeffs[power] += count
        return cls(tuple(coeffs))

    @classmethod
    def from_sympy(cls, expr) -> "IntPolynomial":
        poly = sympy.Poly(expr, T)
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        transformations = standard_transformations + (implicit_multiplication_application,)
        expr = parse_expr(
            text.replace("^", "**"), local_dict={"t": T}, transformations=transformations
        )
        return cls.from_sympy(expr)

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coefficients)) or [0], T)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __call__(self, value: int) -> int:
        return sum(c * value ** k for k, c in enumerate(self.coefficients))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(tuple(self[k] + other[k] for k in range(size)))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(tuple(self[k] - other[k] for k in range(size)))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial.from_sympy((self.to_sympy() * other.to_sympy()).as_expr())

    def substitute_square(self) -> "IntPolynomial":
        """p(t^2)."""
        coeffs = [0] * (2 * len(self.coefficients))
        for k, c in enumerate(self.coefficients):
            coeffs[2 * k] = c
        return IntPolynomial(tuple(coeffs))

    def shift(self, by: int = -1) -> "IntPolynomial":
        """p(t + by); h(t) = f(t - 1) is shift(-1)."""
        return IntPolynomial.from_sympy(self.to_sympy().as_expr().subs(T, T + by).expand())

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coefficients) if k))

    def truncate(self, degree: int) -> "IntPolynomial":
        return IntPolynomial(self.coefficients[: degree + 1])

    def is_palindromic(self) -> bool:
        return self.coefficients == tuple(reversed(self.coefficients))

    def to_list(self) -> list:
        return list(self.coefficients)

    def __str__(self) -> str:
        return self.format()

    def format(self) -> str:
        """'1 + 7t^2 + 11t^4 + t^6'."""
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                power = "t" if k == 1 else f"t^{k}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms) if terms else "0"


def polynomial(coefficients: Sequence[int]) -> IntPolynomial:
    return IntPolynomial(tuple(coefficients))
