"""Dense polynomials with exact rational coefficients."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple

import mpmath

from utils.scalars import Scalar, ScalarLike, as_scalar, is_exact, to_mpf


def _trim(coefficients: Iterable) -> Tuple[Fraction, ...]:
    values = [Fraction(c) for c in coefficients]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class PolynomialExact:
    """Polynomial sum_k coefficients[k] x^k over the rationals.

    Trailing zeros are trimmed on construction; the zero polynomial has
    no coefficients and degree -1.
    """

    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    @classmethod
    def from_coefficients(cls, coefficients: Iterable) -> "PolynomialExact":
        return cls(tuple(coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, k: int) -> Fraction:
        """Coefficient of x^k (0 beyond the degree)."""
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return Fraction(0)

    def evaluate(self, x: ScalarLike) -> Scalar:
        """Horner evaluation; exact for rational x."""
        point = as_scalar(x)
        if is_exact(point):
            acc = Fraction(0)
            for c in reversed(self.coefficients):
                acc = acc * point + c
            return acc
        acc = mpmath.mpf(0)
        for c in reversed(self.coefficients):
            acc = acc * point + to_mpf(c)
        return acc

    def negate_argument(self) -> "PolynomialExact":
        """Return p(-x)."""
        return PolynomialExact(
            tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coefficients))
        )

    def scale(self, factor: Fraction) -> "PolynomialExact":
        return PolynomialExact(tuple(c * factor for c in self.coefficients))

    def __call__(self, x: ScalarLike) -> Scalar:
        return self.evaluate(x)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*x")
            else:
                parts.append(f"{c}*x^{k}")
        return " + ".join(parts)


def poly_eval(p: PolynomialExact, x: ScalarLike) -> Scalar:
    """Evaluate ``p`` at ``x``; exact when ``x`` is exact."""
    return p.evaluate(x)
