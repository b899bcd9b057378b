"""Exponential, geometric, Bernoulli, poly-Bernoulli and Euler families.

Bernoulli convention: B_1 = -1/2. This is what the Stirling representation
B_n = sum_j S(n,j) j! (-1)^j / (j+1) produces.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

import mpmath

from models.polynomial import PolynomialExact, poly_eval
from services.errors import ParameterDomainError
from services.exact_core import binomial, stirling2_row
from utils.cache import GrowingTable
from utils.scalars import Scalar, ScalarLike, as_scalar

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def _require_index(m: int) -> None:
    if m < 0:
        raise ParameterDomainError(f"index must be >= 0, got {m}")


def _require_order(q: int) -> None:
    if q < 1:
        raise ParameterDomainError(f"q must be >= 1, got {q}")


def _kaneko_sum(n: int, q: int) -> Fraction:
    # sum_j S(n,j) j! (-1)^j / (j+1)^q
    row = stirling2_row(n)
    return sum(
        (Fraction(row[j] * math.factorial(j) * (-1) ** j, (j + 1) ** q) for j in range(n + 1)),
        Fraction(0),
    )


def _binomial_convolution(numbers: List[Fraction], m: int) -> PolynomialExact:
    # sum_j C(m,j) y^{m-j} numbers[j]
    coefficients = [Fraction(0)] * (m + 1)
    for j in range(m + 1):
        coefficients[m - j] = binomial(m, j) * numbers[j]
    return PolynomialExact(tuple(coefficients))


@dataclass
class NumberFamilyCache:
    """Lazily grown exact number sequences.

    The poly-Bernoulli table keeps one list per order q.
    """

    bernoulli: GrowingTable[Fraction] = field(
        default_factory=lambda: GrowingTable("bernoulli", lambda n, rows: _kaneko_sum(n, 1))
    )
    geometric_half: GrowingTable[Fraction] = field(
        default_factory=lambda: GrowingTable(
            "geometric_half", lambda n, rows: geom_poly(n).evaluate(-HALF)
        )
    )
    euler_numbers: GrowingTable[Fraction] = field(
        default_factory=lambda: GrowingTable(
            "euler_numbers", lambda n, rows: 2 ** n * euler_poly(n).evaluate(HALF)
        )
    )
    poly_bernoulli: Dict[int, GrowingTable[Fraction]] = field(default_factory=dict)

    def poly_bernoulli_table(self, q: int) -> GrowingTable[Fraction]:
        table = self.poly_bernoulli.get(q)
        if table is None:
            table = GrowingTable(
                f"poly_bernoulli[{q}]",
                lambda n, rows, q=q: (-1) ** n * _kaneko_sum(n, q),
            )
            table = self.poly_bernoulli.setdefault(q, table)
        return table

    def clear(self) -> None:
        self.bernoulli.clear()
        self.geometric_half.clear()
        self.euler_numbers.clear()
        self.poly_bernoulli.clear()


number_cache = NumberFamilyCache()


def exp_poly(m: int) -> PolynomialExact:
    """Exponential polynomial phi_m(x) = sum_n S(m,n) x^n."""
    _require_index(m)
    return PolynomialExact(tuple(stirling2_row(m)))


def geom_poly(m: int) -> PolynomialExact:
    """Geometric polynomial omega_m(x) = sum_n S(m,n) n! x^n."""
    _require_index(m)
    row = stirling2_row(m)
    return PolynomialExact(tuple(row[n] * math.factorial(n) for n in range(m + 1)))


def bernoulli_number(m: int) -> Fraction:
    """Bernoulli number B_m with B_1 = -1/2."""
    _require_index(m)
    return number_cache.bernoulli.get(m)


def bernoulli_numbers(count: int) -> List[Fraction]:
    return number_cache.bernoulli.rows(count)


def bernoulli_poly(m: int) -> PolynomialExact:
    """B_m(y) = sum_j C(m,j) y^{m-j} B_j."""
    _require_index(m)
    return _binomial_convolution(bernoulli_numbers(m + 1), m)


def poly_bernoulli_number(q: int, n: int) -> Fraction:
    """Poly-Bernoulli number B_n^(q) = (-1)^n sum_j S(n,j) j! (-1)^j / (j+1)^q."""
    _require_order(q)
    _require_index(n)
    return number_cache.poly_bernoulli_table(q).get(n)


def poly_bernoulli_poly(q: int, m: int) -> PolynomialExact:
    """B_m^(q)(y) = sum_j C(m,j) y^{m-j} B_j^(q)."""
    _require_order(q)
    _require_index(m)
    return _binomial_convolution(number_cache.poly_bernoulli_table(q).rows(m + 1), m)


def geometric_half_value(m: int) -> Fraction:
    """omega_m(-1/2), cached."""
    _require_index(m)
    return number_cache.geometric_half.get(m)


def euler_poly(m: int) -> PolynomialExact:
    """Euler polynomial E_m(x) = sum_k C(m,k) omega_k(-1/2) x^{m-k}."""
    _require_index(m)
    values = number_cache.geometric_half.rows(m + 1)
    return _binomial_convolution(values, m)


def euler_number(m: int) -> Fraction:
    """Euler number E_m = 2^m E_m(1/2); zero for odd m."""
    _require_index(m)
    return number_cache.euler_numbers.get(m)


def geom_poly_half_identity(m: int) -> Fraction:
    """Closed form 2(1 - 2^{m+1}) B_{m+1} / (m+1) of omega_m(-1/2)."""
    _require_index(m)
    return Fraction(2 * (1 - 2 ** (m + 1)), m + 1) * bernoulli_number(m + 1)


def geometric_moment_sum(m: int, x: ScalarLike, n_max: int) -> Tuple[Scalar, Scalar]:
    """Partial sum of sum_n n^m x^n and its closed form (1/(1-x)) omega_m(x/(1-x)).

    Both are exact for rational x. Requires |x| < 1 for the limit to exist.
    """
    _require_index(m)
    point = as_scalar(x)
    if abs(point) >= 1:
        raise ParameterDomainError(f"|x| must be < 1, got {x}")
    if isinstance(point, Fraction):
        partial = sum((Fraction(n) ** m * point ** n for n in range(n_max + 1)), Fraction(0))
        closed = geom_poly(m).evaluate(point / (1 - point)) / (1 - point)
        return partial, closed
    partial = mpmath.fsum(mpmath.mpf(n) ** m * point ** n for n in range(n_max + 1))
    closed = geom_poly(m).evaluate(point / (1 - point)) / (1 - point)
    return partial, closed


def half_logistic_taylor(count: int) -> List[Fraction]:
    """First ``count`` Taylor coefficients of 2/(e^t + 1) by exact series division.

    Coefficient m equals omega_m(-1/2)/m!.
    """
    # e^t + 1 = 2 + sum_{k>=1} t^k/k!
    denominator = [Fraction(2)] + [Fraction(1, math.factorial(k)) for k in range(1, count)]
    quotient: List[Fraction] = []
    for m in range(count):
        target = Fraction(2) if m == 0 else Fraction(0)
        acc = target - sum(
            (quotient[j] * denominator[m - j] for j in range(m)), Fraction(0)
        )
        quotient.append(acc / denominator[0])
    return quotient


def euler_generating_coefficients(x: Fraction, count: int) -> List[Fraction]:
    """Taylor coefficients of 2 e^{xt}/(e^t + 1), i.e. E_m(x)/m!, by series product."""
    logistic = half_logistic_taylor(count)
    exponential = [Fraction(x) ** k / math.factorial(k) for k in range(count)]
    return [
        sum((exponential[k] * logistic[m - k] for k in range(m + 1)), Fraction(0))
        for m in range(count)
    ]


__all__ = [
    "NumberFamilyCache",
    "bernoulli_number",
    "bernoulli_numbers",
    "bernoulli_poly",
    "euler_generating_coefficients",
    "euler_number",
    "euler_poly",
    "exp_poly",
    "geom_poly",
    "geom_poly_half_identity",
    "geometric_half_value",
    "geometric_moment_sum",
    "half_logistic_taylor",
    "number_cache",
    "poly_bernoulli_number",
    "poly_bernoulli_poly",
    "poly_eval",
]
