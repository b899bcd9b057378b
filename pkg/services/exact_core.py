"""Exact combinatorics: Stirling tables, Bell numbers and binomial coefficients.

All results are Python ints or ``fractions.Fraction``; nothing here rounds.
"""

import logging
import math
from fractions import Fraction
from typing import List, Tuple

from services.errors import ParameterDomainError
from utils.cache import GrowingTable
from utils.scalars import is_exact

logger = logging.getLogger(__name__)


def _next_stirling2_row(m: int, rows: List[Tuple[int, ...]]) -> Tuple[int, ...]:
    # S(m,n) = n*S(m-1,n) + S(m-1,n-1)
    if m == 0:
        return (1,)
    prev = rows[m - 1]
    row = [0] * (m + 1)
    for n in range(1, m + 1):
        upper = prev[n] if n < m else 0
        row[n] = n * upper + prev[n - 1]
    return tuple(row)


def _next_stirling1_row(p: int, rows: List[Tuple[int, ...]]) -> Tuple[int, ...]:
    # s(p,m) = s(p-1,m-1) - (p-1)*s(p-1,m)
    if p == 0:
        return (1,)
    prev = rows[p - 1]
    row = [0] * (p + 1)
    for m in range(1, p + 1):
        upper = prev[m] if m < p else 0
        row[m] = prev[m - 1] - (p - 1) * upper
    return tuple(row)


def _next_bell(n: int, rows: List[int]) -> int:
    return sum(stirling2_row(n))


stirling2_table: GrowingTable[Tuple[int, ...]] = GrowingTable(
    name="stirling2", build_row=_next_stirling2_row
)
stirling1_table: GrowingTable[Tuple[int, ...]] = GrowingTable(
    name="stirling1", build_row=_next_stirling1_row
)
bell_table: GrowingTable[int] = GrowingTable(name="bell", build_row=_next_bell)


def _require_non_negative(**values: int) -> None:
    for name, value in values.items():
        if value < 0:
            raise ParameterDomainError(f"{name} must be >= 0, got {value}")


def stirling2_row(m: int) -> Tuple[int, ...]:
    """Row ``(S(m,0), ..., S(m,m))`` of the second-kind table."""
    _require_non_negative(m=m)
    return stirling2_table.get(m)


def stirling2(m: int, n: int) -> int:
    """Stirling number of the second kind S(m, n); 0 outside the triangle."""
    _require_non_negative(m=m, n=n)
    if n > m:
        return 0
    return stirling2_table.get(m)[n]


def stirling1_row(p: int) -> Tuple[int, ...]:
    """Row ``(s(p,0), ..., s(p,p))`` of the signed first-kind table."""
    _require_non_negative(p=p)
    return stirling1_table.get(p)


def stirling1_signed(p: int, m: int) -> int:
    """Signed Stirling number s(p, m), so that p!*C(t,p) = sum_m s(p,m) t^m."""
    _require_non_negative(p=p, m=m)
    if m > p:
        return 0
    return stirling1_table.get(p)[m]


def bell(n: int) -> int:
    """Bell number b_n = sum_k S(n, k)."""
    _require_non_negative(n=n)
    return bell_table.get(n)


def lemma2_sum(m: int) -> int:
    """sum_{n=1}^m S(m,n) (n-1)! (-1)^n, which is -1 for m = 1 and 0 afterwards."""
    if m < 1:
        raise ParameterDomainError(f"m must be >= 1, got {m}")
    row = stirling2_row(m)
    return sum(row[n] * math.factorial(n - 1) * (-1) ** n for n in range(1, m + 1))


def binomial(n: int, k: int) -> int:
    """C(n, k) for integer n >= 0; 0 when k < 0 or k > n."""
    _require_non_negative(n=n)
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def generalized_binomial(s: Fraction, m: int) -> Fraction:
    """C(s, m) = s(s-1)...(s-m+1)/m! for exact rational s."""
    _require_non_negative(m=m)
    if not is_exact(s):
        raise ParameterDomainError("generalized_binomial needs an exact rational s")
    s = Fraction(s)
    result = Fraction(1)
    for j in range(m):
        result = result * (s - j) / (j + 1)
    return result


def falling_factorial(t: Fraction, p: int) -> Fraction:
    """t(t-1)...(t-p+1), exact."""
    _require_non_negative(p=p)
    result = Fraction(1)
    for j in range(p):
        result *= Fraction(t) - j
    return result


def factorial(n: int) -> int:
    _require_non_negative(n=n)
    return math.factorial(n)
