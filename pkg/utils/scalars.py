"""Scalar helpers shared by the exact and the floating-point code paths.

Exact values are ``fractions.Fraction``; everything else is an ``mpmath.mpf``
at the current working precision. The two are never mixed implicitly.
"""

from fractions import Fraction
from typing import Iterable, List, Union

import mpmath
from mpmath import mpf

Scalar = Union[Fraction, mpf]
ScalarLike = Union[int, float, str, Fraction, mpf]


def as_scalar(value: ScalarLike) -> Scalar:
    """Normalize user input to a Fraction (when exact) or an mpf."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, mpf):
        return value
    if isinstance(value, float):
        return mpmath.mpf(repr(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            pass
        try:
            return mpmath.mpf(text)
        except (ValueError, TypeError) as e:
            raise ValueError(f"not a real number: {value!r}") from e
    raise TypeError(f"unsupported scalar type: {type(value).__name__}")


def is_exact(value: object) -> bool:
    """True for ints and Fractions."""
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def is_integer(value: Scalar) -> bool:
    if is_exact(value):
        return Fraction(value).denominator == 1
    return bool(mpmath.isint(value))


def to_mpf(value: ScalarLike) -> mpf:
    """Convert to mpf at the current working precision."""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, str):
        return to_mpf(as_scalar(value))
    return mpmath.mpf(value)


def unify(values: Iterable[ScalarLike]) -> List[Scalar]:
    """Return all values as Fractions if every one is exact, else as mpfs."""
    items = list(values)
    if all(is_exact(v) for v in items):
        return [Fraction(v) for v in items]
    return [to_mpf(v) for v in items]


def int_power(base: Scalar, exponent: int) -> Scalar:
    """base**exponent with 0**0 = 1, keeping exactness."""
    if exponent == 0:
        return Fraction(1) if is_exact(base) else mpmath.mpf(1)
    if is_exact(base):
        return Fraction(base) ** exponent
    return mpmath.power(base, exponent)


def real_power(base: ScalarLike, exponent: ScalarLike) -> Scalar:
    """base**exponent; exact when the base is exact and the exponent an integer."""
    if is_exact(base) and is_exact(exponent) and Fraction(exponent).denominator == 1:
        return Fraction(base) ** int(Fraction(exponent))
    return mpmath.power(to_mpf(base), to_mpf(exponent))


def exact_or_mpf(value: ScalarLike, exact: bool) -> Scalar:
    """Coerce a value into the requested arithmetic."""
    if exact:
        return Fraction(value)
    return to_mpf(value)


def add(a: ScalarLike, b: ScalarLike) -> Scalar:
    if is_exact(a) and is_exact(b):
        return Fraction(a) + Fraction(b)
    return to_mpf(a) + to_mpf(b)


def sub(a: ScalarLike, b: ScalarLike) -> Scalar:
    if is_exact(a) and is_exact(b):
        return Fraction(a) - Fraction(b)
    return to_mpf(a) - to_mpf(b)


def mul(a: ScalarLike, b: ScalarLike) -> Scalar:
    if is_exact(a) and is_exact(b):
        return Fraction(a) * Fraction(b)
    return to_mpf(a) * to_mpf(b)


def div(a: ScalarLike, b: ScalarLike) -> Scalar:
    if is_exact(a) and is_exact(b):
        return Fraction(a) / Fraction(b)
    return to_mpf(a) / to_mpf(b)


def total(values: Iterable[ScalarLike]) -> Scalar:
    """Sum that stays exact when every summand is exact."""
    items = list(values)
    if all(is_exact(v) for v in items):
        return sum((Fraction(v) for v in items), Fraction(0))
    return mpmath.fsum(to_mpf(v) for v in items)
