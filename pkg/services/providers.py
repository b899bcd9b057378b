"""Built-in coefficient providers for the functions f(t) fed to binomial series."""

import logging
import math
from fractions import Fraction
from typing import Iterable, Union

import mpmath

from models.polynomial import PolynomialExact
from models.series import CoeffProvider
from services.errors import ParameterDomainError
from services.exact_core import falling_factorial, generalized_binomial, stirling1_row
from utils.scalars import (
    Scalar,
    ScalarLike,
    add,
    as_scalar,
    div,
    int_power,
    is_exact,
    mul,
    real_power,
    to_mpf,
)

logger = logging.getLogger(__name__)


def general_binomial(s: ScalarLike, m: int) -> Scalar:
    """C(s, m): exact for rational s, mpf otherwise."""
    value = as_scalar(s)
    if is_exact(value):
        return generalized_binomial(value, m)
    return mpmath.binomial(value, m)


def polynomial(coefficients: Union[PolynomialExact, Iterable[ScalarLike]], name: str = "") -> CoeffProvider:
    """Provider for a polynomial with exact coefficients."""
    if isinstance(coefficients, PolynomialExact):
        p = coefficients
    else:
        p = PolynomialExact(tuple(Fraction(as_scalar(c)) for c in coefficients))
    return CoeffProvider(
        name=name or f"poly[{p}]",
        coefficient=p.coefficient,
        evaluator=p.evaluate,
        degree=max(p.degree, 0),
    )


def monomial(m: int) -> CoeffProvider:
    """f(t) = t^m."""
    if m < 0:
        raise ParameterDomainError(f"m must be >= 0, got {m}")
    return CoeffProvider(
        name=f"t^{m}",
        coefficient=lambda k: Fraction(1 if k == m else 0),
        evaluator=lambda t: int_power(t, m),
        degree=m,
    )


def exponential() -> CoeffProvider:
    """f(t) = e^t."""
    return CoeffProvider(
        name="exp(t)",
        coefficient=lambda k: Fraction(1, math.factorial(k)),
        evaluator=lambda t: mpmath.exp(to_mpf(t)),
    )


def one_minus_exp_neg() -> CoeffProvider:
    """f(t) = 1 - e^{-t}."""
    return CoeffProvider(
        name="1-exp(-t)",
        coefficient=lambda k: Fraction(0) if k == 0 else Fraction((-1) ** (k + 1), math.factorial(k)),
        evaluator=lambda t: 1 - mpmath.exp(-to_mpf(t)),
    )


def shifted_inverse_power(s: ScalarLike, a: ScalarLike = 1) -> CoeffProvider:
    """f(t) = (a + t)^{-s}; a_m = C(-s, m) a^{-m-s}.

    Values are exact for rational a, t and integer s.
    """
    s, a = as_scalar(s), as_scalar(a)
    if a <= 0:
        raise ParameterDomainError(f"a must be > 0, got {a}")

    def coefficient(m: int) -> Scalar:
        return mul(general_binomial(-s, m), real_power(a, add(-s, -m)))

    return CoeffProvider(
        name=f"(t+{a})^(-{s})",
        coefficient=coefficient,
        evaluator=lambda t: real_power(add(a, t), -s),
        domain=lambda t: add(a, t) > 0,
        domain_text=f"needs t > -{a}",
        radius=a,
    )


def inverse_power(s: ScalarLike) -> CoeffProvider:
    """f(t) = (1 + t)^{-s}; Taylor series valid for |t| < 1."""
    return shifted_inverse_power(s, 1)


def lerch_kernel(x: ScalarLike, s: ScalarLike, a: ScalarLike) -> CoeffProvider:
    """f(t) = x^t (a + t)^{-s} with 0 < x <= 1.

    a_m = sum_{k<=m} C(-s, m-k) log^k(x) / (k! a^{m+s-k}).
    """
    x, s, a = as_scalar(x), as_scalar(s), as_scalar(a)
    if not 0 < x <= 1:
        raise ParameterDomainError(f"x must lie in (0, 1], got {x}")
    if a <= 0:
        raise ParameterDomainError(f"a must be > 0, got {a}")

    def coefficient(m: int) -> Scalar:
        if x == 1:
            return mul(general_binomial(-s, m), real_power(a, add(-s, -m)))
        log_x = mpmath.log(to_mpf(x))
        return mpmath.fsum(
            to_mpf(general_binomial(-s, m - k))
            * log_x ** k
            / math.factorial(k)
            * to_mpf(real_power(a, add(-s, k - m)))
            for k in range(m + 1)
        )

    return CoeffProvider(
        name=f"{x}^t/(t+{a})^{s}",
        coefficient=coefficient,
        evaluator=lambda t: mul(real_power(x, t), real_power(add(a, t), -s)),
        domain=lambda t: add(a, t) > 0,
        domain_text=f"needs t > -{a}",
        radius=a,
    )


def log_shift(z: ScalarLike) -> CoeffProvider:
    """f(t) = log(1 + t/z); a_m = (-1)^{m-1} / (m z^m)."""
    z = as_scalar(z)
    if z <= 0:
        raise ParameterDomainError(f"z must be > 0, got {z}")

    def coefficient(m: int) -> Scalar:
        if m == 0:
            return Fraction(0)
        return div(Fraction((-1) ** (m - 1), m), int_power(z, m))

    return CoeffProvider(
        name=f"log(1+t/{z})",
        coefficient=coefficient,
        evaluator=lambda t: mpmath.log(1 + to_mpf(div(t, z))),
        domain=lambda t: add(1, div(t, z)) > 0,
        domain_text=f"needs t > -{z}",
        radius=z,
    )


def logarithm(a: ScalarLike) -> CoeffProvider:
    """f(t) = log(a + t)."""
    a = as_scalar(a)
    if a <= 0:
        raise ParameterDomainError(f"a must be > 0, got {a}")

    def coefficient(m: int) -> Scalar:
        if m == 0:
            return mpmath.log(to_mpf(a))
        return to_mpf(div(Fraction((-1) ** (m - 1), m), int_power(a, m)))

    return CoeffProvider(
        name=f"log(t+{a})",
        coefficient=coefficient,
        evaluator=lambda t: mpmath.log(to_mpf(add(a, t))),
        domain=lambda t: add(a, t) > 0,
        domain_text=f"needs t > -{a}",
        radius=a,
    )


def binomial_poly(p: int) -> CoeffProvider:
    """f(t) = C(t, p) = (1/p!) sum_m s(p,m) t^m."""
    if p < 0:
        raise ParameterDomainError(f"p must be >= 0, got {p}")
    row = stirling1_row(p)
    coefficients = PolynomialExact(tuple(Fraction(c, math.factorial(p)) for c in row))

    def evaluator(t: Scalar) -> Scalar:
        if is_exact(t):
            return falling_factorial(Fraction(t), p) / math.factorial(p)
        return mpmath.binomial(to_mpf(t), p)

    return CoeffProvider(
        name=f"C(t,{p})",
        coefficient=coefficients.coefficient,
        evaluator=evaluator,
        degree=p,
    )
