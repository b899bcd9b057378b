"""Truncated power series, coefficient providers and weight schemes."""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Tuple

import mpmath

from models.polynomial import PolynomialExact
from services.errors import MissingEvaluatorError, ParameterDomainError
from utils.scalars import Scalar, ScalarLike, as_scalar, int_power, is_exact, to_mpf


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients a_0..a_M of f(t) = sum a_m t^m, truncated at order M.

    Either every coefficient is a Fraction or every one is an mpf.
    """

    coefficients: Tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a truncated series needs at least a_0")
        values = [as_scalar(c) for c in self.coefficients]
        if all(is_exact(v) for v in values):
            values = [Fraction(v) for v in values]
        else:
            values = [to_mpf(v) for v in values]
        object.__setattr__(self, "coefficients", tuple(values))

    @classmethod
    def from_polynomial(cls, p: PolynomialExact) -> "TruncatedSeries":
        return cls(p.coefficients or (Fraction(0),))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def exact(self) -> bool:
        return isinstance(self.coefficients[0], Fraction)

    def coefficient(self, m: int) -> Scalar:
        if 0 <= m < len(self.coefficients):
            return self.coefficients[m]
        return Fraction(0) if self.exact else mpmath.mpf(0)


@dataclass(frozen=True)
class CoeffProvider:
    """A function f(t) given by its Taylor coefficients and, optionally, values.

    ``coefficient(m)`` returns a_m; ``evaluator(t)`` returns f(t) and is
    defined where ``domain(t)`` holds. ``degree`` is set for polynomials.
    ``radius`` is the radius of convergence of the Taylor series, if finite.
    """

    name: str
    coefficient: Callable[[int], Scalar]
    evaluator: Optional[Callable[[Scalar], Scalar]] = None
    domain: Optional[Callable[[Scalar], bool]] = None
    domain_text: str = ""
    degree: Optional[int] = None
    radius: Optional[Scalar] = None

    @property
    def has_evaluator(self) -> bool:
        return self.evaluator is not None

    def truncate(self, order: int) -> TruncatedSeries:
        """Return a_0..a_order."""
        if self.degree is not None:
            order = min(order, max(self.degree, 0))
        return TruncatedSeries(tuple(self.coefficient(m) for m in range(order + 1)))

    def __call__(self, t: ScalarLike) -> Scalar:
        if self.evaluator is None:
            raise MissingEvaluatorError(f"{self.name} has no direct evaluator")
        point = as_scalar(t)
        if self.domain is not None and not self.domain(point):
            raise ParameterDomainError(
                f"{self.name} is not defined at t={point} ({self.domain_text})"
            )
        return self.evaluator(point)


class WeightKind(str, Enum):
    EXP = "EXP"
    GEO = "GEO"
    INV_POW = "INV_POW"
    HALF_SHIFT = "HALF_SHIFT"
    HALF = "HALF"
    HARMONIC = "HARMONIC"
    INT_POW = "INT_POW"


@dataclass(frozen=True)
class WeightScheme:
    """Outer weights w(n) of a binomial series sum_n w(n) D_n.

    EXP(x): x^n/n!     GEO(x): x^n          INV_POW(r): 1/(n+1)^r
    HALF_SHIFT: 1/2^(n+1)   HALF: 1/2^n    HARMONIC(x): x^n/n (n >= 1)
    INT_POW(x, r): x^n/(n+1)^r
    """

    kind: WeightKind
    x: Scalar = Fraction(1)
    r: int = 1

    @classmethod
    def exp(cls, x: ScalarLike) -> "WeightScheme":
        return cls(WeightKind.EXP, as_scalar(x))

    @classmethod
    def geo(cls, x: ScalarLike) -> "WeightScheme":
        return cls(WeightKind.GEO, as_scalar(x))

    @classmethod
    def inv_pow(cls, r: int) -> "WeightScheme":
        if r < 1:
            raise ValueError(f"r must be >= 1, got {r}")
        return cls(WeightKind.INV_POW, Fraction(1), r)

    @classmethod
    def half_shift(cls) -> "WeightScheme":
        return cls(WeightKind.HALF_SHIFT)

    @classmethod
    def half(cls) -> "WeightScheme":
        return cls(WeightKind.HALF)

    @classmethod
    def harmonic(cls, x: ScalarLike) -> "WeightScheme":
        return cls(WeightKind.HARMONIC, as_scalar(x))

    @classmethod
    def int_pow(cls, x: ScalarLike, r: int) -> "WeightScheme":
        if r < 1:
            raise ValueError(f"r must be >= 1, got {r}")
        return cls(WeightKind.INT_POW, as_scalar(x), r)

    @property
    def start(self) -> int:
        """First index of the outer sum."""
        return 1 if self.kind is WeightKind.HARMONIC else 0

    @property
    def exact(self) -> bool:
        return is_exact(self.x)

    def weight(self, n: int) -> Scalar:
        """w(n), exact whenever x is exact."""
        if n < self.start:
            raise ValueError(f"{self.kind.value} weights start at n={self.start}")
        x = self.x
        kind = self.kind
        if kind is WeightKind.EXP:
            return int_power(x, n) / math.factorial(n)
        if kind is WeightKind.GEO:
            return int_power(x, n)
        if kind is WeightKind.INV_POW:
            return Fraction(1, (n + 1) ** self.r)
        if kind is WeightKind.HALF_SHIFT:
            return Fraction(1, 2 ** (n + 1))
        if kind is WeightKind.HALF:
            return Fraction(1, 2 ** n)
        if kind is WeightKind.HARMONIC:
            return int_power(x, n) / n
        return int_power(x, n) / (n + 1) ** self.r

    def describe(self) -> str:
        if self.kind in (WeightKind.EXP, WeightKind.GEO, WeightKind.HARMONIC):
            return f"{self.kind.value}(x={self.x})"
        if self.kind is WeightKind.INV_POW:
            return f"INV_POW(r={self.r})"
        if self.kind is WeightKind.INT_POW:
            return f"INT_POW(x={self.x}, r={self.r})"
        return self.kind.value
