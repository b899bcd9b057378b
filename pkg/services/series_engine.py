"""Binomial sums and the series transformations built on them.

D_n = sum_k C(n,k) (-1)^k f(y + z k) is evaluated in exact rationals when the
values of f are rational. Otherwise it runs at working precision plus
n*log10(2) guard digits, because the binomial weights amplify roundoff by 2^n.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

import mpmath

from config.settings import settings
from models.results import EvalResult, StopReason
from models.series import CoeffProvider, TruncatedSeries, WeightKind, WeightScheme
from services.errors import MissingEvaluatorError, ParameterDomainError
from services.exact_core import binomial, stirling2_row
from services.poly_families import (
    euler_poly,
    exp_poly,
    geom_poly,
    geom_poly_half_identity,
    poly_bernoulli_poly,
)
from utils.scalars import (
    Scalar,
    ScalarLike,
    add,
    as_scalar,
    div,
    int_power,
    is_exact,
    mul,
    sub,
    to_mpf,
    total,
)

logger = logging.getLogger(__name__)

LOG10_2 = 0.30103
GUARD_PAD = 10
INITIAL_PLAN = 32
QUIET_TERMS = 3
MIN_ACCELERATED_TERMS = 8

ValueSource = Union[Callable[[int], ScalarLike], Sequence[ScalarLike]]


def guard_digits(n: int) -> int:
    """Extra decimal digits needed for alternating binomial sums up to order n."""
    return int(n * LOG10_2) + GUARD_PAD


def _value_function(values: ValueSource) -> Callable[[int], Scalar]:
    if callable(values):
        return lambda n: as_scalar(values(n))
    return lambda n: as_scalar(values[n])


def grid_values(f: CoeffProvider, z: ScalarLike, y: ScalarLike = 0) -> Callable[[int], Scalar]:
    """n -> f(y + z n)."""
    if not f.has_evaluator:
        raise MissingEvaluatorError(f"{f.name} has no direct evaluator")
    y, z = as_scalar(y), as_scalar(z)
    return lambda n: f(add(y, mul(z, n)))


class BinomialSumStream:
    """Iterator over D_n = sum_k C(n,k) (-1)^k g(k), n = 0, 1, 2, ...

    Keeps the last diagonal Delta^j g(n-j) of the forward-difference table,
    so every new n costs O(n) operations and one new value of g.
    """

    def __init__(self, values: ValueSource):
        self._values = _value_function(values)
        self._diagonal: List[Scalar] = []
        self.exact = True

    def __iter__(self) -> "BinomialSumStream":
        return self

    def __next__(self) -> Scalar:
        n = len(self._diagonal)
        head = self._values(n)
        if self.exact and not is_exact(head):
            self.exact = False
            self._diagonal = [to_mpf(d) for d in self._diagonal]
        head = Fraction(head) if self.exact else to_mpf(head)
        diagonal = [head]
        for j in range(n):
            diagonal.append(diagonal[j] - self._diagonal[j])
        self._diagonal = diagonal
        top = diagonal[n]
        return top if n % 2 == 0 else -top


def binomial_sum(f: CoeffProvider, n: int, y: ScalarLike, z: ScalarLike) -> Scalar:
    """sum_{k=0}^n C(n,k) (-1)^k f(y + z k)."""
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    values = grid_values(f, z, y)
    with mpmath.extradps(guard_digits(n)):
        terms = [mul(binomial(n, k) * (-1) ** k, values(k)) for k in range(n + 1)]
        result = total(terms)
    return result if is_exact(result) else +result


def lemma1_rhs(f: TruncatedSeries, n: int, y: ScalarLike, z: ScalarLike) -> Scalar:
    """(-1)^n n! sum_m a_m sum_p C(m,p) S(p,n) z^p y^(m-p)."""
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    y, z = as_scalar(y), as_scalar(z)
    terms = []
    for m, a_m in enumerate(f.coefficients):
        if a_m == 0:
            continue
        for p in range(n, m + 1):
            weight = binomial(m, p) * stirling2_row(p)[n]
            terms.append(mul(mul(a_m, weight), mul(int_power(z, p), int_power(y, m - p))))
    inner = total(terms)
    return mul((-1) ** n * math.factorial(n), inner)


def prop1_series(f: CoeffProvider, z: ScalarLike, n_max: int) -> Scalar:
    """sum_{n=1}^{n_max} (1/n) D_n with y = 0; equals -f'(0) z for polynomial f, n_max >= deg f."""
    stream = BinomialSumStream(grid_values(f, z))
    with mpmath.extradps(guard_digits(n_max)):
        next(stream)
        terms = [div(next(stream), n) for n in range(1, n_max + 1)]
        result = total(terms)
    return result if is_exact(result) else +result


def _finite_weighted_sum(
    f: CoeffProvider, w: WeightScheme, y: Scalar, z: Scalar, n_max: int
) -> EvalResult:
    last = min(f.degree, n_max)
    stream = BinomialSumStream(grid_values(f, z, y))
    terms = []
    for n, d in zip(range(last + 1), stream):
        if n >= w.start:
            terms.append(mul(w.weight(n), d))
    value = total(terms)
    if last == f.degree:
        reason, estimate = StopReason.TOLERANCE_MET, Fraction(0)
    else:
        reason, estimate = StopReason.MAX_TERMS, abs(terms[-1]) if terms else Fraction(0)
    return EvalResult(value=value, error_estimate=estimate, terms_used=len(terms), stop_reason=reason)


@dataclass
class _PassOutcome:
    result: EvalResult
    exhausted: bool


def _is_quiet(change: Scalar, reference: Scalar, tol: float) -> bool:
    return change == 0 or abs(change) < tol * abs(reference)


def _tail_estimate(last: Scalar, before: Scalar) -> Scalar:
    """Tail bound |last| / (1 - rho) with rho = |last / before|.

    Terms that do not shrink give QUIET_TERMS * |last|.
    """
    last, before = abs(last), abs(before)
    if last == 0:
        return last
    if before == 0 or last >= before:
        return QUIET_TERMS * last
    return last / (1 - last / before)


def _weighted_pass(
    values: Callable[[int], Scalar],
    w: WeightScheme,
    limit: int,
    tol: float,
    accelerate: bool,
) -> _PassOutcome:
    stream = BinomialSumStream(values)
    partial = mpmath.mpf(0)
    term = before = mpmath.mpf(0)
    value, estimate = None, None
    quiet = accel_quiet = used = 0
    sums: List[mpmath.mpf] = []
    levin = mpmath.levin(method="levin", variant="u") if accelerate else None
    with mpmath.extradps(guard_digits(limit)):
        for n in range(limit + 1):
            d = next(stream)
            if n < w.start:
                continue
            before, term = term, to_mpf(mul(w.weight(n), d))
            partial += term
            used += 1
            quiet = quiet + 1 if _is_quiet(term, partial, tol) else 0
            if quiet >= QUIET_TERMS:
                tail = _tail_estimate(term, before)
                if _is_quiet(tail, partial, tol):
                    value, estimate = partial, tail
                    break
            if levin is None:
                continue
            sums.append(partial)
            try:
                with mpmath.extraprec(mpmath.mp.prec):
                    extrapolated, change = levin.update_psum(sums)
            except ZeroDivisionError:
                levin = None
                continue
            if used < MIN_ACCELERATED_TERMS:
                continue
            accel_quiet = accel_quiet + 1 if _is_quiet(change, extrapolated, tol) else 0
            if accel_quiet >= QUIET_TERMS:
                value, estimate = extrapolated, abs(change)
                break
    if value is None:
        return _PassOutcome(EvalResult(+partial, +abs(term), used, StopReason.MAX_TERMS), True)
    return _PassOutcome(EvalResult(+value, +estimate, used, StopReason.TOLERANCE_MET), False)


def weighted_binomial_series(
    f: CoeffProvider,
    w: WeightScheme,
    y: ScalarLike = 0,
    z: ScalarLike = 1,
    n_max: Optional[int] = None,
    tol: Optional[float] = None,
    accelerate: bool = False,
) -> EvalResult:
    """Partial sums of sum_n w(n) D_n with D_n the binomial sums of f(y + z k).

    Stops once |term| < tol*|partial sum| for 3 consecutive n and the tail
    bound from the last term ratio is also below tol*|partial sum|, or at n_max.
    The tail bound is the reported error estimate.
    Polynomial f with exact data is summed exactly: D_n = 0 beyond the degree.
    With ``accelerate`` the partial sums also drive a Levin u-transform and
    the extrapolant is returned when it settles first.
    """
    if not f.has_evaluator:
        raise MissingEvaluatorError(f"{f.name} has no direct evaluator")
    n_max = settings.max_terms if n_max is None else n_max
    tol = settings.tol if tol is None else tol
    if n_max < w.start:
        raise ParameterDomainError(f"n_max must be >= {w.start}, got {n_max}")
    y, z = as_scalar(y), as_scalar(z)

    if f.degree is not None and w.exact and is_exact(y) and is_exact(z):
        return _finite_weighted_sum(f, w, y, z, n_max)

    values = grid_values(f, z, y)
    plan = min(n_max, INITIAL_PLAN)
    while True:
        outcome = _weighted_pass(values, w, plan, tol, accelerate)
        if not outcome.exhausted or plan >= n_max:
            logger.debug(
                f"{f.name} with {w.describe()}: {outcome.result.terms_used} terms, "
                f"{outcome.result.stop_reason.value}"
            )
            return outcome.result
        plan = min(2 * plan, n_max)
        logger.info(f"{f.name} with {w.describe()}: raising guard precision for {plan} terms")


def _stirling_kernel(p: int, x: Scalar, r: int) -> Scalar:
    # sum_j S(p,j) j! (-x)^j / (j+1)^r
    row = stirling2_row(p)
    return total(
        div(mul(row[j] * math.factorial(j), int_power(mul(-1, x), j)), (j + 1) ** r)
        for j in range(p + 1)
    )


def _harmonic_kernel(p: int, x: Scalar) -> Scalar:
    # sum_{j>=1} S(p,j) (j-1)! (-x)^j
    row = stirling2_row(p)
    return total(
        mul(row[j] * math.factorial(j - 1), int_power(mul(-1, x), j)) for j in range(1, p + 1)
    )


def weight_kernel(w: WeightScheme, p: int) -> Scalar:
    """K_p = sum_n w(n) (-1)^n n! S(p,n), written through the polynomial families."""
    kind = w.kind
    if kind is WeightKind.EXP:
        return exp_poly(p).evaluate(mul(-1, w.x))
    if kind is WeightKind.GEO:
        return geom_poly(p).evaluate(mul(-1, w.x))
    if kind is WeightKind.INV_POW:
        return _stirling_kernel(p, Fraction(1), w.r)
    if kind is WeightKind.INT_POW:
        return _stirling_kernel(p, w.x, w.r)
    if kind is WeightKind.HALF_SHIFT:
        return geom_poly_half_identity(p) / 2
    if kind is WeightKind.HALF:
        return geom_poly(p).evaluate(Fraction(-1, 2))
    return _harmonic_kernel(p, w.x)


def rhs_expansion(f: TruncatedSeries, w: WeightScheme, y: ScalarLike, z: ScalarLike) -> Scalar:
    """Right-hand side sum_m a_m sum_p C(m,p) z^p y^(m-p) K_p through the order of f.

    HALF uses the Euler polynomials: sum_m a_m z^m E_m(y/z).
    """
    y, z = as_scalar(y), as_scalar(z)
    if w.kind is WeightKind.HALF:
        terms = []
        for m, a_m in enumerate(f.coefficients):
            if z == 0:
                terms.append(mul(a_m, int_power(y, m)))
            else:
                terms.append(mul(a_m, mul(int_power(z, m), euler_poly(m).evaluate(div(y, z)))))
        return total(terms)

    kernels = [weight_kernel(w, p) for p in range(f.order + 1)]
    terms = []
    for m, a_m in enumerate(f.coefficients):
        if a_m == 0:
            continue
        inner = total(
            mul(binomial(m, p), mul(mul(int_power(z, p), int_power(y, m - p)), kernels[p]))
            for p in range(m + 1)
        )
        terms.append(mul(a_m, inner))
    return total(terms)


def poly_bernoulli_expansion(f: TruncatedSeries, r: int, y: ScalarLike, z: ScalarLike) -> Scalar:
    """sum_m a_m (-z)^m B_m^(r)(-y/z)."""
    y, z = as_scalar(y), as_scalar(z)
    if z == 0:
        if y != 0:
            raise ParameterDomainError("z = 0 requires y = 0")
        return f.coefficient(0)
    point = div(mul(-1, y), z)
    return total(
        mul(a_m, mul(int_power(mul(-1, z), m), poly_bernoulli_poly(r, m).evaluate(point)))
        for m, a_m in enumerate(f.coefficients)
    )


def poly_bernoulli_poly_rep(r: int, m: int, y: ScalarLike) -> Scalar:
    """B_m^(r)(y) = sum_{n<=m} (n+1)^{-r} sum_k C(n,k) (-1)^k (y-k)^m."""
    if r < 1:
        raise ParameterDomainError(f"r must be >= 1, got {r}")
    y = as_scalar(y)
    stream = BinomialSumStream(lambda k: int_power(sub(y, k), m))
    with mpmath.extradps(guard_digits(m)):
        terms = [div(d, (n + 1) ** r) for n, d in zip(range(m + 1), stream)]
        result = total(terms)
    return result if is_exact(result) else +result


@dataclass(frozen=True)
class PartialSums:
    """Partial sums of the two sides of a series transformation."""

    lhs: Tuple[Scalar, ...]
    rhs: Tuple[Scalar, ...]

    @property
    def final_deviation(self) -> Scalar:
        return abs(sub(self.lhs[-1], self.rhs[-1]))


def _running(terms: List[Scalar]) -> Tuple[Scalar, ...]:
    sums = []
    acc: Scalar = Fraction(0)
    for term in terms:
        acc = add(acc, term)
        sums.append(acc)
    return tuple(sums)


def _exp_scalar(value: Scalar) -> Scalar:
    if value == 0:
        return Fraction(1) if is_exact(value) else mpmath.mpf(1)
    return mpmath.exp(to_mpf(value))


def euler_transform_exp(
    f_values: ValueSource, x: ScalarLike, lam: ScalarLike, n_max: int
) -> PartialSums:
    """Both sides of e^{lam x} sum (-x)^n/n! f(zn) = sum x^n/n! sum_k C(n,k)(-1)^k lam^{n-k} f(zk)."""
    x, lam = as_scalar(x), as_scalar(lam)
    values = _value_function(f_values)
    with mpmath.extradps(guard_digits(n_max)):
        v = [values(n) for n in range(n_max + 1)]
        scale = _exp_scalar(mul(lam, x))
        lhs_terms = [
            mul(scale, div(mul(int_power(mul(-1, x), n), v[n]), math.factorial(n)))
            for n in range(n_max + 1)
        ]
        rhs_terms = []
        for n in range(n_max + 1):
            inner = total(
                mul(binomial(n, k) * (-1) ** k, mul(int_power(lam, n - k), v[k]))
                for k in range(n + 1)
            )
            rhs_terms.append(div(mul(int_power(x, n), inner), math.factorial(n)))
        lhs, rhs = _running(lhs_terms), _running(rhs_terms)
    return PartialSums(_rounded(lhs), _rounded(rhs))


def _rounded(values: Tuple[Scalar, ...]) -> Tuple[Scalar, ...]:
    return tuple(v if is_exact(v) else +v for v in values)


def euler_transform_geo(f_values: ValueSource, t: ScalarLike, n_max: int) -> PartialSums:
    """Both sides of (1/(1-t)) sum (-1)^n f(zn) (t/(1-t))^n = sum t^n D_n."""
    t = as_scalar(t)
    if abs(t) >= 1:
        raise ParameterDomainError(f"|t| must be < 1, got {t}")
    ratio = div(t, sub(1, t))
    if abs(ratio) >= 1:
        logger.warning(f"t/(1-t) = {ratio} has modulus >= 1; the left side may diverge")
    values = _value_function(f_values)
    stream = BinomialSumStream(values)
    with mpmath.extradps(guard_digits(n_max)):
        lead = div(1, sub(1, t))
        lhs_terms = [
            mul(lead, mul((-1) ** n, mul(values(n), int_power(ratio, n))))
            for n in range(n_max + 1)
        ]
        rhs_terms = [mul(int_power(t, n), d) for n, d in zip(range(n_max + 1), stream)]
        lhs, rhs = _running(lhs_terms), _running(rhs_terms)
    return PartialSums(_rounded(lhs), _rounded(rhs))


def stf_exp(f: TruncatedSeries, x: ScalarLike, z: ScalarLike) -> Scalar:
    """e^x sum_m a_m z^m phi_m(x)."""
    x, z = as_scalar(x), as_scalar(z)
    inner = total(
        mul(a_m, mul(int_power(z, m), exp_poly(m).evaluate(x)))
        for m, a_m in enumerate(f.coefficients)
    )
    return mul(_exp_scalar(x), inner)


def stf_geo(f: TruncatedSeries, x: ScalarLike, z: ScalarLike) -> Scalar:
    """(1/(1-x)) sum_m a_m z^m omega_m(x/(1-x)), for |x| < 1."""
    x, z = as_scalar(x), as_scalar(z)
    if abs(x) >= 1:
        raise ParameterDomainError(f"|x| must be < 1, got {x}")
    point = div(x, sub(1, x))
    inner = total(
        mul(a_m, mul(int_power(z, m), geom_poly(m).evaluate(point)))
        for m, a_m in enumerate(f.coefficients)
    )
    return div(inner, sub(1, x))


def stf_geo_negated(f: TruncatedSeries, t: ScalarLike, z: ScalarLike) -> Scalar:
    """sum_m a_m z^m omega_m(-t), the limit of (1/(1-t)) sum (-t/(1-t))^n f(zn)."""
    t, z = as_scalar(t), as_scalar(z)
    return total(
        mul(a_m, mul(int_power(z, m), geom_poly(m).evaluate(mul(-1, t))))
        for m, a_m in enumerate(f.coefficients)
    )


def direct_exp_series(f_values: ValueSource, x: ScalarLike, n_max: int) -> Scalar:
    """sum_{n<=n_max} x^n/n! f(zn)."""
    x = as_scalar(x)
    values = _value_function(f_values)
    return total(div(mul(int_power(x, n), values(n)), math.factorial(n)) for n in range(n_max + 1))


def direct_geo_series(f_values: ValueSource, x: ScalarLike, n_max: int) -> Scalar:
    """sum_{n<=n_max} x^n f(zn)."""
    x = as_scalar(x)
    values = _value_function(f_values)
    return total(mul(int_power(x, n), values(n)) for n in range(n_max + 1))
