"""Hasse-type series and asymptotic expansions for zeta-type functions.

Convergent routes sum binomial series through series_engine. Hurwitz zeta,
digamma, the Lerch combination and zeta_1 first move their argument up to
``settings.shift_target`` by exact recurrences, so the series decay fast.
Asymptotic routes are optimally truncated through services.asymptotics.
"""

import logging
import math
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Tuple

import mpmath

from config.settings import settings
from models.results import EvalResult, RoutePair, StopReason
from models.series import CoeffProvider, WeightScheme
from services.asymptotics import AsymptoticSeries, TruncationPolicy, optimal_truncate
from services.errors import ParameterDomainError
from services.poly_families import (
    bernoulli_number,
    bernoulli_poly,
    euler_poly,
    exp_poly,
    geom_poly_half_identity,
    poly_bernoulli_number,
)
from services.providers import (
    general_binomial,
    lerch_kernel,
    log_shift,
    logarithm,
    shifted_inverse_power,
)
from services.series_engine import weighted_binomial_series
from utils.scalars import (
    Scalar,
    ScalarLike,
    add,
    as_scalar,
    div,
    int_power,
    is_exact,
    is_integer,
    mul,
    real_power,
    sub,
    to_mpf,
    total,
)

logger = logging.getLogger(__name__)

REFINE_ATTEMPTS = 3


class DigammaForm(str, Enum):
    """Series used for psi: RATIO sums log(1 + k/z), DIRECT sums log(z + k)."""

    RATIO = "ratio"
    DIRECT = "direct"


def _require_positive(**values: Scalar) -> None:
    for name, value in values.items():
        if not value > 0:
            raise ParameterDomainError(f"{name} must be > 0, got {value}")


def _require_unit_interval(x: Scalar) -> None:
    if not 0 < x <= 1:
        raise ParameterDomainError(f"x must lie in (0, 1], got {x}")


def _shift_count(a: Scalar, shift: Optional[float]) -> int:
    target = settings.shift_target if shift is None else shift
    gap = target - float(to_mpf(a))
    return max(0, math.ceil(gap))


def _workdps(digits: Optional[int]):
    return mpmath.workdps(digits or settings.digits)


def _shifted_series(
    run: Callable[[float], EvalResult],
    combine: Callable[[Scalar], Scalar],
    scale: Callable[[Scalar], Scalar],
    tol: float,
) -> Tuple[Scalar, Scalar, EvalResult]:
    """Run ``run(series_tol)`` until the combined value meets ``tol`` relatively.

    The series part may be much larger than the final value, so its own
    tolerance is tightened in proportion when needed.
    """
    series_tol = tol
    for attempt in range(REFINE_ATTEMPTS):
        series = run(series_tol)
        value = combine(series.value)
        estimate = abs(scale(series.error_estimate))
        if series.stop_reason is not StopReason.TOLERANCE_MET:
            break
        if estimate <= tol * abs(value):
            break
        if value == 0:
            break
        series_tol = float(series_tol * tol * abs(value) / estimate) / 2
        logger.debug(f"Tightening series tolerance to {series_tol:.3e} (attempt {attempt + 1})")
    return value, estimate, series


def _finish(
    value: Scalar, estimate: Scalar, series: EvalResult, tol: float, shift: int
) -> EvalResult:
    reason = series.stop_reason
    warning = series.warning
    if reason is StopReason.TOLERANCE_MET and estimate > tol * abs(value):
        warning = f"error estimate {mpmath.nstr(to_mpf(estimate), 5)} exceeds tolerance {tol}"
    return EvalResult(
        value=to_mpf(value),
        error_estimate=to_mpf(estimate),
        terms_used=series.terms_used + shift,
        stop_reason=reason,
        warning=warning,
    )


def _defaults(tol: Optional[float], max_terms: Optional[int]) -> Tuple[float, int]:
    return (settings.tol if tol is None else tol, settings.max_terms if max_terms is None else max_terms)


# Convergent routes


def hurwitz_zeta(
    s: ScalarLike,
    a: ScalarLike,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
    digits: Optional[int] = None,
    shift: Optional[float] = None,
) -> EvalResult:
    """zeta(s+1, a) from s*zeta(s+1, a) = sum 1/(n+1) sum_k C(n,k)(-1)^k (a+k)^{-s}."""
    s, a = as_scalar(s), as_scalar(a)
    _require_positive(s=s, a=a)
    tol, max_terms = _defaults(tol, max_terms)
    with _workdps(digits):
        m = _shift_count(a, shift)
        head = total(mul(s, real_power(add(a, j), sub(-s, 1))) for j in range(m))
        provider = shifted_inverse_power(s, add(a, m))
        value, estimate, series = _shifted_series(
            lambda t: weighted_binomial_series(
                provider, WeightScheme.inv_pow(1), n_max=max_terms, tol=t
            ),
            lambda v: div(add(head, v), s),
            lambda e: div(e, s),
            tol,
        )
        logger.debug(f"zeta({s}+1, {a}): shifted by {m}, {series.terms_used} series terms")
        return _finish(value, estimate, series, tol, 0)


def eta(
    s: ScalarLike,
    a: ScalarLike,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
    digits: Optional[int] = None,
) -> EvalResult:
    """eta(s, a) = Phi(-1, s, a) = sum 1/2^{n+1} sum_k C(n,k)(-1)^k (k+a)^{-s}."""
    s, a = as_scalar(s), as_scalar(a)
    _require_positive(s=s, a=a)
    tol, max_terms = _defaults(tol, max_terms)
    with _workdps(digits):
        series = weighted_binomial_series(
            shifted_inverse_power(s, a), WeightScheme.half_shift(), n_max=max_terms, tol=tol
        )
        return _finish(series.value, series.error_estimate, series, tol, 0)


def _lerch_head(x: Scalar, s: Scalar, a: Scalar, m: int) -> Scalar:
    # sum_{j<m} x^j [s (a+j)^{-s-1} - log(x) (a+j)^{-s}]
    log_x = Fraction(0) if x == 1 else mpmath.log(to_mpf(x))
    return total(
        mul(
            int_power(x, j),
            sub(
                mul(s, real_power(add(a, j), sub(-s, 1))),
                mul(log_x, real_power(add(a, j), -s)),
            ),
        )
        for j in range(m)
    )


def lerch_phi(
    x: ScalarLike,
    s: ScalarLike,
    a: ScalarLike,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
    digits: Optional[int] = None,
    shift: Optional[float] = None,
) -> RoutePair:
    """Two Lerch series for 0 < x <= 1.

    ``first`` is s*Phi(x, s+1, a) - log(x)*Phi(x, s, a) with weights 1/(n+1);
    ``second`` is Phi(-x, s, a) with weights 1/2^{n+1}.
    """
    x, s, a = as_scalar(x), as_scalar(s), as_scalar(a)
    _require_unit_interval(x)
    _require_positive(s=s, a=a)
    tol, max_terms = _defaults(tol, max_terms)
    with _workdps(digits):
        m = _shift_count(a, shift)
        head = _lerch_head(x, s, a, m)
        scale = int_power(x, m)
        provider = lerch_kernel(x, s, add(a, m))
        value, estimate, series = _shifted_series(
            lambda t: weighted_binomial_series(
                provider, WeightScheme.inv_pow(1), n_max=max_terms, tol=t
            ),
            lambda v: add(head, mul(scale, v)),
            lambda e: mul(scale, e),
            tol,
        )
        combination = _finish(value, estimate, series, tol, 0)

        alternating_series = weighted_binomial_series(
            lerch_kernel(x, s, a), WeightScheme.half_shift(), n_max=max_terms, tol=tol
        )
        alternating = _finish(
            alternating_series.value,
            alternating_series.error_estimate,
            alternating_series,
            tol,
            0,
        )
    return RoutePair(first=combination, second=alternating)


def digamma(
    z: ScalarLike,
    tol: Optional[float] = None,
    form: DigammaForm = DigammaForm.DIRECT,
    max_terms: Optional[int] = None,
    digits: Optional[int] = None,
    shift: Optional[float] = None,
) -> EvalResult:
    """psi(z) for z > 0.

    DIRECT: psi(z) = sum 1/(n+1) sum_k C(n,k)(-1)^k log(z+k).
    RATIO: psi(z) = log z + sum 1/(n+1) sum_k C(n,k)(-1)^k log(1 + k/z).
    """
    z = as_scalar(z)
    _require_positive(z=z)
    form = DigammaForm(form)
    tol, max_terms = _defaults(tol, max_terms)
    with _workdps(digits):
        m = _shift_count(z, shift)
        shifted = add(z, m)
        head = total(div(-1, add(z, j)) for j in range(m))
        if form is DigammaForm.DIRECT:
            provider: CoeffProvider = logarithm(shifted)
            head = to_mpf(head)
        else:
            provider = log_shift(shifted)
            head = add(head, mpmath.log(to_mpf(shifted)))
        value, estimate, series = _shifted_series(
            lambda t: weighted_binomial_series(
                provider, WeightScheme.inv_pow(1), n_max=max_terms, tol=t
            ),
            lambda v: add(head, v),
            lambda e: e,
            tol,
        )
        logger.debug(f"psi({z}) via {form.value} form: shifted by {m}")
        return _finish(value, estimate, series, tol, 0)


def arakawa_kaneko(
    r: int,
    s: ScalarLike,
    a: ScalarLike,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
    digits: Optional[int] = None,
    shift: Optional[float] = None,
) -> EvalResult:
    """zeta_r(s, a) = sum 1/(n+1)^r sum_k C(n,k)(-1)^k (k+a)^{-s}.

    For r = 1 the argument is shifted through zeta_1(s,a) = s a^{-s-1} + zeta_1(s,a+1).
    For r >= 2 no such recurrence is used; the partial sums are accelerated instead.
    """
    if r < 1:
        raise ParameterDomainError(f"r must be >= 1, got {r}")
    s, a = as_scalar(s), as_scalar(a)
    _require_positive(s=s, a=a)
    tol, max_terms = _defaults(tol, max_terms)
    with _workdps(digits):
        if r >= 2:
            series = weighted_binomial_series(
                shifted_inverse_power(s, a),
                WeightScheme.inv_pow(r),
                n_max=max_terms,
                tol=tol,
                accelerate=True,
            )
            return _finish(series.value, series.error_estimate, series, tol, 0)
        m = _shift_count(a, shift)
        head = total(mul(s, real_power(add(a, j), sub(-s, 1))) for j in range(m))
        provider = shifted_inverse_power(s, add(a, m))
        value, estimate, series = _shifted_series(
            lambda t: weighted_binomial_series(
                provider, WeightScheme.inv_pow(1), n_max=max_terms, tol=t
            ),
            lambda v: add(head, v),
            lambda e: e,
            tol,
        )
        return _finish(value, estimate, series, tol, 0)


def polyexponential_direct(
    s: ScalarLike,
    x: ScalarLike,
    lam: ScalarLike,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
) -> EvalResult:
    """e_s(x, lam) = sum x^n / (n! (n+lam)^s), summed until 3 quiet terms."""
    s, x, lam = as_scalar(s), as_scalar(x), as_scalar(lam)
    tol, max_terms = _defaults(tol, max_terms)
    partial = mpmath.mpf(0)
    term = mpmath.mpf(0)
    quiet = 0
    x_mpf = to_mpf(x)
    power = mpmath.mpf(1)
    for n in range(max_terms):
        if n > 0:
            power = power * x_mpf / n
        term = power * to_mpf(real_power(add(lam, n), -s))
        partial += term
        quiet = quiet + 1 if term == 0 or abs(term) < tol * abs(partial) else 0
        if quiet >= 3:
            return EvalResult(partial, abs(term), n + 1, StopReason.TOLERANCE_MET)
    return EvalResult(partial, abs(term), max_terms, StopReason.MAX_TERMS)


# Asymptotic routes


def _policy(policy: Optional[TruncationPolicy]) -> TruncationPolicy:
    return policy if policy is not None else TruncationPolicy()


def digamma_asymptotic(
    y: ScalarLike,
    z: ScalarLike,
    policy: Optional[TruncationPolicy] = None,
    digits: Optional[int] = None,
) -> EvalResult:
    """psi(y+z) = log z + sum_{m>=1} (-1)^{m-1} B_m(y) / (m z^m)."""
    y, z = as_scalar(y), as_scalar(z)
    if y < 0:
        raise ParameterDomainError(f"y must be >= 0, got {y}")
    _require_positive(z=z)
    with _workdps(digits):
        zf = to_mpf(z)

        def term(m: int) -> Scalar:
            coefficient = bernoulli_poly(m).evaluate(y)
            return (-1) ** (m - 1) * to_mpf(coefficient) / (m * zf ** m)

        return optimal_truncate(
            AsymptoticSeries(
                term=term,
                variable="1/z",
                policy=_policy(policy),
                start=1,
                leading=mpmath.log(zf),
                name=f"psi({y}+{z})",
            )
        )


def loggamma_asymptotic(
    y: ScalarLike,
    z: ScalarLike,
    policy: Optional[TruncationPolicy] = None,
    digits: Optional[int] = None,
) -> EvalResult:
    """log Gamma(y+z) = (z+y-1/2) log z - z + log sqrt(2 pi) + sum (-1)^{m+1} B_{m+1}(y)/(m(m+1) z^m)."""
    y, z = as_scalar(y), as_scalar(z)
    if y < 0:
        raise ParameterDomainError(f"y must be >= 0, got {y}")
    _require_positive(z=z)
    with _workdps(digits):
        zf, yf = to_mpf(z), to_mpf(y)
        leading = (zf + yf - mpmath.mpf(1) / 2) * mpmath.log(zf) - zf + log_sqrt_two_pi()

        def term(m: int) -> Scalar:
            coefficient = bernoulli_poly(m + 1).evaluate(y)
            return (-1) ** (m + 1) * to_mpf(coefficient) / (m * (m + 1) * zf ** m)

        return optimal_truncate(
            AsymptoticSeries(
                term=term,
                variable="1/z",
                policy=_policy(policy),
                start=1,
                leading=leading,
                name=f"loggamma({y}+{z})",
            )
        )


def _binomial_power_term(s: Scalar, a: Scalar, m: int) -> Scalar:
    # C(-s, m) a^{-m-s}
    return to_mpf(mul(general_binomial(mul(-1, s), m), real_power(a, sub(mul(-1, s), m))))


def hurwitz_zeta_asymptotic(
    s: ScalarLike,
    a: ScalarLike,
    policy: Optional[TruncationPolicy] = None,
    digits: Optional[int] = None,
) -> EvalResult:
    """zeta(s+1, a) from s*zeta(s+1, a) = sum C(-s, m) B_m a^{-m-s}."""
    s, a = as_scalar(s), as_scalar(a)
    _require_positive(s=s, a=a)
    with _workdps(digits):
        sf = to_mpf(s)
        return optimal_truncate(
            AsymptoticSeries(
                term=lambda m: _binomial_power_term(s, a, m) * to_mpf(bernoulli_number(m)) / sf,
                variable="1/a",
                policy=_policy(policy),
                name=f"zeta({s}+1, {a})",
            )
        )


def eta_asymptotic(
    s: ScalarLike,
    a: ScalarLike,
    y: ScalarLike = 0,
    policy: Optional[TruncationPolicy] = None,
    digits: Optional[int] = None,
    form: str = "euler",
) -> EvalResult:
    """eta(s, y+a) = (1/2) sum C(-s, m) E_m(y) a^{-m-s}.

    ``form="bernoulli"`` (y = 0 only) uses E_m(0) = 2(1-2^{m+1}) B_{m+1}/(m+1).
    """
    s, a, y = as_scalar(s), as_scalar(a), as_scalar(y)
    _require_positive(s=s, a=a)
    if y < 0:
        raise ParameterDomainError(f"y must be >= 0, got {y}")
    if form not in ("euler", "bernoulli"):
        raise ParameterDomainError(f"unknown eta expansion form {form!r}")
    if form == "bernoulli" and y != 0:
        raise ParameterDomainError("the Bernoulli form needs y = 0")
    with _workdps(digits):
        return optimal_truncate(
            AsymptoticSeries(
                term=lambda m: eta_asymptotic_term(s, a, y, m, form),
                variable="1/a",
                policy=_policy(policy),
                name=f"eta({s}, {y}+{a})",
            )
        )


def eta_asymptotic_term(s: Scalar, a: Scalar, y: Scalar, m: int, form: str = "euler") -> Scalar:
    """m-th term of the eta expansion in either form."""
    if form == "bernoulli":
        coefficient = geom_poly_half_identity(m) / 2
    else:
        coefficient = euler_poly(m).evaluate(y) / 2
    return _binomial_power_term(s, a, m) * to_mpf(coefficient)


def lerch_asymptotic(
    x: ScalarLike,
    s: ScalarLike,
    a: ScalarLike,
    policy: Optional[TruncationPolicy] = None,
    digits: Optional[int] = None,
) -> EvalResult:
    """s*Phi(x,s+1,a) - log(x)*Phi(x,s,a) = sum_m B_m c_m with c_m the Taylor coefficients of x^t/(a+t)^s."""
    x, s, a = as_scalar(x), as_scalar(s), as_scalar(a)
    _require_unit_interval(x)
    _require_positive(s=s, a=a)
    with _workdps(digits):
        kernel = lerch_kernel(x, s, a)
        return optimal_truncate(
            AsymptoticSeries(
                term=lambda m: to_mpf(bernoulli_number(m)) * to_mpf(kernel.coefficient(m)),
                variable="1/a",
                policy=_policy(policy),
                name=f"lerch({x}, {s}, {a})",
            )
        )


def arakawa_kaneko_asymptotic(
    r: int,
    s: ScalarLike,
    a: ScalarLike,
    policy: Optional[TruncationPolicy] = None,
    digits: Optional[int] = None,
) -> EvalResult:
    """zeta_r(s, a) = sum C(m+s-1, m) B_m^(r) a^{-m-s}."""
    if r < 1:
        raise ParameterDomainError(f"r must be >= 1, got {r}")
    s, a = as_scalar(s), as_scalar(a)
    _require_positive(s=s, a=a)
    with _workdps(digits):

        def term(m: int) -> Scalar:
            rising = general_binomial(add(s, m - 1), m)
            return to_mpf(
                mul(mul(rising, poly_bernoulli_number(r, m)), real_power(a, sub(mul(-1, s), m)))
            )

        return optimal_truncate(
            AsymptoticSeries(
                term=term,
                variable="1/a",
                policy=_policy(policy),
                name=f"zeta_{r}({s}, {a})",
            )
        )


def polyexponential_asymptotic(
    s: ScalarLike,
    x: ScalarLike,
    lam: ScalarLike,
    policy: Optional[TruncationPolicy] = None,
    digits: Optional[int] = None,
) -> EvalResult:
    """e_s(x, lam) = e^x sum C(-s, m) phi_m(x) lam^{-m-s}."""
    s, x, lam = as_scalar(s), as_scalar(x), as_scalar(lam)
    _require_positive(lam=lam)
    with _workdps(digits):
        scale = mpmath.exp(to_mpf(x))
        length = None
        if x == 0:
            length = 1
        elif is_integer(s) and s <= 0:
            length = int(-s) + 1
        return optimal_truncate(
            AsymptoticSeries(
                term=lambda m: scale
                * _binomial_power_term(s, lam, m)
                * to_mpf(exp_poly(m).evaluate(x)),
                variable="1/lambda",
                policy=_policy(policy),
                length=length,
                name=f"e_{s}({x}, {lam})",
            )
        )


def polyexponential(
    s: ScalarLike,
    x: ScalarLike,
    lam: ScalarLike,
    policy: Optional[TruncationPolicy] = None,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
    digits: Optional[int] = None,
) -> RoutePair:
    """Direct sum (``first``) and asymptotic expansion (``second``) of e_s(x, lam)."""
    s, x, lam = as_scalar(s), as_scalar(x), as_scalar(lam)
    _require_positive(lam=lam)
    with _workdps(digits):
        direct = polyexponential_direct(s, x, lam, tol=tol, max_terms=max_terms)
    asymptotic = polyexponential_asymptotic(s, x, lam, policy=policy, digits=digits)
    return RoutePair(first=direct, second=asymptotic)


# Constants


def _arctan_inverse(n: int) -> mpmath.mpf:
    # atan(1/n) = sum (-1)^k / ((2k+1) n^{2k+1})
    x = mpmath.mpf(1) / n
    x2 = x * x
    power = x
    result = mpmath.mpf(0)
    k = 0
    while True:
        term = power / (2 * k + 1)
        if term < mpmath.eps:
            break
        result += term if k % 2 == 0 else -term
        power *= x2
        k += 1
    return result


@lru_cache(maxsize=16)
def _machin_pi(prec: int) -> mpmath.mpf:
    with mpmath.workprec(prec + 20):
        value = 16 * _arctan_inverse(5) - 4 * _arctan_inverse(239)
    with mpmath.workprec(prec):
        return +value


def machin_pi() -> mpmath.mpf:
    """pi at the current precision from 16 atan(1/5) - 4 atan(1/239)."""
    return _machin_pi(mpmath.mp.prec)


def log_sqrt_two_pi() -> mpmath.mpf:
    """log sqrt(2 pi) at the current precision."""
    return mpmath.log(2 * machin_pi()) / 2
