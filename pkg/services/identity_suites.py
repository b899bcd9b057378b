"""Identity suites: parameter grids over the exact and numeric identities.

Each suite yields IdentityCase objects; exact cases pass only on equality of
rationals, numeric cases on an absolute tolerance. Grids are drawn from
``random.Random(seed)``, so a fixed seed reproduces the same cases.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional

import mpmath

from models.polynomial import PolynomialExact
from models.report import CliConfig, Report
from models.results import EvalResult, StopReason
from models.series import CoeffProvider, TruncatedSeries, WeightScheme
from services.errors import UsageError
from services.exact_core import bell, lemma2_sum, stirling1_signed, stirling2
from services.poly_families import (
    bernoulli_number,
    bernoulli_poly,
    euler_generating_coefficients,
    euler_number,
    euler_poly,
    exp_poly,
    geom_poly,
    geom_poly_half_identity,
    geometric_half_value,
    geometric_moment_sum,
    half_logistic_taylor,
    poly_bernoulli_number,
    poly_bernoulli_poly,
)
from services.providers import binomial_poly, inverse_power, monomial, polynomial
from services.reports import build_report, exact_report
from services.series_engine import (
    binomial_sum,
    direct_exp_series,
    direct_geo_series,
    euler_transform_exp,
    euler_transform_geo,
    grid_values,
    lemma1_rhs,
    poly_bernoulli_expansion,
    poly_bernoulli_poly_rep,
    prop1_series,
    rhs_expansion,
    stf_exp,
    stf_geo,
    stf_geo_negated,
    weighted_binomial_series,
)
from texts.cli import LOG_SUITE_FINISHED, UNKNOWN_SUITE_ERROR
from utils.format_output import format_scalar
from utils.scalars import Scalar, to_mpf, total

logger = logging.getLogger(__name__)

COMMAND = "identity-check"
THEOREM3_TOLERANCE = 1e-8
MOMENT_TOLERANCE = 1e-12
SERIES_TOLERANCE = 1e-25
# Step for the direct-sum checks; the Stirling sides at x > 0 need z well below 1/10.
DIRECT_STEP = Fraction(1, 100)


@dataclass(frozen=True)
class IdentityCase:
    """One instance of an identity: lhs must equal rhs.

    ``tolerance`` is None for exact identities, else the allowed absolute deviation.
    """

    label: str
    lhs: Scalar
    rhs: Scalar
    terms: int
    params: Dict[str, str] = field(default_factory=dict)
    tolerance: Optional[float] = None


SuiteBuilder = Callable[[int, random.Random], Iterator[IdentityCase]]


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    default_order: int
    build: SuiteBuilder


def _text(value: Scalar) -> str:
    return format_scalar(value, 15)


def _rational(rng: random.Random, bound: int = 9, denominator: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, denominator))


def _nonzero_rational(rng: random.Random) -> Fraction:
    value = _rational(rng)
    while value == 0:
        value = _rational(rng)
    return value


def _random_poly(rng: random.Random, degree: int) -> PolynomialExact:
    coefficients = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(degree)]
    lead = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
    return PolynomialExact(tuple(coefficients) + (lead,))


def _weighted_case(
    label: str, p: PolynomialExact, w: WeightScheme, y: Scalar, z: Scalar, rhs: Scalar
) -> IdentityCase:
    result = weighted_binomial_series(polynomial(p), w, y, z)
    return IdentityCase(
        label=label,
        lhs=result.value,
        rhs=rhs,
        terms=result.terms_used,
        params={"f": str(p), "w": w.describe(), "y": _text(y), "z": _text(z)},
    )


# Exact core


def _lemma2(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for m in range(1, order + 1):
        yield IdentityCase("lemma2", lemma2_sum(m), -1 if m == 1 else 0, m, {"m": str(m)})


def _remark1(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for _ in range(5):
        y, z = _rational(rng), _nonzero_rational(rng)
        for n in range(order + 1):
            for m in range(n + 1):
                lhs = binomial_sum(monomial(m), n, y, z)
                rhs = 0 if m < n else (-1) ** n * math.factorial(n) * z ** n
                label = "vanishing" if m < n else "leading"
                params = {"m": str(m), "n": str(n), "y": _text(y), "z": _text(z)}
                yield IdentityCase(label, lhs, rhs, n + 1, params)


def _lemma1(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for degree in (2, 5, 8):
        p = _random_poly(rng, degree)
        y, z = _rational(rng), _nonzero_rational(rng)
        series = TruncatedSeries.from_polynomial(p)
        for n in range(order + 1):
            yield IdentityCase(
                "lemma1",
                binomial_sum(polynomial(p), n, y, z),
                lemma1_rhs(series, n, y, z),
                n + 1,
                {"f": str(p), "n": str(n), "y": _text(y), "z": _text(z)},
            )


def _prop1(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for _ in range(10):
        degree = rng.randint(1, max(order, 1))
        p = _random_poly(rng, degree)
        z = _nonzero_rational(rng)
        lhs = prop1_series(polynomial(p), z, degree)
        yield IdentityCase("prop1", lhs, -p.coefficient(1) * z, degree, {"f": str(p), "z": _text(z)})


# Binomial exponential and geometric series


def _transform_suite(make_weight: Callable[[Fraction], WeightScheme], label: str) -> SuiteBuilder:
    def build(order: int, rng: random.Random) -> Iterator[IdentityCase]:
        for degree in range(order + 1):
            p = _random_poly(rng, degree)
            series = TruncatedSeries.from_polynomial(p)
            w = make_weight(_rational(rng))
            for y in (Fraction(0), _rational(rng)):
                z = _nonzero_rational(rng)
                yield _weighted_case(label, p, w, y, z, rhs_expansion(series, w, y, z))

    return build


def _weighted(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for degree in range(1, order + 1):
        p = _random_poly(rng, degree)
        series = TruncatedSeries.from_polynomial(p)
        x, y, z = _rational(rng), _rational(rng), _nonzero_rational(rng)
        for r in (1, 2, 3):
            w = WeightScheme.int_pow(x, r)
            yield _weighted_case("int-pow", p, w, y, z, rhs_expansion(series, w, y, z))
        w = WeightScheme.harmonic(x)
        yield _weighted_case("harmonic", p, w, Fraction(0), z, rhs_expansion(series, w, 0, z))


def _corollary1(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for degree in range(order + 1):
        p = _random_poly(rng, degree)
        z = _nonzero_rational(rng)
        rhs = total(a * bell(m) * z ** m for m, a in enumerate(p.coefficients))
        yield _weighted_case("bell", p, WeightScheme.exp(-1), Fraction(0), z, rhs)


def _corollary2(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for degree in range(order + 1):
        p = _random_poly(rng, degree)
        series = TruncatedSeries.from_polynomial(p)
        y, z = _rational(rng), _nonzero_rational(rng)
        for r in (1, 2, 3):
            w = WeightScheme.inv_pow(r)
            yield _weighted_case("poly-bernoulli", p, w, y, z, poly_bernoulli_expansion(series, r, y, z))
            plain = total(
                a * (-z) ** m * poly_bernoulli_number(r, m) for m, a in enumerate(p.coefficients)
            )
            yield _weighted_case("poly-bernoulli-numbers", p, w, Fraction(0), z, plain)
        w = WeightScheme.inv_pow(1)
        shifted = total(
            a * z ** m * bernoulli_poly(m).evaluate(y / z) for m, a in enumerate(p.coefficients)
        )
        yield _weighted_case("bernoulli-poly", p, w, y, z, shifted)
        plain = total(a * z ** m * bernoulli_number(m) for m, a in enumerate(p.coefficients))
        yield _weighted_case("bernoulli", p, w, Fraction(0), z, plain)


def _corollary3(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for degree in range(order + 1):
        p = _random_poly(rng, degree)
        z = _nonzero_rational(rng)
        rhs = total(
            Fraction(1 - 2 ** (m + 1), m + 1) * a * bernoulli_number(m + 1) * z ** m
            for m, a in enumerate(p.coefficients)
        )
        yield _weighted_case("half-shift", p, WeightScheme.half_shift(), Fraction(0), z, rhs)


def _corollary4(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for degree in range(order + 1):
        p = _random_poly(rng, degree)
        y = _rational(rng)
        rhs = total(a * euler_poly(m).evaluate(y) for m, a in enumerate(p.coefficients))
        yield _weighted_case("euler-poly", p, WeightScheme.half(), y, Fraction(1), rhs)
        numbers = total(
            a * euler_number(m) / 2 ** m for m, a in enumerate(p.coefficients)
        )
        yield _weighted_case("euler-numbers", p, WeightScheme.half(), Fraction(1, 2), Fraction(1), numbers)


def _examples(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for p in range(order + 1):
        z = _nonzero_rational(rng)
        f = binomial_poly(p)
        for n in range(p + 2):
            rhs = Fraction(
                (-1) ** n * math.factorial(n), math.factorial(p)
            ) * total(stirling1_signed(p, m) * stirling2(m, n) * z ** m for m in range(p + 1))
            yield IdentityCase(
                "todorov", binomial_sum(f, n, 0, z), rhs, n + 1, {"p": str(p), "n": str(n), "z": _text(z)}
            )
        x = _rational(rng)
        for w, family in ((WeightScheme.exp(x), exp_poly), (WeightScheme.geo(x), geom_poly)):
            result = weighted_binomial_series(f, w, 0, z)
            rhs = total(
                Fraction(stirling1_signed(p, m), math.factorial(p)) * family(m).evaluate(-x) * z ** m
                for m in range(p + 1)
            )
            yield IdentityCase(
                "binomial-poly",
                result.value,
                rhs,
                result.terms_used,
                {"p": str(p), "w": w.describe(), "z": _text(z)},
            )


# Number families


def _geometric_half(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for m in range(order + 1):
        closed = geom_poly_half_identity(m)
        yield IdentityCase("geom-poly", geom_poly(m).evaluate(Fraction(-1, 2)), closed, m + 1, {"m": str(m)})
        yield IdentityCase("euler-poly-at-0", euler_poly(m).evaluate(0), closed, m + 1, {"m": str(m)})


def _poly_bernoulli(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    for r in (1, 2, 3):
        for m in range(order + 1):
            y = _rational(rng)
            yield IdentityCase(
                "finite-difference",
                poly_bernoulli_poly_rep(r, m, y),
                poly_bernoulli_poly(r, m).evaluate(y),
                m + 1,
                {"r": str(r), "m": str(m), "y": _text(y)},
            )
    for m in range(order + 1):
        signed = poly_bernoulli_poly(1, m)
        classical = bernoulli_poly(m)
        for k in range(m + 1):
            yield IdentityCase(
                "reflection",
                signed.coefficient(k),
                (-1) ** (m + k) * classical.coefficient(k),
                m + 1,
                {"m": str(m), "k": str(k)},
            )
        yield IdentityCase(
            "numbers", poly_bernoulli_number(1, m), (-1) ** m * bernoulli_number(m), m + 1, {"n": str(m)}
        )


def _moment_cutoff(m: int, x: float) -> int:
    # smallest N with N^m |x|^N < 1e-20, past the maximum of n^m |x|^n
    n = max(1, math.ceil(m / -math.log(abs(x))))
    while n ** m * abs(x) ** n >= 1e-20:
        n += 1
    return n


def _euler_bridge(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    logistic = half_logistic_taylor(order + 1)
    for m in range(order + 1):
        yield IdentityCase(
            "half-logistic", logistic[m], Fraction(geometric_half_value(m), math.factorial(m)), m + 1, {"m": str(m)}
        )
    for x in (Fraction(0), Fraction(1, 2), _rational(rng)):
        coefficients = euler_generating_coefficients(x, order + 1)
        for m in range(order + 1):
            yield IdentityCase(
                "generating-function",
                coefficients[m] * math.factorial(m),
                euler_poly(m).evaluate(x),
                m + 1,
                {"m": str(m), "x": _text(x)},
            )
    halves = euler_generating_coefficients(Fraction(1, 2), order + 1)
    for m in range(order + 1):
        yield IdentityCase(
            "euler-numbers", euler_number(m), 2 ** m * halves[m] * math.factorial(m), m + 1, {"m": str(m)}
        )
    for m in range(min(order, 8) + 1):
        for x in ("0.25", "-0.25", "0.45", "-0.45"):
            cutoff = _moment_cutoff(m, float(x))
            partial, closed = geometric_moment_sum(m, mpmath.mpf(x), cutoff)
            yield IdentityCase(
                "geometric-moments",
                partial,
                closed,
                cutoff + 1,
                {"m": str(m), "x": x},
                tolerance=MOMENT_TOLERANCE * float(abs(to_mpf(closed))),
            )


# Euler-type transformations of (1 + t)^(-s)


def _theorem3(order: int, rng: random.Random) -> Iterator[IdentityCase]:
    z = Fraction(1, 10)
    n_max = max(order, 80)
    for s in (1, 2, 3):
        f = inverse_power(s)
        values = grid_values(f, z)
        truncated = f.truncate(order)
        for x in (Fraction(1, 5), Fraction(3, 10)):
            params = {"s": str(s), "z": _text(z), "x": _text(x)}
            binomial_exp = weighted_binomial_series(f, WeightScheme.exp(x), 0, z, tol=SERIES_TOLERANCE)
            euler_exp = euler_transform_exp(values, x, 1, n_max).lhs[-1]
            stirling_exp = rhs_expansion(truncated, WeightScheme.exp(x), 0, z)
            members = {
                "binomial": (binomial_exp.value, binomial_exp.terms_used),
                "euler": (euler_exp, n_max + 1),
                "stirling": (stirling_exp, order + 1),
            }
            yield from _pairs("exponential", members, params)

            binomial_geo = weighted_binomial_series(f, WeightScheme.geo(x), 0, z, tol=SERIES_TOLERANCE)
            euler_geo = euler_transform_geo(values, x, n_max).lhs[-1]
            stirling_geo = stf_geo_negated(truncated, x, z)
            members = {
                "binomial": (binomial_geo.value, binomial_geo.terms_used),
                "euler": (euler_geo, n_max + 1),
                "stirling": (stirling_geo, order + 1),
            }
            yield from _pairs("geometric", members, params)

            yield from _direct_pairs(f, s, x, order, n_max)


def _direct_pairs(
    f: CoeffProvider, s: int, x: Fraction, order: int, n_max: int
) -> Iterator[IdentityCase]:
    """Direct sums sum x^n/n! f(zn) and sum x^n f(zn) against their Stirling sides."""
    z = DIRECT_STEP
    values = grid_values(f, z)
    truncated = f.truncate(order)
    params = {"s": str(s), "z": _text(z), "x": _text(x)}
    members = {
        "direct": (direct_exp_series(values, x, n_max), n_max + 1),
        "stirling": (stf_exp(truncated, x, z), order + 1),
    }
    yield from _pairs("exponential", members, params)
    members = {
        "direct": (direct_geo_series(values, x, n_max), n_max + 1),
        "stirling": (stf_geo(truncated, x, z), order + 1),
    }
    yield from _pairs("geometric", members, params)


def _pairs(label: str, members: Dict[str, tuple], params: Dict[str, str]) -> Iterator[IdentityCase]:
    names = list(members)
    for i, first in enumerate(names):
        for second in names[i + 1:]:
            (lhs, lhs_terms), (rhs, rhs_terms) = members[first], members[second]
            yield IdentityCase(
                f"{label}:{first}={second}",
                lhs,
                rhs,
                max(lhs_terms, rhs_terms),
                params,
                tolerance=THEOREM3_TOLERANCE,
            )


SUITES: Dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("lemma1", "binomial sums of polynomials vs the Stirling expansion", 10, _lemma1),
        Suite("lemma2", "sum_n S(m,n)(n-1)!(-1)^n = -[m = 1]", 30, _lemma2),
        Suite("remark1", "vanishing and leading binomial sums of monomials", 8, _remark1),
        Suite("prop1", "sum_n D_n / n = -f'(0) z", 6, _prop1),
        Suite("be", "binomial exponential series", 6, _transform_suite(WeightScheme.exp, "exp")),
        Suite("bg", "binomial geometric series", 6, _transform_suite(WeightScheme.geo, "geo")),
        Suite("weighted", "x^n/(n+1)^r and x^n/n weights", 6, _weighted),
        Suite("corollary1", "x = -1 exponential series and Bell numbers", 8, _corollary1),
        Suite("corollary2", "1/(n+1)^r weights and poly-Bernoulli polynomials", 6, _corollary2),
        Suite("corollary3", "1/2^(n+1) weights and Bernoulli numbers", 6, _corollary3),
        Suite("corollary4", "1/2^n weights and Euler polynomials", 6, _corollary4),
        Suite("examples", "binomial sums of C(zk, p)", 5, _examples),
        Suite("euler-bridge", "geometric polynomials, Euler polynomials and 2/(e^t+1)", 10, _euler_bridge),
        Suite("theorem3", "Euler-type transformations of (1+t)^(-s), Stirling side truncated at max-order", 40, _theorem3),
        Suite("poly-bernoulli", "poly-Bernoulli polynomials by finite differences", 10, _poly_bernoulli),
        Suite("geometric-half", "omega_m(-1/2) closed form", 30, _geometric_half),
    )
}


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise UsageError(UNKNOWN_SUITE_ERROR.format(name=name, available=", ".join(SUITES))) from None


def case_report(suite: str, case: IdentityCase, config: CliConfig) -> Report:
    params = {"suite": suite, "case": case.label, **case.params}
    if case.tolerance is None:
        return exact_report(COMMAND, params, case.lhs, case.rhs, case.terms, config.digits)
    result = EvalResult(
        value=to_mpf(case.lhs),
        error_estimate=mpmath.mpf(0),
        terms_used=case.terms,
        stop_reason=StopReason.TOLERANCE_MET,
    )
    return build_report(
        COMMAND, params, result, config.digits, config.tol, oracle=case.rhs, allowed=case.tolerance
    )


def run_suite(
    name: str, config: CliConfig, max_order: Optional[int] = None, seed: int = 0
) -> List[Report]:
    """Evaluate every case of a suite and return one Report per case."""
    suite = get_suite(name)
    order = suite.default_order if max_order is None else max_order
    rng = random.Random(seed)
    with mpmath.workdps(config.digits):
        reports = [case_report(name, case, config) for case in suite.build(order, rng)]
    failed = sum(1 for r in reports if r.status.value == "FAIL")
    logger.info(
        LOG_SUITE_FINISHED.format(
            suite=name, passed=len(reports) - failed, failed=failed, total=len(reports)
        )
    )
    return reports


__all__ = ["IdentityCase", "SUITES", "Suite", "get_suite", "run_suite"]
