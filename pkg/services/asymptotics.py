"""Optimal truncation of asymptotic series."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import mpmath

from config.settings import settings
from models.results import EvalResult, StopReason
from utils.scalars import Scalar, ScalarLike, to_mpf

logger = logging.getLogger(__name__)

LOW_ACCURACY_WARNING = "optimal truncation error {estimate} exceeds tolerance {tol}"
EARLY_TRUNCATION_WARNING = (
    "truncated after {terms} term(s); the expansion variable is too small for this series"
)

# A run of this many zero terms reaching max_terms ends a finite expansion.
ZERO_TAIL_TERMS = 8


@dataclass(frozen=True)
class TruncationPolicy:
    """When to stop summing an asymptotic series.

    ``tol=None`` means pure optimal truncation (stop at the smallest term).
    """

    tol: Optional[float] = field(default_factory=lambda: settings.tol)
    max_terms: int = field(default_factory=lambda: settings.asymptotic_max_terms)
    min_terms: int = 2

    @classmethod
    def optimal(cls) -> "TruncationPolicy":
        return cls(tol=None)


@dataclass(frozen=True)
class AsymptoticSeries:
    """leading + sum_{m >= start} term(m), asymptotic in ``variable``.

    ``length`` is set when only finitely many terms can be nonzero.
    """

    term: Callable[[int], ScalarLike]
    variable: str
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)
    start: int = 0
    leading: ScalarLike = 0
    length: Optional[int] = None
    name: str = ""


def optimal_truncate(series: AsymptoticSeries) -> EvalResult:
    """Sum terms while their magnitudes decrease.

    Zero terms are absorbed without affecting the comparison. The estimate is
    the magnitude of the first omitted nonzero term. A series whose terms stay
    zero up to max_terms is summed exactly with estimate 0.
    """
    policy = series.policy
    value = to_mpf(series.leading)
    end = series.start + policy.max_terms
    if series.length is not None:
        end = min(end, series.start + series.length)
    previous: Optional[Scalar] = None
    last_included = series.start - 1
    reason = StopReason.MAX_TERMS
    estimate: Scalar = mpmath.mpf(0)

    m = series.start
    while m < end:
        term = to_mpf(series.term(m))
        magnitude = abs(term)
        if magnitude == 0:
            m += 1
            continue
        if previous is not None and magnitude >= previous:
            reason, estimate = StopReason.OPTIMAL_TRUNCATION, magnitude
            break
        if policy.tol is not None and value != 0 and magnitude <= policy.tol * abs(value):
            reason, estimate = StopReason.TOLERANCE_MET, magnitude
            break
        value += term
        previous = magnitude
        last_included = m
        m += 1
    else:
        if series.length is not None and m == series.start + series.length:
            reason = StopReason.TOLERANCE_MET
            last_included = m - 1
        elif m - last_included > ZERO_TAIL_TERMS:
            reason = StopReason.TOLERANCE_MET
        elif previous is not None:
            estimate = previous

    terms_used = last_included - series.start + 1
    warning = None
    if reason is StopReason.OPTIMAL_TRUNCATION:
        if terms_used <= policy.min_terms:
            warning = EARLY_TRUNCATION_WARNING.format(terms=terms_used)
        elif policy.tol is not None and estimate > policy.tol * abs(value):
            warning = LOW_ACCURACY_WARNING.format(
                estimate=mpmath.nstr(estimate, 5), tol=policy.tol
            )
    if warning:
        logger.warning(f"{series.name or 'asymptotic series'} in {series.variable}: {warning}")
    logger.debug(
        f"{series.name or 'asymptotic series'}: {terms_used} terms, {reason.value}, "
        f"estimate {mpmath.nstr(estimate, 5)}"
    )
    return EvalResult(
        value=value,
        error_estimate=estimate,
        terms_used=terms_used,
        stop_reason=reason,
        warning=warning,
    )
