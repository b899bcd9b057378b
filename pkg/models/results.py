"""Results returned by every numeric evaluator."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import mpmath

from utils.scalars import Scalar


class StopReason(str, Enum):
    TOLERANCE_MET = "TOLERANCE_MET"
    OPTIMAL_TRUNCATION = "OPTIMAL_TRUNCATION"
    MAX_TERMS = "MAX_TERMS"


@dataclass(frozen=True)
class EvalResult:
    """Value of a truncated series with an error estimate.

    For convergent series the estimate is the last included term; for
    asymptotic series it is the first omitted term. Estimates, not bounds.
    """

    value: Scalar
    error_estimate: Scalar
    terms_used: int
    stop_reason: StopReason
    warning: Optional[str] = None

    def __post_init__(self) -> None:
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be >= 0")

    @property
    def converged(self) -> bool:
        return self.stop_reason is not StopReason.MAX_TERMS

    @property
    def relative_error(self) -> Scalar:
        if self.value == 0:
            return mpmath.mpf(self.error_estimate)
        return abs(self.error_estimate / self.value)


@dataclass(frozen=True)
class RoutePair:
    """Two evaluations of related quantities, e.g. the two Lerch series."""

    first: EvalResult
    second: EvalResult
