"""
Unit tests для оптимального усечения асимптотических рядов.

Тестируются:
- Остановка на наименьшем члене (OPTIMAL_TRUNCATION)
- Остановка по допуску, конечная длина ряда и нулевой хвост
- Предупреждения о раннем усечении
"""

from fractions import Fraction

import mpmath
import pytest

from models.results import StopReason
from services.asymptotics import AsymptoticSeries, TruncationPolicy, optimal_truncate


def euler_series_term(x):
    """m-й член ряда sum (-1)^m m! / x^(m+1)"""
    return lambda m: (-1) ** m * mpmath.factorial(m) / mpmath.mpf(x) ** (m + 1)


class TestOptimalTruncation:
    """Тесты для optimal_truncate"""

    def test_stops_at_smallest_term(self):
        term = euler_series_term(mpmath.mpf("10.5"))
        result = optimal_truncate(
            AsymptoticSeries(term=term, variable="1/x", policy=TruncationPolicy.optimal())
        )
        assert result.stop_reason is StopReason.OPTIMAL_TRUNCATION
        assert result.terms_used == 11
        assert result.error_estimate == abs(term(11))
        assert result.warning is None

    def test_early_truncation_warns(self):
        result = optimal_truncate(
            AsymptoticSeries(
                term=euler_series_term(mpmath.mpf("1.5")),
                variable="1/x",
                policy=TruncationPolicy.optimal(),
            )
        )
        assert result.terms_used == 2
        assert result.warning

    def test_tolerance_stop(self):
        result = optimal_truncate(
            AsymptoticSeries(
                term=euler_series_term(mpmath.mpf("10.5")),
                variable="1/x",
                policy=TruncationPolicy(tol=1e-3),
            )
        )
        assert result.stop_reason is StopReason.TOLERANCE_MET
        assert result.error_estimate <= 1e-3 * abs(result.value)

    def test_low_accuracy_warning(self):
        result = optimal_truncate(
            AsymptoticSeries(
                term=euler_series_term(mpmath.mpf("10.5")),
                variable="1/x",
                policy=TruncationPolicy(tol=1e-12),
            )
        )
        assert result.stop_reason is StopReason.OPTIMAL_TRUNCATION
        assert result.warning

    def test_finite_length(self):
        result = optimal_truncate(
            AsymptoticSeries(
                term=lambda m: Fraction(1, 2 ** m),
                variable="t",
                policy=TruncationPolicy.optimal(),
                length=3,
                leading=Fraction(1, 4),
            )
        )
        assert result.stop_reason is StopReason.TOLERANCE_MET
        assert result.value == 2
        assert result.terms_used == 3
        assert result.error_estimate == 0

    def test_zero_terms_are_skipped(self):
        result = optimal_truncate(
            AsymptoticSeries(
                term=lambda m: 0 if m % 2 else mpmath.mpf(1) / 10 ** m,
                variable="t",
                policy=TruncationPolicy(tol=1e-9),
            )
        )
        assert result.stop_reason is StopReason.TOLERANCE_MET
        assert float(result.value) == pytest.approx(1.0101010101, rel=1e-9)

    def test_terms_vanishing_after_third_give_exact_sum(self):
        """1 + 1/2 + 1/4 + 1/8, дальше только нули: ошибка 0"""
        terms = [Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]
        result = optimal_truncate(
            AsymptoticSeries(
                term=lambda m: terms[m] if m < len(terms) else 0,
                variable="t",
                policy=TruncationPolicy.optimal(),
            )
        )
        assert result.stop_reason is StopReason.TOLERANCE_MET
        assert result.value == mpmath.mpf("1.875")
        assert result.error_estimate == 0
        assert result.terms_used == 4
        assert result.warning is None

    def test_max_terms(self):
        result = optimal_truncate(
            AsymptoticSeries(
                term=lambda m: mpmath.mpf(1) / (m + 1) ** 2,
                variable="t",
                policy=TruncationPolicy(tol=None, max_terms=5),
            )
        )
        assert result.stop_reason is StopReason.MAX_TERMS
        assert result.terms_used == 5
        assert result.error_estimate == mpmath.mpf(1) / 25
