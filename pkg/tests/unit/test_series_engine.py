"""
Unit tests для биномиальных сумм и преобразований рядов.

Тестируются:
- BinomialSumStream и binomial_sum против формулы через числа Стирлинга
- weighted_binomial_series: точная ветка для многочленов и сходимость
- rhs_expansion и преобразования Эйлера (exp и geo)
- Ошибки области определения
"""

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from models.results import StopReason
from models.series import CoeffProvider, WeightScheme
from services.errors import MissingEvaluatorError, ParameterDomainError
from services.exact_core import stirling2
from services.poly_families import poly_bernoulli_poly
from services.providers import exponential, inverse_power, monomial, polynomial
from services.series_engine import (
    BinomialSumStream,
    _is_quiet,
    binomial_sum,
    direct_exp_series,
    direct_geo_series,
    euler_transform_exp,
    euler_transform_geo,
    guard_digits,
    lemma1_rhs,
    poly_bernoulli_poly_rep,
    prop1_series,
    rhs_expansion,
    stf_exp,
    stf_geo,
    weighted_binomial_series,
)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=8)


class TestBinomialSums:
    """Тесты для D_n = sum_k C(n,k) (-1)^k f(y + z k)"""

    def test_guard_digits(self):
        assert guard_digits(0) == 10
        assert guard_digits(100) == 40

    def test_stream_matches_stirling_formula(self):
        """sum_k C(n,k) (-1)^k k^m = (-1)^n n! S(m,n)"""
        stream = BinomialSumStream(lambda k: Fraction(k) ** 5)
        for n, d in zip(range(9), stream):
            assert d == (-1) ** n * math.factorial(n) * stirling2(5, n)

    def test_stream_accepts_sequences(self):
        stream = BinomialSumStream([Fraction(1), Fraction(1, 2), Fraction(1, 3)])
        assert [next(stream) for _ in range(3)] == [1, Fraction(1, 2), Fraction(1, 3)]
        assert stream.exact

    def test_stream_switches_to_mpf(self):
        stream = BinomialSumStream(lambda k: mpmath.log(k + 2))
        next(stream)
        next(stream)
        assert not stream.exact

    @hypothesis_settings(max_examples=30, deadline=None)
    @given(n=st.integers(min_value=0, max_value=8), y=rationals, z=rationals)
    def test_binomial_sum_equals_stirling_side(self, n, y, z):
        f = polynomial([1, -2, Fraction(1, 3), 0, 5])
        assert binomial_sum(f, n, y, z) == lemma1_rhs(f.truncate(8), n, y, z)

    def test_negative_order_rejected(self):
        with pytest.raises(ParameterDomainError):
            binomial_sum(monomial(2), -1, 0, 1)

    def test_missing_evaluator(self):
        provider = CoeffProvider(name="coefficients only", coefficient=lambda m: Fraction(1))
        with pytest.raises(MissingEvaluatorError):
            binomial_sum(provider, 2, 0, 1)

    def test_prop1_series(self):
        """sum_{n>=1} D_n / n = -f'(0) z для многочлена"""
        f = polynomial([1, 2, 3])
        assert prop1_series(f, Fraction(1, 2), 5) == -1


class TestWeightedSeries:
    """Тесты для weighted_binomial_series и правой части через ядра"""

    def test_polynomial_is_summed_exactly(self):
        result = weighted_binomial_series(monomial(2), WeightScheme.exp(Fraction(1, 2)))
        assert result.value == Fraction(-1, 4)
        assert result.stop_reason is StopReason.TOLERANCE_MET
        assert result.terms_used == 3

    @pytest.mark.parametrize(
        "weight",
        [
            WeightScheme.exp(Fraction(1, 3)),
            WeightScheme.geo(Fraction(-2, 5)),
            WeightScheme.inv_pow(2),
            WeightScheme.half_shift(),
            WeightScheme.half(),
            WeightScheme.harmonic(Fraction(1, 2)),
            WeightScheme.int_pow(Fraction(2, 3), 3),
        ],
        ids=lambda w: w.describe(),
    )
    def test_series_matches_expansion(self, weight):
        f = polynomial([2, Fraction(-1, 2), 0, 3, 1])
        y, z = Fraction(1, 3), Fraction(-2, 7)
        series = weighted_binomial_series(f, weight, y, z)
        assert series.value == rhs_expansion(f.truncate(4), weight, y, z)

    def test_alternating_harmonic_series(self):
        """sum 1/2^(n+1) D_n для 1/(1+t) даёт ln 2"""
        result = weighted_binomial_series(inverse_power(1), WeightScheme.half_shift(), tol=1e-20)
        assert result.stop_reason is StopReason.TOLERANCE_MET
        assert abs(result.value - mpmath.log(2)) < mpmath.mpf("1e-18")

    def test_quiet_rule_is_strict(self):
        """Член, равный tol*|сумма|, ещё не считается малым"""
        assert not _is_quiet(mpmath.mpf(1), mpmath.mpf(4), 0.25)
        assert _is_quiet(mpmath.mpf("0.9"), mpmath.mpf(4), 0.25)
        assert _is_quiet(mpmath.mpf(0), mpmath.mpf(0), 0.25)

    def test_exponential_at_negative_step(self):
        """e^t, веса 1/(n+1), z = -1: z/(e^z - 1) = -1/(e^(-1) - 1)"""
        result = weighted_binomial_series(exponential(), WeightScheme.inv_pow(1), 0, -1, tol=1e-20)
        expected = -1 / (mpmath.exp(-1) - 1)
        assert result.stop_reason is StopReason.TOLERANCE_MET
        assert abs(result.value - expected) < mpmath.mpf("1e-18")
        assert abs(result.value - expected) <= result.error_estimate + mpmath.mpf("1e-40")
        assert float(result.value) == pytest.approx(1.5819767, abs=1e-7)

    def test_max_terms_reported(self):
        result = weighted_binomial_series(
            inverse_power(1), WeightScheme.inv_pow(1), n_max=10, tol=1e-30
        )
        assert result.stop_reason is StopReason.MAX_TERMS
        assert result.terms_used == 11

    def test_n_max_below_start_rejected(self):
        with pytest.raises(ParameterDomainError):
            weighted_binomial_series(inverse_power(1), WeightScheme.harmonic(Fraction(1, 2)), n_max=0)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_poly_bernoulli_representation(self, r):
        for m in range(7):
            y = Fraction(2, 5)
            assert poly_bernoulli_poly_rep(r, m, y) == poly_bernoulli_poly(r, m).evaluate(y)


class TestEulerTransforms:
    """Тесты для преобразований Эйлера и рядов через phi_m и omega_m"""

    def test_geo_transform_sides_agree(self):
        sums = euler_transform_geo(lambda k: Fraction(1, k + 1), Fraction(1, 5), 60)
        assert len(sums.lhs) == 61
        assert sums.final_deviation < Fraction(1, 10 ** 20)

    def test_geo_transform_domain(self):
        with pytest.raises(ParameterDomainError):
            euler_transform_geo(lambda k: Fraction(1), Fraction(3, 2), 5)

    def test_exp_transform_sides_agree(self):
        sums = euler_transform_exp(lambda k: Fraction(1, k + 1), Fraction(1, 2), 1, 40)
        assert sums.final_deviation < mpmath.mpf("1e-25")

    def test_exp_transform_of_constant(self):
        sums = euler_transform_exp([Fraction(1)] * 31, Fraction(2, 3), 1, 30)
        assert sums.rhs[-1] == 1
        assert abs(sums.lhs[-1] - 1) < mpmath.mpf("1e-20")

    def test_stf_exp_dobinski(self):
        """e sum n^2/n! = 2e"""
        value = stf_exp(monomial(2).truncate(2), 1, 1)
        assert abs(value - 2 * mpmath.e) < mpmath.mpf("1e-40")
        direct = direct_exp_series(lambda n: Fraction(n) ** 2, 1, 80)
        assert abs(value - mpmath.mpf(direct.numerator) / direct.denominator) < mpmath.mpf("1e-40")

    def test_stf_geo_exact(self):
        """sum n / 2^n = 2"""
        assert stf_geo(monomial(1).truncate(1), Fraction(1, 2), 1) == 2
        direct = direct_geo_series(lambda n: Fraction(n), Fraction(1, 2), 200)
        assert abs(direct - 2) < Fraction(1, 10 ** 50)

    def test_stf_geo_domain(self):
        with pytest.raises(ParameterDomainError):
            stf_geo(monomial(1).truncate(1), 1, 1)
