"""
Unit tests для каталога функций и таблиц.

Тестируются:
- Разбор параметров key=value и значения по умолчанию
- Ошибки использования: неизвестная функция, параметр, маршрут
- Маршруты и независимые значения
- Построение таблиц build_table
"""

from fractions import Fraction

import mpmath
import pytest

from services.catalog import (
    ASYMPTOTIC,
    SERIES,
    ParamSpec,
    get_function,
    loggamma_reference,
    parse_assignments,
)
from services.errors import ParameterDomainError, UsageError
from services.tables import build_table, get_family


class TestParsing:
    """Тесты для разбора параметров"""

    def test_assignments(self):
        assert parse_assignments(["s=1", " a = 1/2 "]) == {"s": "1", "a": "1/2"}

    @pytest.mark.parametrize("token", ["s", "=1", "s="])
    def test_bad_token(self, token):
        with pytest.raises(UsageError):
            parse_assignments([token])

    def test_defaults_are_filled(self):
        values = get_function("eta").parse({"s": "1"})
        assert values == {"s": Fraction(1), "a": Fraction(1), "y": Fraction(0)}

    def test_missing_parameter(self):
        with pytest.raises(UsageError):
            get_function("zeta").parse({})

    def test_unknown_parameter(self):
        with pytest.raises(UsageError):
            get_function("zeta").parse({"s": "1", "q": "2"})

    def test_real_values(self):
        value = ParamSpec("z").convert("digamma", "2.5e0")
        assert value == Fraction(5, 2) or value == mpmath.mpf("2.5")

    def test_not_a_number(self):
        with pytest.raises(UsageError):
            ParamSpec("s").convert("zeta", "abc")

    def test_integer_parameter(self):
        spec = ParamSpec("r", integer=True)
        assert spec.convert("arakawa-kaneko", "2") == 2
        with pytest.raises(UsageError):
            spec.convert("arakawa-kaneko", "3/2")

    def test_choices(self):
        with pytest.raises(UsageError):
            get_function("digamma").parse({"z": "1", "form": "other"})


class TestCatalog:
    """Тесты для записей каталога"""

    def test_unknown_function(self):
        with pytest.raises(UsageError):
            get_function("gamma")

    def test_routes(self):
        assert get_function("zeta").routes == [SERIES, ASYMPTOTIC]
        assert get_function("lerch-alt").routes == [SERIES]
        assert get_function("loggamma").default_route == ASYMPTOTIC

    def test_missing_route(self, cli_config):
        entry = get_function("lerch-alt")
        values = entry.parse({"x": "1/2", "s": "1"})
        with pytest.raises(UsageError):
            entry.evaluate(ASYMPTOTIC, values, cli_config())

    def test_evaluate_and_oracle(self, cli_config):
        entry = get_function("zeta")
        config = cli_config()
        values = entry.parse({"s": "1", "a": "2"})
        result = entry.evaluate(SERIES, values, config)
        assert abs(result.value - entry.oracle_value(values, config)) < 1e-11

    def test_domain_error_passes_through(self, cli_config):
        entry = get_function("zeta")
        with pytest.raises(ParameterDomainError):
            entry.evaluate(SERIES, entry.parse({"s": "-1"}), cli_config())

    def test_arakawa_kaneko_oracle_only_for_first_order(self, cli_config):
        entry = get_function("arakawa-kaneko")
        assert entry.oracle_value(entry.parse({"r": "2", "s": "1"}), cli_config()) is None

    def test_loggamma_reference(self):
        label, value = loggamma_reference({"y": Fraction(0), "z": Fraction(10)})
        assert label == "log(9!)"
        assert abs(value - mpmath.log(362880)) < 1e-40
        label, _ = loggamma_reference({"y": Fraction(1, 2), "z": Fraction(10)})
        assert label == "mpmath.loggamma"


class TestTables:
    """Тесты для build_table"""

    def test_bernoulli(self):
        rows = build_table("bernoulli", 6, {}, 20)
        assert [row.entries[0] for row in rows] == ["1", "-1/2", "1/6", "0", "-1/30", "0", "1/42"]

    def test_bell(self):
        rows = build_table("bell", 5, {}, 20)
        assert [row.entries[0] for row in rows] == ["1", "1", "2", "5", "15", "52"]

    def test_poly_bernoulli(self):
        rows = build_table("poly-bernoulli", 4, {"q": "2"}, 20)
        assert [row.entries[0] for row in rows] == ["1", "1/4", "-1/36", "-1/24", "7/450"]

    def test_polynomial_rows(self):
        rows = build_table("geom-poly", 3, {}, 20)
        assert rows[3].entries == ["0", "1", "6", "6"]
        assert rows[0].entries == ["1"]

    def test_triangle_rows(self):
        rows = build_table("stirling1", 3, {}, 20)
        assert rows[3].entries == ["0", "2", "-3", "1"]

    def test_float_output(self):
        rows = build_table("bernoulli", 2, {}, 5, as_float=True)
        assert rows[2].entries == ["0.16667"]

    def test_unknown_family(self):
        with pytest.raises(UsageError):
            get_family("catalan")

    def test_unknown_family_parameter(self):
        with pytest.raises(UsageError):
            build_table("bell", 3, {"q": "2"}, 20)

    def test_poly_bernoulli_order_domain(self):
        with pytest.raises(ParameterDomainError):
            build_table("poly-bernoulli", 2, {"q": "0"}, 20)
