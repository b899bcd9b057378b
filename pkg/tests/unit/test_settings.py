"""
Unit tests для настроек и CliConfig.

Тестируются:
- Значения по умолчанию и переменные окружения BINOMIAL_SERIES_*
- Валидация уровня логирования и числовых ограничений
- CliConfig: неизменяемость и ограничения digits/tol/max_terms
"""

import pytest
from pydantic import ValidationError

from config.settings import Settings
from models.report import CliConfig


class TestSettings:
    """Тесты для Settings"""

    def test_defaults(self, monkeypatch):
        for name in ("BINOMIAL_SERIES_DIGITS", "BINOMIAL_SERIES_TOL", "LOG_LEVEL"):
            monkeypatch.delenv(name, raising=False)
        settings = Settings(_env_file=None)
        assert settings.digits == 50
        assert settings.max_terms == 10000
        assert settings.tol == 1e-12
        assert settings.shift_target == 24.0
        assert settings.output_format == "json"
        assert settings.log_level == "WARNING"

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("BINOMIAL_SERIES_DIGITS", "80")
        monkeypatch.setenv("BINOMIAL_SERIES_FORMAT", "csv")
        monkeypatch.setenv("LOG_LEVEL", "debug")
        settings = Settings(_env_file=None)
        assert settings.digits == 80
        assert settings.output_format == "csv"
        assert settings.log_level == "DEBUG"

    def test_invalid_log_level(self, monkeypatch):
        monkeypatch.setenv("LOG_LEVEL", "chatty")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)

    def test_precision_lower_bound(self, monkeypatch):
        monkeypatch.setenv("BINOMIAL_SERIES_DIGITS", "5")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)


class TestCliConfig:
    """Тесты для CliConfig"""

    def test_overrides(self, cli_config):
        config = cli_config(digits=30, tol=1e-8, output_format="plain")
        assert config.digits == 30
        assert config.tol == 1e-8
        assert config.output_format == "plain"

    @pytest.mark.parametrize(
        "overrides",
        [{"digits": 9}, {"tol": 0}, {"max_terms": 0}, {"output_format": "xml"}],
    )
    def test_rejects_invalid_values(self, cli_config, overrides):
        with pytest.raises(ValidationError):
            cli_config(**overrides)

    def test_frozen(self, cli_config):
        config = cli_config()
        with pytest.raises(ValidationError):
            config.digits = 60
