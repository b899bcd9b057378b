"""
Shared pytest fixtures для всех тестов.

Fixtures:
- working_precision: рабочая точность mpmath 50 знаков для каждого теста
- cli_config: фабрика CliConfig с переопределениями
- run_cli: запуск main() с захватом stdout/stderr
"""

import mpmath
import pytest

from main import main
from models.report import CliConfig


@pytest.fixture(autouse=True)
def working_precision():
    """Каждый тест выполняется при 50 десятичных знаках."""
    with mpmath.workdps(50):
        yield


@pytest.fixture
def cli_config():
    """Фабрика CliConfig: значения по умолчанию из settings плюс переопределения."""

    def factory(**overrides) -> CliConfig:
        return CliConfig(**overrides)

    return factory


@pytest.fixture
def run_cli(capsys):
    """Запускает CLI и возвращает (код выхода, stdout, stderr)."""

    def runner(*argv: str):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return runner
