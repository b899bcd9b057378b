"""
Unit tests для отчётов и форматирования вывода.

Тестируются:
- format_scalar / format_params
- build_report: статусы PASS/WARN/FAIL и сравнение с оракулом
- exact_report для точных тождеств
- Модель Report: deviation присутствует тогда и только тогда, когда есть oracle
- Рендеринг JSON/CSV/plain и коды выхода
"""

import json
from fractions import Fraction

import mpmath
import pytest
from pydantic import ValidationError

from models.report import Report, ReportStatus, TableRow
from models.results import EvalResult, StopReason
from services.reports import (
    CSV_FIELDS,
    build_report,
    exact_report,
    exit_code,
    render_reports,
    render_table,
)
from texts.cli import INEXACT_IDENTITY_WARNING
from utils.format_output import format_params, format_scalar


def make_result(value, estimate="1e-20", reason=StopReason.TOLERANCE_MET, warning=None):
    return EvalResult(
        value=mpmath.mpf(value),
        error_estimate=mpmath.mpf(estimate),
        terms_used=7,
        stop_reason=reason,
        warning=warning,
    )


class TestFormatting:
    """Тесты для строкового представления скаляров"""

    def test_exact_values(self):
        assert format_scalar(Fraction(-1, 2), 20) == "-1/2"
        assert format_scalar(Fraction(4, 2), 20) == "2"
        assert format_scalar(52, 20) == "52"

    def test_float_values(self):
        assert format_scalar(Fraction(1, 3), 10, as_float=True) == "0.3333333333"
        assert format_scalar(mpmath.mpf("0.125"), 10) == "0.125"

    def test_params(self):
        assert format_params({"s": "1", "a": "1/2"}) == "s=1;a=1/2"


class TestBuildReport:
    """Тесты для build_report"""

    def test_pass_without_oracle(self):
        report = build_report("eval", {"s": 1}, make_result("1.5"), 20, 1e-12)
        assert report.status is ReportStatus.PASS
        assert report.oracle is None and report.deviation is None
        assert report.params == {"s": "1"}

    def test_oracle_within_budget(self):
        report = build_report("eval", {}, make_result("1.5"), 20, 1e-12, oracle=mpmath.mpf("1.5"))
        assert report.status is ReportStatus.PASS
        assert report.deviation == "0.0"

    def test_oracle_deviation_fails(self):
        report = build_report("eval", {}, make_result("1.5"), 20, 1e-12, oracle=Fraction(3, 2) + Fraction(1, 10 ** 6))
        assert report.status is ReportStatus.FAIL
        assert report.warning

    def test_explicit_allowance(self):
        report = build_report(
            "eval", {}, make_result("1.5"), 20, 1e-12, oracle=Fraction(3, 2) + Fraction(1, 10 ** 6), allowed=1e-5
        )
        assert report.status is ReportStatus.PASS

    def test_max_terms_fails(self):
        report = build_report("eval", {}, make_result("1", reason=StopReason.MAX_TERMS), 20, 1e-12)
        assert report.status is ReportStatus.FAIL

    def test_warning_gives_warn(self):
        report = build_report("eval", {}, make_result("1", warning="low accuracy"), 20, 1e-12)
        assert report.status is ReportStatus.WARN
        assert report.warning == "low accuracy"


class TestExactReport:
    """Тесты для exact_report"""

    def test_equal_rationals_pass(self):
        report = exact_report("identity-check", {"m": 3}, Fraction(1, 4), Fraction(1, 4), 4, 20)
        assert report.status is ReportStatus.PASS
        assert report.deviation == "0"

    def test_unequal_rationals_fail(self):
        report = exact_report("identity-check", {}, Fraction(1, 4), Fraction(0), 4, 20)
        assert report.status is ReportStatus.FAIL

    def test_inexact_values_fail(self):
        report = exact_report("identity-check", {}, mpmath.mpf(1), Fraction(1), 1, 20)
        assert report.status is ReportStatus.FAIL
        assert report.warning == INEXACT_IDENTITY_WARNING


class TestReportModel:
    """Тесты для модели Report"""

    def test_deviation_requires_oracle(self):
        with pytest.raises(ValidationError):
            Report(
                command="eval",
                params={},
                value="1",
                error_estimate="0",
                terms_used=1,
                stop_reason="TOLERANCE_MET",
                deviation="0",
                status=ReportStatus.PASS,
            )


class TestRendering:
    """Тесты для рендеринга отчётов и таблиц"""

    @pytest.fixture
    def reports(self):
        return [
            build_report("eval", {"s": 1, "a": 2}, make_result("1.5"), 20, 1e-12, oracle=mpmath.mpf("1.5")),
            build_report("eval", {"s": 2}, make_result("2", reason=StopReason.MAX_TERMS), 20, 1e-12),
        ]

    def test_json_single_object(self, reports):
        payload = json.loads(render_reports(reports[:1], "json", single=True))
        assert payload["command"] == "eval"
        assert payload["status"] == "PASS"
        assert "warning" not in payload

    def test_json_round_trip(self, reports):
        text = render_reports(reports, "json")
        assert json.dumps(json.loads(text), indent=2, ensure_ascii=False) == text

    def test_csv(self, reports):
        lines = render_reports(reports, "csv").splitlines()
        assert lines[0] == ",".join(CSV_FIELDS)
        assert lines[1].startswith("eval,s=1;a=2,1.5,")
        assert len(lines) == 3

    def test_plain_summary(self, reports):
        text = render_reports(reports, "plain")
        assert text.splitlines()[-1] == "1 PASS, 0 WARN, 1 FAIL"

    def test_exit_code(self, reports):
        assert exit_code(reports[:1]) == 0
        assert exit_code(reports) == 1

    def test_table_csv(self):
        rows = [TableRow(index=0, entries=["1"]), TableRow(index=1, entries=["-1/2"])]
        assert render_table(rows, "csv") == "index,0\n0,1\n1,-1/2"
        assert render_table(rows, "plain").splitlines()[1] == "   1: -1/2"
