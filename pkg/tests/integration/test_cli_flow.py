"""
Integration тесты для командной строки.

Сценарий: main() разбирает аргументы, строит CliConfig, вызывает обработчик
команды и печатает отчёт; код выхода 0 при успехе, 1 при FAIL, 2 при
ошибке использования.

Тестируются:
- eval: сходящийся и асимптотический маршруты, --oracle
- identity-check: lemma2 до порядка 30, формат plain
- table: bernoulli, bell (CSV), poly-bernoulli с параметром q
- compare: loggamma, digamma при малом z, Аракава-Канеко
- Детерминированность и круговой проход JSON
"""

import json
import math

import mpmath
import pytest

pytestmark = pytest.mark.integration


class TestEval:
    """Тесты для команды eval"""

    def test_zeta_series(self, run_cli):
        code, out, _ = run_cli("eval", "zeta", "s=1", "a=1", "--route=series")
        report = json.loads(out)
        assert code == 0
        assert report["command"] == "eval"
        assert report["status"] == "PASS"
        assert report["params"]["route"] == "series"
        assert float(report["value"]) == pytest.approx(math.pi ** 2 / 6, rel=1e-9)
        assert "oracle" not in report

    def test_eta_with_oracle(self, run_cli):
        code, out, _ = run_cli("eval", "eta", "s=1", "a=1", "--oracle")
        report = json.loads(out)
        assert code == 0
        assert report["status"] == "PASS"
        assert float(report["value"]) == pytest.approx(math.log(2), abs=1e-12)
        assert "deviation" in report

    def test_digamma_asymptotic(self, run_cli):
        code, out, _ = run_cli("eval", "digamma", "z=10", "--route=asymptotic", "--tol", "1e-15")
        report = json.loads(out)
        assert code == 0
        assert report["stop_reason"] in ("TOLERANCE_MET", "OPTIMAL_TRUNCATION")
        assert float(report["value"]) == pytest.approx(float(mpmath.digamma(10)), abs=1e-9)

    def test_missing_oracle_warns(self, run_cli):
        code, out, _ = run_cli("eval", "arakawa-kaneko", "r=2", "s=2", "a=10", "--route=asymptotic", "--oracle")
        report = json.loads(out)
        assert code == 0
        assert report["status"] == "WARN"
        assert report["warning"]

    def test_max_terms_exit_code(self, run_cli):
        code, out, _ = run_cli("--max-terms", "3", "eval", "zeta", "s=1", "a=1")
        assert code == 1
        assert json.loads(out)["stop_reason"] == "MAX_TERMS"

    def test_plain_format(self, run_cli):
        code, out, _ = run_cli("eval", "eta", "s=1", "--format", "plain")
        assert code == 0
        assert out.startswith("eval [function=eta;s=1;a=1;y=0;route=series] PASS")

    def test_deterministic_json(self, run_cli):
        _, first, _ = run_cli("eval", "lerch", "x=1/2", "s=1")
        _, second, _ = run_cli("eval", "lerch", "x=1/2", "s=1")
        assert first == second
        assert json.dumps(json.loads(first), indent=2, ensure_ascii=False) + "\n" == first


class TestUsageErrors:
    """Тесты для ошибок использования (код выхода 2)"""

    @pytest.mark.parametrize(
        "argv",
        [
            ("eval", "gamma", "s=1"),
            ("eval", "zeta", "s=abc"),
            ("eval", "zeta", "q=1", "s=1"),
            ("eval", "zeta", "s=-1"),
            ("eval", "lerch-alt", "x=1/2", "s=1", "--route=asymptotic"),
            ("identity-check", "lemma9"),
            ("identity-check", "lemma2", "--max-order=0"),
            ("table", "catalan", "3"),
            ("table", "bell", "q=2"),
            ("compare", "lerch-alt", "x=1/2", "s=1"),
            ("--digits", "5", "eval", "zeta", "s=1"),
        ],
    )
    def test_exit_code_two(self, run_cli, argv):
        code, out, err = run_cli(*argv)
        assert code == 2
        assert out == ""
        assert err.startswith("Ошибка:")

    def test_unknown_command(self, run_cli):
        with pytest.raises(SystemExit) as excinfo:
            run_cli("plot", "zeta")
        assert excinfo.value.code == 2


class TestIdentityCheck:
    """Тесты для команды identity-check"""

    def test_lemma2_thirty_pass(self, run_cli):
        code, out, _ = run_cli("identity-check", "lemma2", "--max-order=30")
        reports = json.loads(out)
        assert code == 0
        assert len(reports) == 30
        assert all(r["status"] == "PASS" for r in reports)

    def test_remark1_plain_summary(self, run_cli):
        code, out, _ = run_cli("identity-check", "remark1", "--max-order=8", "--format=plain")
        assert code == 0
        summary = out.strip().splitlines()[-1]
        assert summary.endswith("0 WARN, 0 FAIL")

    def test_csv_header(self, run_cli):
        code, out, _ = run_cli("--format", "csv", "identity-check", "geometric-half", "--max-order", "5")
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0].startswith("command,params,value")
        assert len(lines) > 1
        assert all(line.startswith("identity-check,") for line in lines[1:])


class TestTable:
    """Тесты для команды table"""

    def test_bernoulli(self, run_cli):
        code, out, _ = run_cli("table", "bernoulli", "6")
        rows = json.loads(out)
        assert code == 0
        assert [row["entries"][0] for row in rows] == ["1", "-1/2", "1/6", "0", "-1/30", "0", "1/42"]

    def test_bell_csv(self, run_cli):
        code, out, _ = run_cli("table", "bell", "5", "--format=csv")
        assert code == 0
        assert out.strip().splitlines() == ["index,0", "0,1", "1,1", "2,2", "3,5", "4,15", "5,52"]

    def test_poly_bernoulli(self, run_cli):
        code, out, _ = run_cli("table", "poly-bernoulli", "q=2", "4")
        rows = json.loads(out)
        assert code == 0
        assert [row["entries"][0] for row in rows] == ["1", "1/4", "-1/36", "-1/24", "7/450"]

    def test_float_entries(self, run_cli):
        code, out, _ = run_cli("table", "euler-poly", "1", "--float", "--digits", "10")
        rows = json.loads(out)
        assert rows[1]["entries"] == ["-0.5", "1.0"]


class TestCompare:
    """Тесты для команды compare"""

    def test_loggamma_factorial_reference(self, run_cli):
        code, out, _ = run_cli("compare", "loggamma", "z=10")
        report = json.loads(out)
        assert code == 0
        assert report["status"] == "PASS"
        assert report["reference"] == "log(9!)"
        assert float(report["deviation"]) <= 1e-10 * math.log(362880)

    def test_digamma_small_argument_warns(self, run_cli):
        code, out, _ = run_cli("compare", "digamma", "z=2")
        report = json.loads(out)
        assert code == 0
        assert report["status"] == "WARN"
        assert report["warning"]
        assert report["reference"] == "series"
        assert report["reference_terms"] > 0

    def test_arakawa_kaneko_routes(self, run_cli):
        code, out, _ = run_cli("compare", "arakawa-kaneko", "r=2", "s=2", "a=10")
        report = json.loads(out)
        assert code == 0
        assert float(report["deviation"]) <= 1e-6
