"""Building Report models from evaluation results and rendering them."""

import csv
import io
import json
import logging
from typing import Iterable, List, Optional, Sequence

import mpmath

from models.report import Report, ReportStatus, TableRow
from models.results import EvalResult, StopReason
from texts.cli import (
    DEVIATION_WARNING,
    INEXACT_IDENTITY_WARNING,
    PLAIN_ORACLE,
    PLAIN_REPORT,
    PLAIN_SUMMARY,
    PLAIN_TABLE_ROW,
    PLAIN_WARNING,
)
from utils.format_output import format_params, format_scalar
from utils.scalars import Scalar, ScalarLike, is_exact, sub, to_mpf

logger = logging.getLogger(__name__)

# A deviation passes when it is within this factor of max(tol*|oracle|, error estimate).
DEVIATION_SLACK = 10

CSV_FIELDS = [
    "command",
    "params",
    "value",
    "error_estimate",
    "terms_used",
    "stop_reason",
    "oracle",
    "deviation",
    "status",
    "warning",
    "reference",
    "reference_terms",
]


def allowed_deviation(oracle: Scalar, estimate: Scalar, tol: float) -> Scalar:
    return DEVIATION_SLACK * max(tol * abs(to_mpf(oracle)), to_mpf(estimate))


def status_of(result: EvalResult, warning: Optional[str] = None) -> ReportStatus:
    if result.stop_reason is StopReason.MAX_TERMS:
        return ReportStatus.FAIL
    if warning or result.warning:
        return ReportStatus.WARN
    return ReportStatus.PASS


def build_report(
    command: str,
    params: dict,
    result: EvalResult,
    digits: int,
    tol: float,
    oracle: Optional[ScalarLike] = None,
    reference: Optional[str] = None,
    reference_terms: Optional[int] = None,
    allowed: Optional[Scalar] = None,
    warning: Optional[str] = None,
) -> Report:
    """Report for one evaluated quantity, optionally checked against an oracle.

    ``allowed`` overrides the deviation budget derived from the result's estimate.
    """
    warning = warning or result.warning
    status = status_of(result, warning)
    oracle_text = deviation_text = None
    if oracle is not None:
        deviation = abs(sub(result.value, oracle))
        budget = allowed if allowed is not None else allowed_deviation(
            oracle, result.error_estimate, tol
        )
        if to_mpf(deviation) > to_mpf(budget):
            status = ReportStatus.FAIL
            warning = warning or DEVIATION_WARNING.format(
                deviation=mpmath.nstr(to_mpf(deviation), 5),
                allowed=mpmath.nstr(to_mpf(budget), 5),
            )
        oracle_text = format_scalar(oracle, digits)
        deviation_text = format_scalar(deviation, digits)
    return Report(
        command=command,
        params={key: str(value) for key, value in params.items()},
        value=format_scalar(result.value, digits),
        error_estimate=format_scalar(result.error_estimate, digits),
        terms_used=result.terms_used,
        stop_reason=result.stop_reason.value,
        oracle=oracle_text,
        deviation=deviation_text,
        status=status,
        warning=warning,
        reference=reference,
        reference_terms=reference_terms,
    )


def exact_report(command: str, params: dict, lhs: Scalar, rhs: Scalar, terms: int, digits: int) -> Report:
    """Report for an identity that must hold exactly."""
    deviation = abs(sub(lhs, rhs))
    exact = is_exact(lhs) and is_exact(rhs)
    status = ReportStatus.PASS if exact and deviation == 0 else ReportStatus.FAIL
    return Report(
        command=command,
        params={key: str(value) for key, value in params.items()},
        value=format_scalar(lhs, digits),
        error_estimate="0",
        terms_used=terms,
        stop_reason=StopReason.TOLERANCE_MET.value,
        oracle=format_scalar(rhs, digits),
        deviation=format_scalar(deviation, digits),
        status=status,
        warning=None if exact else INEXACT_IDENTITY_WARNING,
    )


def exit_code(reports: Iterable[Report]) -> int:
    return 1 if any(r.status is ReportStatus.FAIL for r in reports) else 0


def _report_dict(report: Report) -> dict:
    return report.model_dump(mode="json", exclude_none=True)


def render_json(reports: Sequence[Report], single: bool = False) -> str:
    if single and len(reports) == 1:
        payload = _report_dict(reports[0])
    else:
        payload = [_report_dict(r) for r in reports]
    return json.dumps(payload, indent=2, ensure_ascii=False)


def render_csv(reports: Sequence[Report]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        row = report.model_dump(mode="json")
        row["params"] = format_params(report.params)
        writer.writerow({key: "" if row.get(key) is None else row[key] for key in CSV_FIELDS})
    return buffer.getvalue().rstrip("\n")


def render_plain(reports: Sequence[Report], summary: bool = False) -> str:
    blocks: List[str] = []
    for report in reports:
        text = PLAIN_REPORT.format(
            command=report.command,
            params=format_params(report.params),
            status=report.status.value,
            value=report.value,
            error_estimate=report.error_estimate,
            terms_used=report.terms_used,
            stop_reason=report.stop_reason,
        )
        if report.oracle is not None:
            text += PLAIN_ORACLE.format(
                reference=report.reference or "oracle",
                oracle=report.oracle,
                deviation=report.deviation,
            )
        if report.warning:
            text += PLAIN_WARNING.format(warning=report.warning)
        blocks.append(text)
    if summary:
        counts = {status: 0 for status in ReportStatus}
        for report in reports:
            counts[report.status] += 1
        blocks.append(
            PLAIN_SUMMARY.format(
                passed=counts[ReportStatus.PASS],
                warned=counts[ReportStatus.WARN],
                failed=counts[ReportStatus.FAIL],
            )
        )
    return "\n".join(blocks)


def render_reports(reports: Sequence[Report], output_format: str, single: bool = False) -> str:
    if output_format == "json":
        return render_json(reports, single=single)
    if output_format == "csv":
        return render_csv(reports)
    return render_plain(reports, summary=not single)


def render_table(rows: Sequence[TableRow], output_format: str) -> str:
    if output_format == "json":
        return json.dumps([row.model_dump(mode="json") for row in rows], indent=2, ensure_ascii=False)
    if output_format == "csv":
        width = max((len(row.entries) for row in rows), default=0)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["index"] + [str(k) for k in range(width)])
        for row in rows:
            writer.writerow([row.index] + list(row.entries))
        return buffer.getvalue().rstrip("\n")
    return "\n".join(
        PLAIN_TABLE_ROW.format(index=row.index, entries=", ".join(row.entries)) for row in rows
    )
