"""``compare``: asymptotic route against the convergent route or an exact reference."""

import argparse
import logging

import mpmath

from models.report import CliConfig, ReportStatus
from models.results import StopReason
from services.catalog import ASYMPTOTIC, SERIES, get_function, parse_assignments
from services.errors import UsageError
from services.reports import DEVIATION_SLACK, build_report, exit_code, render_reports
from texts.cli import COMPARE_HELP, NO_COMPARISON_ERROR, PARAMS_HELP
from utils.scalars import to_mpf

logger = logging.getLogger(__name__)

COMMAND = "compare"


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(COMMAND, parents=[parent], help=COMPARE_HELP)
    parser.add_argument("function")
    parser.add_argument("params", nargs="*", help=PARAMS_HELP)
    parser.set_defaults(func=cmd_compare)


def cmd_compare(args: argparse.Namespace, config: CliConfig) -> int:
    """Report the asymptotic value with the reference as its oracle.

    The budget is ``DEVIATION_SLACK`` times the largest of both error estimates
    and tol*|reference|. A reference series that hits max_terms fails the report.
    """
    entry = get_function(args.function)
    if entry.asymptotic is None or (entry.series is None and entry.reference is None):
        raise UsageError(NO_COMPARISON_ERROR.format(name=entry.name))
    values = entry.parse(parse_assignments(args.params))

    asymptotic = entry.evaluate(ASYMPTOTIC, values, config)
    warning = None
    reference_terms = None
    reference_estimate = mpmath.mpf(0)
    reference_failed = False
    if entry.series is not None:
        series = entry.evaluate(SERIES, values, config)
        label, reference = SERIES, series.value
        reference_terms = series.terms_used
        reference_estimate = to_mpf(series.error_estimate)
        reference_failed = series.stop_reason is StopReason.MAX_TERMS
        warning = series.warning
    else:
        label, reference = entry.reference_value(values, config)

    allowed = DEVIATION_SLACK * max(
        to_mpf(asymptotic.error_estimate),
        reference_estimate,
        config.tol * abs(to_mpf(reference)),
    )
    report = build_report(
        COMMAND,
        {"function": entry.name, **values},
        asymptotic,
        config.digits,
        config.tol,
        oracle=reference,
        reference=label,
        reference_terms=reference_terms,
        allowed=allowed,
        warning=asymptotic.warning or warning,
    )
    if reference_failed:
        report = report.model_copy(update={"status": ReportStatus.FAIL})
    print(render_reports([report], config.output_format, single=True))
    return exit_code([report])
