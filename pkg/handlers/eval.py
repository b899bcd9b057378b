"""``eval``: one function value by its series or asymptotic route."""

import argparse
import logging

from models.report import CliConfig
from services.catalog import ROUTES, get_function, parse_assignments
from services.reports import build_report, exit_code, render_reports
from texts.cli import EVAL_HELP, NO_ORACLE_WARNING, ORACLE_HELP, PARAMS_HELP, ROUTE_HELP

logger = logging.getLogger(__name__)

COMMAND = "eval"


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(COMMAND, parents=[parent], help=EVAL_HELP)
    parser.add_argument("function")
    parser.add_argument("params", nargs="*", help=PARAMS_HELP)
    parser.add_argument("--route", choices=ROUTES, default=None, help=ROUTE_HELP)
    parser.add_argument("--oracle", action="store_true", help=ORACLE_HELP)
    parser.set_defaults(func=cmd_eval)


def cmd_eval(args: argparse.Namespace, config: CliConfig) -> int:
    entry = get_function(args.function)
    values = entry.parse(parse_assignments(args.params))
    route = args.route or entry.default_route
    result = entry.evaluate(route, values, config)

    oracle = warning = None
    if args.oracle:
        oracle = entry.oracle_value(values, config)
        if oracle is None:
            warning = NO_ORACLE_WARNING

    report = build_report(
        COMMAND,
        {"function": entry.name, **values, "route": route},
        result,
        config.digits,
        config.tol,
        oracle=oracle,
        warning=warning,
    )
    print(render_reports([report], config.output_format, single=True))
    return exit_code([report])
