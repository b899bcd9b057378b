"""``identity-check``: run one identity suite."""

import argparse
import logging

from models.report import CliConfig
from services.errors import UsageError
from services.identity_suites import COMMAND, run_suite
from services.reports import exit_code, render_reports
from texts.cli import BAD_ORDER_ERROR, IDENTITY_HELP, MAX_ORDER_HELP, SEED_HELP

logger = logging.getLogger(__name__)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(COMMAND, parents=[parent], help=IDENTITY_HELP)
    parser.add_argument("suite")
    parser.add_argument("--max-order", type=int, default=None, help=MAX_ORDER_HELP)
    parser.add_argument("--seed", type=int, default=0, help=SEED_HELP)
    parser.set_defaults(func=cmd_identity_check)


def cmd_identity_check(args: argparse.Namespace, config: CliConfig) -> int:
    if args.max_order is not None and args.max_order < 1:
        raise UsageError(BAD_ORDER_ERROR.format(value=args.max_order))
    reports = run_suite(args.suite, config, max_order=args.max_order, seed=args.seed)
    print(render_reports(reports, config.output_format))
    return exit_code(reports)
