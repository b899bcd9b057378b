"""binomial-series - command-line entry point."""

import argparse
import logging
import sys
from typing import List, Optional

from config.settings import settings
from handlers import compare as compare_handler
from handlers import eval as eval_handler
from handlers import identity as identity_handler
from handlers import run_command
from handlers import table as table_handler
from texts.cli import DIGITS_HELP, FORMAT_HELP, MAX_TERMS_HELP, PROG_DESCRIPTION, TOL_HELP

# Logs go to stderr; reports own stdout
logging.basicConfig(
    level=getattr(logging, settings.log_level),
    format="%(asctime)s %(levelname)s %(message)s",
)

logger = logging.getLogger(__name__)


def make_parser() -> argparse.ArgumentParser:
    # Global flags are accepted both before and after the command
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=argparse.SUPPRESS, help=DIGITS_HELP)
    common.add_argument("--max-terms", type=int, default=argparse.SUPPRESS, help=MAX_TERMS_HELP)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help=TOL_HELP)
    common.add_argument(
        "--format",
        dest="output_format",
        choices=("json", "csv", "plain"),
        default=argparse.SUPPRESS,
        help=FORMAT_HELP,
    )

    parser = argparse.ArgumentParser(
        prog="binomial-series", description=PROG_DESCRIPTION, parents=[common]
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for handler in (eval_handler, identity_handler, table_handler, compare_handler):
        handler.register(subparsers, common)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    return run_command(args)


if __name__ == "__main__":
    sys.exit(main())
