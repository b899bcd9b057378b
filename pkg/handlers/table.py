"""``table``: exact number tables and polynomial coefficient rows."""

import argparse
import logging
from typing import Dict, List, Tuple

from models.report import CliConfig
from services.catalog import parse_assignments
from services.errors import UsageError
from services.reports import render_table
from services.tables import build_table
from texts.cli import FAMILY_HELP, FLOAT_HELP, MISSING_INDEX_ERROR, TABLE_HELP

logger = logging.getLogger(__name__)

COMMAND = "table"


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(COMMAND, parents=[parent], help=TABLE_HELP)
    parser.add_argument("family")
    parser.add_argument("arguments", nargs="+", help=FAMILY_HELP)
    parser.add_argument("--float", dest="as_float", action="store_true", help=FLOAT_HELP)
    parser.set_defaults(func=cmd_table)


def split_arguments(family: str, arguments: List[str]) -> Tuple[int, Dict[str, str]]:
    """Separate ``key=value`` tokens from the single max-index token."""
    indices = [token for token in arguments if "=" not in token]
    if len(indices) != 1 or not indices[0].isdigit():
        raise UsageError(MISSING_INDEX_ERROR.format(family=family))
    return int(indices[0]), parse_assignments([token for token in arguments if "=" in token])


def cmd_table(args: argparse.Namespace, config: CliConfig) -> int:
    max_index, raw = split_arguments(args.family, args.arguments)
    rows = build_table(args.family, max_index, raw, config.digits, as_float=args.as_float)
    print(render_table(rows, config.output_format))
    return 0
