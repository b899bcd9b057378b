"""Command handlers with a shared error boundary."""

import argparse
import logging
import sys

import mpmath
from pydantic import ValidationError

from models.report import CliConfig
from services.errors import ParameterDomainError, UsageError
from texts.cli import (
    BAD_CONFIG_ERROR,
    INTERNAL_ERROR_MESSAGE,
    LOG_COMMAND_FINISHED,
    LOG_COMMAND_STARTED,
    LOG_DOMAIN_ERROR,
    LOG_UNEXPECTED_ERROR,
    LOG_USAGE_ERROR,
    USAGE_ERROR_MESSAGE,
)

logger = logging.getLogger(__name__)

FAILURE_EXIT_CODE = 1
USAGE_EXIT_CODE = 2

CONFIG_FLAGS = ("digits", "max_terms", "tol", "output_format")


def build_config(args: argparse.Namespace) -> CliConfig:
    """CliConfig from settings defaults overridden by the global flags."""
    overrides = {
        name: getattr(args, name)
        for name in CONFIG_FLAGS
        if getattr(args, name, None) is not None
    }
    try:
        return CliConfig(**overrides)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}"
            for error in e.errors()
        )
        raise UsageError(BAD_CONFIG_ERROR.format(details=details)) from e


def run_command(args: argparse.Namespace) -> int:
    """Run ``args.func`` and map errors to exit codes."""
    command = args.command
    details = {key: value for key, value in vars(args).items() if key != "func"}
    logger.info(LOG_COMMAND_STARTED.format(command=command, details=details))
    try:
        config = build_config(args)
        with mpmath.workdps(config.digits):
            code = args.func(args, config)
    except UsageError as e:
        logger.warning(LOG_USAGE_ERROR.format(error=e))
        print(USAGE_ERROR_MESSAGE.format(error=e), file=sys.stderr)
        return USAGE_EXIT_CODE
    except ParameterDomainError as e:
        logger.warning(LOG_DOMAIN_ERROR.format(error=e))
        print(USAGE_ERROR_MESSAGE.format(error=e), file=sys.stderr)
        return USAGE_EXIT_CODE
    except Exception as e:
        logger.error(LOG_UNEXPECTED_ERROR.format(command=command, error=e), exc_info=True)
        print(INTERNAL_ERROR_MESSAGE.format(error=e), file=sys.stderr)
        return FAILURE_EXIT_CODE
    logger.info(LOG_COMMAND_FINISHED.format(command=command, code=code))
    return code


__all__ = [
    "compare",
    "eval",
    "identity",
    "table",
    "build_config",
    "run_command",
    "FAILURE_EXIT_CODE",
    "USAGE_EXIT_CODE",
]
