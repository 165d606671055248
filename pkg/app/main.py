"""Application entrypoint."""

import logging
import sys
from typing import Optional, Sequence

from app.cli import RunConfig, build_parser
from app.commands import asymptotics, bounds, codim, fixtures, mult, verify, words
from app.logging_config import setup_logging
from app.utils.errors import handle_errors

logger = logging.getLogger(__name__)

COMMANDS = (bounds, mult, verify, asymptotics, words, codim, fixtures)


@handle_errors
def dispatch(args) -> int:
    """Resolve the run configuration and hand over to the subcommand."""
    config = RunConfig.from_args(args)
    setup_logging(config.log_level)
    logger.debug(
        f"Running {config.command}: field={config.field.describe()}, seed={config.seed}, "
        f"trials={config.trials}, k_max={config.k_max}, jobs={config.jobs}"
    )
    return args.handler(config, args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments and run one subcommand; returns the exit code."""
    parser = build_parser([module.register for module in COMMANDS])
    args = parser.parse_args(argv)
    return dispatch(args)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
