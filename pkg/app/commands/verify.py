"""`verify`: the verification suite, gated by exit code."""

import argparse
import logging

from app.cli import RunConfig
from app.services.verification import LEVELS, OracleOptions, run_suite
from app.utils.errors import EXIT_OK, CheckFailedError, handle_errors
from app.utils.formatting import write_text

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "verify",
        parents=[common],
        help="run the verification suite (exit 0 iff every check passes)",
    )
    parser.add_argument("--level", choices=sorted(LEVELS), default="fast")
    parser.set_defaults(handler=cmd_verify)


@handle_errors
def cmd_verify(config: RunConfig, args: argparse.Namespace) -> int:
    opts = OracleOptions(config.field, config.seed, config.trials, config.k_max, config.jobs)
    report = run_suite(args.level, config.fixtures_dir, opts)
    write_text(report.render(), config.output)

    failure = report.first_failure
    if failure is not None:
        raise CheckFailedError(failure.name, failure.counterexample)
    return EXIT_OK
