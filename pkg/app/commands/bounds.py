"""`bounds`: table of the recursive and closed-form bounds."""

import argparse
import logging

from app.cli import RunConfig, range_arg
from app.services.bounds import CSV_COLUMNS, bound_table
from app.utils.errors import EXIT_OK, handle_errors
from app.utils.formatting import render_table, write_text

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "bounds",
        parents=[common],
        help="bound table for every feasible (i, M, a, b)",
    )
    parser.add_argument("--M", dest="M", type=range_arg, required=True, help="number of variables, lo..hi")
    parser.add_argument("--i", dest="i", type=range_arg, help="number of equations (default: 1..M)")
    parser.add_argument("--a", dest="a", type=range_arg, help="stratum codimension (default: 0..M)")
    parser.set_defaults(handler=cmd_bounds)


@handle_errors
def cmd_bounds(config: RunConfig, args: argparse.Namespace) -> int:
    rows = []
    for M in args.M:
        i_values = args.i or range(1, M + 1)
        a_values = args.a or range(0, M + 1)
        rows.extend(row.as_tuple() for row in bound_table(i_values, [M], a_values))
    logger.info(f"Bound table: {len(rows)} feasible states")
    write_text(render_table(CSV_COLUMNS, rows, config.fmt), config.output)
    return EXIT_OK
