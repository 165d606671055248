"""`codim`: codimension estimates table."""

import argparse

from app.cli import RunConfig, range_arg
from app.services.codim import CSV_COLUMNS, codim_table
from app.utils.errors import EXIT_OK, handle_errors
from app.utils.formatting import render_table, write_text


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("codim", parents=[common], help="codimension estimates per (i, M, d)")
    parser.add_argument("--M", dest="M", type=range_arg, default=range(1, 13), help="default: 1..12")
    parser.add_argument("--d", dest="d", type=range_arg, default=range(2, 6), help="default: 2..5")
    parser.set_defaults(handler=cmd_codim)


@handle_errors
def cmd_codim(config: RunConfig, args: argparse.Namespace) -> int:
    rows = [row.as_tuple() for row in codim_table(args.M, args.d)]
    write_text(render_table(CSV_COLUMNS, rows, config.fmt), config.output)
    return EXIT_OK
