"""`omega` and `crossover`: the constant omega and the envelope scan."""

import argparse
import logging
import sys

from app.cli import RunConfig, range_arg
from app.services import asymptotics
from app.utils.errors import EXIT_OK, handle_errors
from app.utils.formatting import render_json, render_table, write_text

logger = logging.getLogger(__name__)

OMEGA_COLUMNS = ("omega", "argmax_s", "tol", "iterations")


def register(subparsers, common: argparse.ArgumentParser) -> None:
    omega = subparsers.add_parser("omega", parents=[common], help="compute the constant omega")
    omega.add_argument("--tol", type=float, default=1e-12, help="optimizer tolerance (default: 1e-12)")
    omega.set_defaults(handler=cmd_omega)

    crossover = subparsers.add_parser(
        "crossover",
        parents=[common],
        help="compare ln xi_upper(M) with omega*sqrt(M) + ln(M)/2",
    )
    crossover.add_argument("--range", dest="M_range", type=range_arg, default=range(1, 401),
                           help="values of M, lo..hi (default: 1..400)")
    crossover.add_argument("--tol", type=float, default=1e-12)
    crossover.set_defaults(handler=cmd_crossover)


@handle_errors
def cmd_omega(config: RunConfig, args: argparse.Namespace) -> int:
    result = asymptotics.compute_omega(args.tol)
    payload = result.to_json()
    if config.fmt == "json":
        text = render_json(payload)
    else:
        text = render_table(OMEGA_COLUMNS, [[payload[c] for c in OMEGA_COLUMNS]], "csv")
    write_text(text, config.output)
    return EXIT_OK


@handle_errors
def cmd_crossover(config: RunConfig, args: argparse.Namespace) -> int:
    omega = asymptotics.compute_omega(args.tol)
    report = asymptotics.crossover_scan(args.M_range.start, args.M_range.stop - 1, omega, config.jobs)
    rows = [row.as_tuple() for row in report.rows]

    if config.fmt == "json":
        text = render_json({
            "omega": omega.to_json()["omega"],
            "threshold": report.threshold,
            "failures": report.failures,
            "rows": [dict(zip(asymptotics.CSV_COLUMNS, row)) for row in rows],
        })
    else:
        text = render_table(asymptotics.CSV_COLUMNS, rows, "csv")
    write_text(text, config.output)

    print(f"M0={report.threshold}; envelope fails at {len(report.failures)} values of M", file=sys.stderr)
    return EXIT_OK
