"""`mult`: multiplicity of a system read from a JSON file."""

import argparse
import logging
from pathlib import Path

from app.algebra.codec import load_system
from app.cli import RunConfig
from app.services.oracle import cycle_multiplicity, stratum_k_max
from app.utils.errors import EXIT_OK, handle_errors
from app.utils.formatting import render_json, write_text

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "mult",
        parents=[common],
        help="multiplicity at the origin of a system in JSON format",
    )
    parser.add_argument("system", type=Path, help="system JSON file")
    parser.set_defaults(handler=cmd_mult)


@handle_errors
def cmd_mult(config: RunConfig, args: argparse.Namespace) -> int:
    system, meta = load_system(args.system, field_override=config.field)
    stratum = meta.stratum.as_tuple() if meta and meta.stratum else None
    k_max = config.k_max or stratum_k_max(system.d, stratum)
    logger.info(f"Oracle on {args.system} over {config.field.describe()}, K_max={k_max}")

    result = cycle_multiplicity(
        system,
        trials=config.trials,
        seed=config.seed,
        K_max=k_max,
        jobs=config.jobs,
        debug_checks=config.debug_checks,
    )
    write_text(render_json(result.to_json()), config.output)
    return EXIT_OK
