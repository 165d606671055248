"""`fixtures`: write the construction catalogue as JSON files."""

import argparse
import logging
from pathlib import Path

from app.algebra.codec import FixtureMeta, StratumModel, serialize_system
from app.algebra.constructions import shipped_constructions
from app.algebra.field import Field
from app.cli import RunConfig
from app.utils.errors import EXIT_OK, handle_errors

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("fixtures", parents=[common], help="write the fixture systems")
    parser.add_argument("--dir", dest="directory", type=Path, help="target directory (default: --fixtures-dir)")
    parser.set_defaults(handler=cmd_fixtures)


@handle_errors
def cmd_fixtures(config: RunConfig, args: argparse.Namespace) -> int:
    directory = args.directory or config.fixtures_dir
    directory.mkdir(parents=True, exist_ok=True)
    # fixtures are stored over QQ; --field applies when they are read
    for item in shipped_constructions(Field.rational()):
        stratum = None
        if item.stratum is not None:
            i, M, a, b = item.stratum
            stratum = StratumModel(i=i, M=M, a=a, b=b)
        meta = FixtureMeta(name=item.name, expected=item.expected, stratum=stratum)
        path = directory / f"{item.name}.json"
        path.write_text(serialize_system(item.system, meta) + "\n", encoding="utf-8", newline="\n")
        logger.info(f"Wrote {path}")
    return EXIT_OK
