"""Argument parsing and the per-run configuration."""

import argparse
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import pydantic

from app.algebra.field import Field
from app.config import Settings
from app.utils.errors import ValidationError
from app.utils.formatting import parse_range


def range_arg(text: str) -> range:
    """argparse type for "lo..hi" ranges."""
    try:
        return parse_range(text)
    except ValidationError as e:
        raise argparse.ArgumentTypeError(e.message)


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs besides its own arguments.

    Command-line flags win over MULTBOUND_* environment variables and .env.
    """

    command: str
    field: Field
    seed: int
    trials: int
    k_max: Optional[int]
    output: Optional[Path]
    fmt: str
    jobs: int
    debug_checks: bool
    fixtures_dir: Path
    log_level: str

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        overrides = {
            "field_kind": args.field,
            "prime": args.prime,
            "seed": args.seed,
            "trials": args.trials,
            "k_max": args.k_max,
            "jobs": args.jobs,
            "log_level": args.log_level,
            "fixtures_dir": args.fixtures_dir,
        }
        if args.debug_checks:
            overrides["debug_checks"] = True
        try:
            settings = Settings(**{k: v for k, v in overrides.items() if v is not None})
        except pydantic.ValidationError as e:
            errors = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
            raise ValidationError(errors) from e
        if settings.k_max is not None and settings.k_max < 2:
            raise ValidationError(f"--k-max must be >= 2, got {settings.k_max}")

        fld = Field.prime(settings.prime) if settings.field_kind == "prime" else Field.rational()
        return cls(
            command=args.command,
            field=fld,
            seed=settings.seed,
            trials=settings.trials,
            k_max=settings.k_max,
            output=args.output,
            fmt=args.format,
            jobs=settings.jobs,
            debug_checks=settings.debug_checks,
            fixtures_dir=settings.fixtures_dir,
            log_level=settings.log_level,
        )


def common_options() -> argparse.ArgumentParser:
    """Flags shared by every subcommand; unset flags fall back to the settings."""
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("common options")
    group.add_argument("--field", choices=("prime", "rational"), help="coefficient field (default: prime)")
    group.add_argument("--prime", type=int, help="modulus of the prime field (default: 2147483647)")
    group.add_argument("--seed", type=int, help="seed for every random choice (default: 0)")
    group.add_argument("--trials", type=int, help="random slicing trials of the oracle (default: 3)")
    group.add_argument("--k-max", dest="k_max", type=int, help="truncation budget of the oracle (default: derived)")
    group.add_argument("--output", type=Path, help="output file (default: stdout)")
    group.add_argument("--format", choices=("csv", "json"), default="csv", help="table format (default: csv)")
    group.add_argument("--jobs", type=int, help="worker processes (default: 1)")
    group.add_argument("--log-level", dest="log_level", help="logging level (default: WARNING)")
    group.add_argument("--debug-checks", dest="debug_checks", action="store_true",
                       help="recompute one degree past the oracle stopping point")
    group.add_argument("--fixtures-dir", dest="fixtures_dir", type=Path, help="fixture directory (default: fixtures)")
    return common


def build_parser(registrars: Sequence) -> argparse.ArgumentParser:
    """Top-level parser; each registrar adds its subcommands."""
    parser = argparse.ArgumentParser(
        prog="multbound",
        description="Multiplicity bounds for systems of polynomial equations at a point.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = common_options()
    for register in registrars:
        register(subparsers, common)
    return parser
