"""`words`: word expansion of one state with the binomial checks."""

import argparse
import logging

from app.cli import RunConfig
from app.services.words import check_lemma21, expand_words, partition_by_B1, words_to_json
from app.utils.errors import EXIT_OK, CheckFailedError, handle_errors
from app.utils.formatting import render_json, write_text

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("words", parents=[common], help="words of one state (i, M, a, b)")
    for name in ("i", "M", "a", "b"):
        parser.add_argument(f"--{name}", dest=name, type=int, required=True)
    parser.set_defaults(handler=cmd_words)


@handle_errors
def cmd_words(config: RunConfig, args: argparse.Namespace) -> int:
    words = expand_words(args.i, args.M, args.a, args.b)
    report = check_lemma21(args.i, args.M, args.a, args.b)
    payload = {
        "state": [args.i, args.M, args.a, args.b],
        "count": len(words),
        "partition": {str(l): len(part) for l, part in partition_by_B1(words).items()},
        "levels": [
            {
                "l": r.l,
                "size": r.size,
                "size_bound": r.size_bound,
                "max_length": r.max_length,
                "length_bound": r.length_bound,
            }
            for r in report.levels
        ],
        "nu_injective": report.nu_injective,
        "words": words_to_json(words),
    }
    write_text(render_json(payload), config.output)

    if not report.ok:
        raise CheckFailedError("words", report.failures()[0])
    return EXIT_OK
