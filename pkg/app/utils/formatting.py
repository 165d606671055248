"""Range parsing and table output helpers."""

import csv
import io
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterable, Iterator, Optional, Sequence, TextIO

from app.utils.errors import ValidationError


def parse_range(text: str) -> range:
    """Parse "lo..hi" (inclusive) or a single integer."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise ValidationError(f"bad range {text!r}, expected lo..hi or an integer")
    if lo > hi:
        raise ValidationError(f"empty range {text!r}")
    return range(lo, hi + 1)


@contextmanager
def open_output(path: Optional[Path]) -> Iterator[TextIO]:
    """UTF-8 file with LF newlines, or stdout when no path is given."""
    if path is None:
        yield sys.stdout
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        yield f


def render_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def render_json(payload: Any) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=False) + "\n"


def render_table(columns: Sequence[str], rows: Iterable[Sequence[Any]], fmt: str) -> str:
    """CSV with a header row, or a JSON list of objects."""
    if fmt == "json":
        return render_json([dict(zip(columns, row)) for row in rows])
    return render_csv(columns, rows)


def write_text(text: str, path: Optional[Path]) -> None:
    with open_output(path) as out:
        out.write(text)
