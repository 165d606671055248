"""Codimension estimates for systems whose zero set has the wrong dimension."""

import logging
from dataclasses import astuple, dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from app.utils.errors import ValidationError

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("i", "M", "d", "prop31", "prop11", "line_codim")


def _check_params(i: int, M: int, d: int) -> None:
    if not 1 <= i <= M:
        raise ValidationError(f"need 1 <= i <= M, got i={i}, M={M}")
    if d < 2:
        raise ValidationError(f"d must be >= 2, got {d}")


def gamma_quadratic(b: int, d: int, M: int) -> int:
    """gamma(b) = b^2 (1 - d) + b (dM - M - d) + dM + 1, equal to ((b+1)d - b)(M - b) + 1."""
    return b * b * (1 - d) + b * (d * M - M - d) + d * M + 1


def gamma_vertex(d: int, M: int) -> Fraction:
    """Where the concave quadratic gamma attains its maximum."""
    if d < 2:
        raise ValidationError(f"d must be >= 2, got {d}")
    return Fraction(d * M - M - d, 2 * (d - 1))


def prop31_bound(i: int, M: int, d: int) -> int:
    """min over b in 0..i-1 of ((b+1)d - b)(M - b) + 1, by enumeration."""
    _check_params(i, M, d)
    return min(((b + 1) * d - b) * (M - b) + 1 for b in range(i))


def prop11_bound(i: int, M: int, d: int) -> int:
    """Codimension of the systems with a positive-dimensional zero set through o:
    at least dM for i <= M-1 and (d-1)M + 1 for i = M."""
    _check_params(i, M, d)
    bound = d * M if i <= M - 1 else (d - 1) * M + 1
    # the fibre over a fixed direction costs exactly one condition less
    assert bound == prop31_bound(i, M, d) - 1, (i, M, d)
    return bound


def line_stratum_codim(M: int, d: int) -> int:
    """dM conditions to vanish on a fixed line, minus the (M-1)-dimensional family of lines."""
    if M < 1 or d < 2:
        raise ValidationError(f"need M >= 1 and d >= 2, got M={M}, d={d}")
    codim = d * M - (M - 1)
    assert codim == prop11_bound(M, M, d), (M, d)
    return codim


@dataclass(frozen=True)
class CodimRow:
    i: int
    M: int
    d: int
    prop31: int
    prop11: int
    line_codim: int

    def as_tuple(self) -> tuple:
        return astuple(self)


def codim_table(M_values: Iterable[int], d_values: Iterable[int]) -> Iterator[CodimRow]:
    d_values = list(d_values)
    for M in M_values:
        for d in d_values:
            line = line_stratum_codim(M, d)
            for i in range(1, M + 1):
                yield CodimRow(i, M, d, prop31_bound(i, M, d), prop11_bound(i, M, d), line)
