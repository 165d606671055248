"""Polynomial systems (f1, ..., fi) in M variables and their stratum invariants."""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from app.algebra.field import Field, FieldElement
from app.algebra.linalg import (
    Matrix,
    independent_rows,
    is_invertible,
    rank,
    solve_combination,
    to_matrix,
)
from app.algebra.polynomial import Polynomial
from app.utils.errors import SingularMatrixError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolySystem:
    """A tuple of polynomials of degree <= d with no free term in M variables."""

    M: int
    d: int
    polys: Tuple[Polynomial, ...]
    field: Field

    def __post_init__(self) -> None:
        object.__setattr__(self, "polys", tuple(self.polys))
        if self.M < 1:
            raise ValidationError(f"M must be positive, got {self.M}")
        if self.d < 2:
            raise ValidationError(f"d must be >= 2, got {self.d}")
        if not 1 <= len(self.polys) <= self.M:
            raise ValidationError(
                f"need 1 <= i <= M polynomials, got i={len(self.polys)}, M={self.M}"
            )
        for j, f in enumerate(self.polys, start=1):
            if f.num_vars != self.M:
                raise ValidationError(f"f{j} has {f.num_vars} variables, expected {self.M}")
            if f.degree() > self.d:
                raise ValidationError(f"f{j} has degree {f.degree()} > d={self.d}")
            if f.constant_term() != 0:
                raise ValidationError(f"f{j} has a nonzero free term")

    @property
    def i(self) -> int:
        return len(self.polys)

    def with_polys(self, polys: Sequence[Polynomial]) -> "PolySystem":
        return PolySystem(self.M, self.d, tuple(polys), self.field)

    def __str__(self) -> str:
        return "(" + ", ".join(str(f) for f in self.polys) + ")"


@dataclass(frozen=True)
class LinearPart:
    """The i x M matrix whose row j is the differential df_j(o)."""

    matrix: Tuple[Tuple[FieldElement, ...], ...]
    field: Field

    @property
    def rank(self) -> int:
        return rank(self.matrix, self.field)


@dataclass(frozen=True)
class StandardForm:
    """Result of the reduction to the standard form."""

    system: PolySystem
    permutation: Tuple[int, ...]
    b: int
    lambdas: Tuple[Tuple[FieldElement, ...], ...]


def linear_part(s: PolySystem) -> LinearPart:
    return LinearPart(tuple(tuple(f.linear_coefficients()) for f in s.polys), s.field)


def epsilon(s: PolySystem) -> int:
    """i minus the rank of the differentials at the origin."""
    return s.i - linear_part(s).rank


def standard_form(s: PolySystem) -> StandardForm:
    """Reduce to the standard form, keeping the permutation and the lambdas.

    Rows are reordered so that the lexicographically first independent set
    of differentials comes first; each dependent row f is replaced by
    f - sum(lam_a * f_a) with the unique lam killing its differential.
    """
    matrix = [list(row) for row in linear_part(s).matrix]
    chosen = independent_rows(matrix, s.field)
    rest = [k for k in range(s.i) if k not in chosen]
    permutation = tuple(chosen + rest)
    basis = [matrix[k] for k in chosen]

    polys = [s.polys[k] for k in chosen]
    lambdas = []
    for k in rest:
        lam = solve_combination(basis, matrix[k], s.field)
        if lam is None:
            # independent_rows guarantees a solution
            raise ValidationError(f"row {k + 1} is not in the span of the chosen rows")
        reduced = s.polys[k]
        for a, coeff in zip(chosen, lam):
            if coeff != 0:
                reduced = reduced - s.polys[a].scale(coeff)
        polys.append(reduced)
        lambdas.append(tuple(lam))

    b = len(rest)
    logger.debug(f"Standard form: b={b}, permutation={permutation}")
    return StandardForm(s.with_polys(polys), permutation, b, tuple(lambdas))


def reduce_standard_form(s: PolySystem) -> PolySystem:
    return standard_form(s).system


def transform_coords(s: PolySystem, g: Sequence[Sequence]) -> PolySystem:
    """Substitute z -> g z (z_k becomes sum_l g[k][l] z_l)."""
    matrix = _check_square(g, s.M, s.field)
    images = [Polynomial.linear_form(row, s.field) for row in matrix]
    return s.with_polys([f.substitute(images) for f in s.polys])


def transform_rows(s: PolySystem, h: Sequence[Sequence]) -> PolySystem:
    """Map the tuple (f1, ..., fi) to (f1, ..., fi) h."""
    matrix = _check_square(h, s.i, s.field)
    polys = []
    for j in range(s.i):
        acc = Polynomial.zero(s.M, s.field)
        for k in range(s.i):
            if matrix[k][j] != 0:
                acc = acc + s.polys[k].scale(matrix[k][j])
        polys.append(acc)
    return s.with_polys(polys)


def _check_square(m: Sequence[Sequence], n: int, fld: Field) -> Matrix:
    matrix = to_matrix(m, fld)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValidationError(f"expected a {n}x{n} matrix")
    if not is_invertible(matrix, fld):
        raise SingularMatrixError(f"{n}x{n} matrix is singular over {fld.describe()}")
    return matrix


def direct_sum(s1: PolySystem, s2: PolySystem) -> PolySystem:
    """Concatenate two systems living on disjoint sets of variables."""
    if s1.field != s2.field:
        raise ValidationError("systems live over different fields")
    M = s1.M + s2.M
    left = [f.relabel(M, range(s1.M)) for f in s1.polys]
    right = [f.relabel(M, range(s1.M, M)) for f in s2.polys]
    return PolySystem(M, max(s1.d, s2.d), tuple(left + right), s1.field)


def embed(s: PolySystem, extra: int) -> PolySystem:
    """The same polynomials viewed in M + extra variables."""
    M = s.M + extra
    return PolySystem(M, s.d, tuple(f.relabel(M, range(s.M)) for f in s.polys), s.field)


def stratum_codimension(i: int, M: int, b: int) -> int:
    """Codimension b(M+b-i) of the locus where the differentials have rank <= i-b."""
    return b * (M + b - i)


def standard_form_fibre_dim(i: int, b: int) -> int:
    """Dimension b(i-b) of each fibre of the reduction to the standard form."""
    return b * (i - b)
