"""Exact linear algebra over the active field.

Dense helpers work on small matrices (differentials, transforms); the sparse
echelon form is the rank engine behind the Macaulay matrices.
"""

from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from app.algebra.field import Field, FieldElement

Matrix = List[List[FieldElement]]
SparseRow = Dict[int, int]


def to_matrix(rows: Sequence[Sequence], fld: Field) -> Matrix:
    return [[fld(x) for x in row] for row in rows]


def row_echelon(matrix: Sequence[Sequence[FieldElement]], fld: Field) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the pivot columns."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    n_cols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = fld.inv(rows[r][c])
        rows[r] = [fld.mul(x, inv) for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                factor = rows[k][c]
                rows[k] = [fld.sub(x, fld.mul(factor, y)) for x, y in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence[FieldElement]], fld: Field) -> int:
    return len(row_echelon(matrix, fld)[1])


def is_invertible(matrix: Sequence[Sequence[FieldElement]], fld: Field) -> bool:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        return False
    return rank(matrix, fld) == n


def independent_rows(matrix: Sequence[Sequence[FieldElement]], fld: Field) -> List[int]:
    """Indices of the lexicographically first maximal independent row set."""
    chosen: List[int] = []
    basis: Matrix = []
    for k, row in enumerate(matrix):
        if rank(basis + [list(row)], fld) > len(basis):
            basis.append(list(row))
            chosen.append(k)
    return chosen


def solve_combination(
    basis: Sequence[Sequence[FieldElement]],
    target: Sequence[FieldElement],
    fld: Field,
) -> Optional[List[FieldElement]]:
    """Coefficients lam with sum_a lam[a] * basis[a] == target, or None.

    ``basis`` must be linearly independent, which makes lam unique.
    """
    n = len(basis)
    if n == 0:
        return [] if all(x == 0 for x in target) else None
    # Columns of the augmented system are the basis vectors.
    system = [[basis[a][c] for a in range(n)] + [target[c]] for c in range(len(target))]
    reduced, pivots = row_echelon(system, fld)
    if n in pivots:
        return None
    lam = [fld.zero] * n
    for r, c in enumerate(pivots):
        lam[c] = reduced[r][n]
    return lam


class SparseEchelon:
    """Incremental sparse row echelon form.

    Over a prime field pivots are normalized to 1 and ordinary elimination
    is used. Over the rationals rows are scaled to primitive integer vectors
    and reduced fraction-free: r <- a*r - b*pivot, then divided by its
    content.
    """

    def __init__(self, fld: Field):
        self.field = fld
        self._pivots: Dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def add_row(self, row: Dict[int, FieldElement]) -> bool:
        """Reduce ``row`` against the current pivots; True if it was independent."""
        if self.field.is_prime:
            return self._add_modular({c: int(v) for c, v in row.items() if v != 0})
        return self._add_integral(_primitive(row))

    def _add_modular(self, row: SparseRow) -> bool:
        p = self.field.p
        while row:
            c = min(row)
            pivot = self._pivots.get(c)
            if pivot is None:
                inv = pow(row[c], -1, p)
                self._pivots[c] = {k: v * inv % p for k, v in row.items()}
                return True
            factor = row[c]
            for k, v in pivot.items():
                value = (row.get(k, 0) - factor * v) % p
                if value:
                    row[k] = value
                else:
                    row.pop(k, None)
        return False

    def _add_integral(self, row: SparseRow) -> bool:
        while row:
            c = min(row)
            pivot = self._pivots.get(c)
            if pivot is None:
                self._pivots[c] = row
                return True
            a, b = pivot[c], row[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new: SparseRow = {}
            for k in set(row) | set(pivot):
                value = a * row.get(k, 0) - b * pivot.get(k, 0)
                if value:
                    new[k] = value
            row = _content_free(new)
        return False


def _primitive(row: Dict[int, FieldElement]) -> SparseRow:
    """Scale a rational row to a primitive integer row."""
    entries = {c: v for c, v in row.items() if v != 0}
    if not entries:
        return {}
    scale = lcm(*(v.denominator for v in entries.values()))
    return _content_free({c: int(v * scale) for c, v in entries.items()})


def _content_free(row: SparseRow) -> SparseRow:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {c: v // g for c, v in row.items()}
