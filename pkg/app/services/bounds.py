"""Upper bounds on the multiplicity of a stratum.

A state (i, M, a, b) stands for systems of i equations in M variables with
a stratum of codimension a whose differentials drop rank by b. Only the
triple (a, b, delta) with delta = M + b - i enters the recursion, which is
what the memo table is keyed on.
"""

import logging
import math
from dataclasses import astuple, dataclass
from typing import Dict, Iterable, Iterator, List, Tuple

from app.utils.errors import InfeasibleStateError, ValidationError

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("i", "M", "a", "b", "delta", "bound_dp", "bound_closed_form", "min_bound")


def delta_of(i: int, M: int, b: int) -> int:
    return M + b - i


def feasible(i: int, M: int, a: int, b: int) -> bool:
    """Whether (i, M, a, b) is a state of the recursion within the a <= M scope."""
    if not (1 <= i <= M and 0 <= b <= i and 0 <= a <= M):
        return False
    return b * delta_of(i, M, b) <= a


def require_feasible(i: int, M: int, a: int, b: int) -> int:
    if not feasible(i, M, a, b):
        raise InfeasibleStateError(i, M, a, b)
    return delta_of(i, M, b)


def alpha_zero_admissible(a: int, b: int, delta: int) -> bool:
    """The B0 child (a - delta, b, delta) exists iff a >= (b+1) * delta."""
    return a >= (b + 1) * delta


# (a, b, delta) -> leaf count
_memo: Dict[Tuple[int, int, int], int] = {}

# each recursion level lowers a by at least 1
_RECURSION_SAFE_A = 500


def _leaf_count(a: int, b: int, delta: int) -> int:
    if b == 0:
        return 1
    key = (a, b, delta)
    if key in _memo:
        return _memo[key]
    assert a >= b * delta, key
    drop = _leaf_count(a - delta, b - 1, delta)
    branch = _leaf_count(a - delta - (b - 1), b - 1, delta - 1)
    if alpha_zero_admissible(a, b, delta):
        branch = max(branch, _leaf_count(a - delta, b, delta))
    _memo[key] = drop + branch
    return _memo[key]


def _warm(a: int, b: int, delta: int) -> None:
    """Fill the memo bottom-up in a so that the recursion stays one level deep."""
    for a_cur in range(a + 1):
        for b_cur in range(1, b + 1):
            for d_cur in range(max(b_cur, delta - (b - b_cur)), delta + 1):
                if a_cur >= b_cur * d_cur and (a_cur, b_cur, d_cur) not in _memo:
                    _leaf_count(a_cur, b_cur, d_cur)


def leaf_count(a: int, b: int, delta: int) -> int:
    """DP value on the (a, b, delta) triple; the entry point shared with word expansion."""
    if b > 0 and a > _RECURSION_SAFE_A and (a, b, delta) not in _memo:
        _warm(a, b, delta)
    return _leaf_count(a, b, delta)


def memo_size() -> int:
    return len(_memo)


def bound_dp(i: int, M: int, a: int, b: int) -> int:
    """Recursive bound: the unknown alpha of each step is resolved by the max
    over its admissible branches, the free gamma is set to 0."""
    delta = require_feasible(i, M, a, b)
    return leaf_count(a, b, delta)


def closed_form_terms(a: int, b: int, delta: int) -> List[int]:
    """A_l = [(a - l*b) / (delta - l)] for l = 0..b-1."""
    return [(a - l * b) // (delta - l) for l in range(b)]


def bound_closed_form(i: int, M: int, a: int, b: int) -> int:
    """Sum over l of C(A_l, b - l); the l = b summand is 1."""
    delta = require_feasible(i, M, a, b)
    terms = closed_form_terms(a, b, delta)
    return sum(math.comb(A, b - l) for l, A in enumerate(terms)) + 1


def min_bound(i: int, M: int, a: int, b: int) -> int:
    return min(bound_dp(i, M, a, b), bound_closed_form(i, M, a, b))


def _require_state(i: int, M: int, a: int, b: int) -> int:
    """Stratum constraints without the a <= M cap; the b = 1, 2 formulas hold for any a."""
    delta = delta_of(i, M, b)
    if not (1 <= i <= M and 0 <= b <= i and b * delta <= a):
        raise InfeasibleStateError(i, M, a, b)
    return delta


def bound_b1(i: int, M: int, a: int) -> int:
    delta = _require_state(i, M, a, 1)
    return a // delta + 1


def bound_b2(i: int, M: int, a: int) -> int:
    delta = _require_state(i, M, a, 2)
    q = a // delta
    return q * (q + 1) // 2 + 2


def bound_b2_diag(a: int) -> int:
    """Refined b = 2 bound on the diagonal i = M; the last term is 1 for even a, 2 for odd a."""
    if a < 4:
        raise ValidationError(f"b=2 on the diagonal needs a >= 4, got {a}")
    q = a // 2
    return q * (q + 1) // 2 + (1 if a % 2 == 0 else 2)


def bound_unrolled(i: int, M: int, a: int, b: int, k: int) -> int:
    """The recursion unrolled along k - 1 steps with alpha = 0 closed by one alpha = 1 step.

    Sum over j = 1..k of U(i-j, M-j+1, a-j*delta, b-1) plus
    U(i-k, M-k, a-k*delta-(b-1), b-1).
    """
    delta = require_feasible(i, M, a, b)
    if b == 0:
        raise ValidationError("unrolling needs b >= 1")
    if k < 1 or k > max_alpha_zero_steps(i, M, a, b) + 1 or k > i:
        raise ValidationError(f"k={k} is not an admissible unrolling length for ({i}, {M}, {a}, {b})")
    total = sum(leaf_count(a - j * delta, b - 1, delta) for j in range(1, k + 1))
    return total + leaf_count(a - k * delta - (b - 1), b - 1, delta - 1)


def max_alpha_zero_steps(i: int, M: int, a: int, b: int) -> int:
    """Longest admissible run of alpha = 0 steps: [a / delta] - b."""
    delta = require_feasible(i, M, a, b)
    if b == 0:
        return 0
    return a // delta - b


def mu_upper(i: int, M: int, a: int) -> int:
    """max over b of the better of the two bounds."""
    if not 1 <= i <= M:
        raise ValidationError(f"need 1 <= i <= M, got i={i}, M={M}")
    if a < 0 or a > M:
        raise ValidationError(
            f"a={a} is outside 0 <= a <= M={M}",
            f"❌ a={a} вне области 0 ≤ a ≤ M={M}: оценки доказаны только для a ≤ M",
        )
    return max(min_bound(i, M, a, b) for b in range(i + 1) if feasible(i, M, a, b))


def xi_upper(M: int) -> int:
    """Bound on the maximal multiplicity at full codimension a = M."""
    if M < 1:
        raise ValidationError(f"M must be >= 1, got {M}")
    return mu_upper(M, M, M)


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def xi_paper_form(M: int) -> int:
    """ceil(sqrt(M)) * max C([(M - l*b) / (b - l)], b - l) over 1 <= b <= sqrt(M), 0 <= l < b."""
    if M < 1:
        raise ValidationError(f"M must be >= 1, got {M}")
    best = max(
        math.comb((M - l * b) // (b - l), b - l)
        for b in range(1, math.isqrt(M) + 1)
        for l in range(b)
    )
    return ceil_sqrt(M) * best


@dataclass(frozen=True)
class BoundRow:
    i: int
    M: int
    a: int
    b: int
    delta: int
    bound_dp: int
    bound_closed_form: int
    min_bound: int

    def as_tuple(self) -> tuple:
        return astuple(self)


def bound_row(i: int, M: int, a: int, b: int) -> BoundRow:
    dp = bound_dp(i, M, a, b)
    closed = bound_closed_form(i, M, a, b)
    return BoundRow(i, M, a, b, delta_of(i, M, b), dp, closed, min(dp, closed))


def bound_table(
    i_values: Iterable[int],
    M_values: Iterable[int],
    a_values: Iterable[int],
) -> Iterator[BoundRow]:
    """Rows for every feasible state in the given ranges, ordered by (M, i, a, b)."""
    i_values, a_values = list(i_values), list(a_values)
    for M in M_values:
        out_of_scope = [a for a in a_values if a > M]
        if out_of_scope:
            raise ValidationError(
                f"a={out_of_scope[0]} > M={M}",
                f"❌ a={out_of_scope[0]} > M={M}: оценки доказаны только для a ≤ M",
            )
        for i in i_values:
            if not 1 <= i <= M:
                continue
            for a in a_values:
                for b in range(i + 1):
                    if feasible(i, M, a, b):
                        yield bound_row(i, M, a, b)
    logger.debug(f"Memo table size: {memo_size()}")
