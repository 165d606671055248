"""Tests for the recursive and closed-form multiplicity bounds."""

import pytest

from app.services.bounds import (
    bound_b1,
    bound_b2,
    bound_b2_diag,
    bound_closed_form,
    bound_dp,
    bound_table,
    bound_unrolled,
    feasible,
    leaf_count,
    max_alpha_zero_steps,
    min_bound,
    mu_upper,
    xi_paper_form,
    xi_upper,
)
from app.utils.errors import InfeasibleStateError, ValidationError


def states(M_max):
    for M in range(1, M_max + 1):
        for i in range(1, M + 1):
            for a in range(M + 1):
                for b in range(i + 1):
                    if feasible(i, M, a, b):
                        yield i, M, a, b


@pytest.mark.parametrize(
    ("state", "expected"),
    [
        ((2, 2, 2, 1), True),
        ((4, 4, 4, 3), False),
        ((4, 4, 4, 2), True),
        ((3, 2, 1, 0), False),
        ((2, 3, 4, 1), False),
        ((1, 1, 2, 0), False),
    ],
)
def test_feasible(state, expected):
    assert feasible(*state) is expected


@pytest.mark.parametrize(
    ("state", "expected"),
    [
        ((2, 2, 2, 1), 3),
        ((4, 4, 4, 2), 4),
        ((5, 5, 5, 2), 5),
        ((7, 7, 5, 2), 5),
        ((3, 5, 2, 0), 1),
        ((9, 9, 9, 3), 8),
    ],
)
def test_bound_dp_values(state, expected):
    assert bound_dp(*state) == expected


@pytest.mark.parametrize(
    ("state", "expected"),
    [
        ((1, 1, 1, 1), 2),
        ((4, 4, 4, 2), 4),
        ((6, 6, 4, 2), 4),
        ((9, 9, 9, 3), 8),
        ((4, 4, 4, 1), 5),
        ((2, 5, 3, 0), 1),
    ],
)
def test_bound_closed_form_values(state, expected):
    assert bound_closed_form(*state) == expected


def test_infeasible_state_rejected():
    with pytest.raises(InfeasibleStateError) as exc_info:
        bound_dp(4, 4, 4, 3)

    assert exc_info.value.state == (4, 4, 4, 3)


def test_special_case_formulas():
    assert bound_b1(5, 5, 3) == 4
    assert bound_b1(2, 3, 2) == 2
    assert bound_b1(1, 1, 1) == 2
    assert bound_b2_diag(4) == 4
    assert bound_b2_diag(5) == 5
    assert bound_b2(4, 6, 8) == 5


def test_special_case_formulas_reject_bad_states():
    with pytest.raises(InfeasibleStateError):
        bound_b2(4, 6, 7)
    with pytest.raises(ValidationError):
        bound_b2_diag(3)


@pytest.mark.parametrize(("a", "expected"), [(4, 4), (5, 5), (6, 7), (8, 11)])
def test_b2_diagonal_equality(a, expected):
    assert bound_dp(a, a, a, 2) == bound_b2_diag(a) == expected


def test_b2_diagonal_dominates_dp():
    for M in range(4, 13):
        for a in range(4, M + 1):
            assert bound_dp(M, M, a, 2) <= bound_b2_diag(a)


def test_aggregates():
    assert mu_upper(4, 4, 0) == 1
    assert mu_upper(2, 2, 2) == 3
    assert mu_upper(4, 4, 4) == 5
    assert xi_upper(1) == 2
    assert xi_upper(4) == 5
    assert xi_paper_form(1) == 1
    assert xi_paper_form(4) == 8


@pytest.mark.parametrize("m", [1, 2, 3])
def test_square_strata(m):
    M = m * m

    assert bound_closed_form(M, M, M, m) == 2**m
    assert xi_upper(M) >= 2**m


def test_mu_upper_rejects_large_codimension():
    with pytest.raises(ValidationError, match="outside"):
        mu_upper(3, 3, 4)


def _check_grid(M_max):
    for i, M, a, b in states(M_max):
        dp, closed = bound_dp(i, M, a, b), bound_closed_form(i, M, a, b)
        assert dp <= closed, (i, M, a, b)
        assert min_bound(i, M, a, b) == dp
        if b == 0:
            assert dp == closed == 1
        if b == 1:
            assert dp == bound_b1(i, M, a), (i, M, a)
        if feasible(i, M, a - 1, b):
            assert bound_dp(i, M, a - 1, b) <= dp
            assert bound_closed_form(i, M, a - 1, b) <= closed


def test_grid_properties():
    _check_grid(8)


@pytest.mark.slow
def test_grid_properties_full():
    _check_grid(12)


def test_unrolled_paths_stay_below_dp():
    for i, M, a, b in states(9):
        if b == 0:
            continue
        dp = bound_dp(i, M, a, b)
        longest = min(max_alpha_zero_steps(i, M, a, b) + 1, i)
        for k in range(1, longest + 1):
            assert bound_unrolled(i, M, a, b, k) <= dp, (i, M, a, b, k)


def test_unrolled_single_step_is_alpha_one_branch():
    """k = 1 closes immediately with the alpha = 1 step."""
    assert bound_unrolled(2, 2, 2, 1, 1) == 2
    assert bound_unrolled(2, 2, 2, 1, 2) == 3


def test_unrolled_length_checked():
    with pytest.raises(ValidationError):
        bound_unrolled(2, 2, 2, 1, 3)
    with pytest.raises(ValidationError):
        bound_unrolled(2, 2, 2, 0, 1)


def test_deep_recursion():
    assert leaf_count(2000, 1, 1) == 2001
    assert leaf_count(1200, 2, 2) == bound_dp(1200, 1200, 1200, 2)


def test_bound_table_rows():
    rows = list(bound_table([4], [4], range(0, 5)))

    assert len(rows) == 10
    assert [(r.a, r.b) for r in rows] == [
        (0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1), (4, 0), (4, 1), (4, 2),
    ]
    assert rows[-1].as_tuple() == (4, 4, 4, 2, 2, 4, 4, 4)


def test_bound_table_skips_i_above_M():
    rows = list(bound_table([1, 3], [2], [0]))

    assert [(r.i, r.M) for r in rows] == [(1, 2)]


def test_bound_table_rejects_large_codimension():
    with pytest.raises(ValidationError):
        list(bound_table([1], [3], [4]))
