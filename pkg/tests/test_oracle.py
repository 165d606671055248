"""Tests for the local multiplicity oracle."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.algebra.constructions import (
    line_system,
    power_system,
    random_invertible,
    sample_stratum,
    square_block_system,
    tangency_system,
)
from app.algebra.field import Field
from app.algebra.polynomial import Polynomial
from app.algebra.system import (
    PolySystem,
    direct_sum,
    embed,
    epsilon,
    reduce_standard_form,
    transform_coords,
    transform_rows,
)
from app.config import DEFAULT_PRIME
from app.services.oracle import (
    MultKind,
    MultResult,
    cycle_multiplicity,
    default_k_max,
    eliminate_linear,
    is_mult_at_least,
    local_colength,
    sample_generic_member,
    slice_forms,
    stratum_k_max,
    truncated_colength,
)
from app.utils.errors import OracleError


def test_trace_of_double_point(qq):
    """z1^2: d_0 = 1, d_1 = 2, d_2 = 2, stop at K = 2."""
    result = local_colength(power_system(1, 2, qq), K_max=6)

    assert result == MultResult(MultKind.FINITE, 2, 2, 1, (1, 2, 2), (True,), ((1, 2, 2),))


def test_maximal_ideal(qq):
    z = tuple(Polynomial.variable(3, k, qq) for k in range(3))

    result = local_colength(PolySystem(3, 2, z, qq), K_max=2)

    assert result.value == 1
    assert result.truncation_degree_used == 1


@pytest.mark.parametrize(("M", "d"), [(2, 2), (2, 3), (3, 2)])
def test_power_system(M, d, any_field):
    result = local_colength(power_system(M, d, any_field), default_k_max(d, d**M))

    assert result.is_finite
    assert result.value == d**M


@pytest.mark.parametrize(("M", "a"), [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3), (5, 4)])
def test_tangency(M, a, any_field):
    result = local_colength(tangency_system(M, a, any_field), default_k_max(2, a + 1))

    assert result.value == a + 1


@pytest.mark.parametrize("m", [1, 2])
def test_square_block(m, any_field):
    result = local_colength(square_block_system(m, any_field), default_k_max(2, 2**m))

    assert result.value == 2**m


def test_eliminate_linear_reduces_tangency(qq):
    """(z2 - z1^2, z3 - z1 z2, z4 - z1 z3, z4) collapses to y^4 in one variable."""
    s = tangency_system(4, 3, qq)

    n, reduced = eliminate_linear(s.polys, s.M, 5, qq)

    assert n == 1
    assert reduced == [Polynomial.monomial((4,), qq)]


def test_truncated_colength_is_monotone(qq):
    s = tangency_system(4, 3, qq)

    values = [truncated_colength(s, K) for K in range(7)]

    assert values == [1, 2, 3, 4, 4, 4, 4]


def test_positive_dimensional_solution_set(qq):
    result = local_colength(line_system(2, 2, seed=0, fld=qq), K_max=6)

    assert result.kind == MultKind.NO_STABILIZATION
    assert result.value is None
    assert result.trace == tuple(sorted(result.trace))
    assert len(result.trace) == 7


def test_incorrect_codimension(gf):
    """(z3, z1 z3) vanishes on the plane z3 = 0, so no slice is isolated."""
    z1, _, z3 = (Polynomial.variable(3, k, gf) for k in range(3))
    s = PolySystem(3, 2, (z3, z1 * z3), gf)

    result = cycle_multiplicity(s, trials=2, seed=0, K_max=5)

    assert result.kind == MultKind.INCORRECT_CODIMENSION
    assert result.stabilized == (False, False)
    assert len(result.trial_traces) == 2
    assert all(len(trace) == 6 for trace in result.trial_traces)
    assert is_mult_at_least(s, 100, trials=2, seed=0, K_max=5)


def test_curve_multiplicity_by_slicing(gf):
    """z1 z2 + z2^3 defines a node-like curve of order 2 in the plane."""
    z1, z2 = (Polynomial.variable(2, k, gf) for k in range(2))
    s = PolySystem(2, 3, (z1 * z2 + z2 * z2 * z2,), gf)

    result = cycle_multiplicity(s, trials=5, seed=0, K_max=default_k_max(3, 2))

    assert result.value == 2
    assert result.trials == 5
    assert is_mult_at_least(s, 2, trials=5, seed=0, K_max=8)
    assert not is_mult_at_least(s, 3, trials=5, seed=0, K_max=8)


def test_square_system_ignores_slicing(qq):
    result = cycle_multiplicity(tangency_system(3, 2, qq), trials=3, seed=0, K_max=10)

    assert result.value == 3
    assert result.stabilized == (True, True, True)


def test_slice_forms_are_seeded(qq):
    first = slice_forms(4, 2, seed=1, trial=0, fld=qq)

    assert first == slice_forms(4, 2, seed=1, trial=0, fld=qq)
    assert first != slice_forms(4, 2, seed=1, trial=1, fld=qq)
    assert all(f.degree() == 1 and f.order() == 1 for f in first)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_invariant_under_linear_changes(seed, gf):
    s = tangency_system(3, 2, gf)
    moved = transform_rows(
        transform_coords(s, random_invertible(3, seed, gf)),
        random_invertible(3, seed + 50, gf),
    )

    assert local_colength(moved, K_max=10).value == 3


@settings(deadline=None, max_examples=10)
@given(st.integers(0, 10**6))
def test_random_transforms_keep_multiplicity(seed):
    fld = Field.prime(DEFAULT_PRIME)
    s = tangency_system(3, 1, fld)
    moved = transform_rows(
        transform_coords(s, random_invertible(3, seed, fld)),
        random_invertible(3, seed + 1, fld),
    )

    assert local_colength(moved, K_max=8).value == 2


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
def test_invariant_under_linear_changes_many_seeds(seed, gf):
    s = tangency_system(4, 3, gf)
    moved = transform_rows(
        transform_coords(s, random_invertible(4, seed, gf)),
        random_invertible(4, seed + 50, gf),
    )

    assert local_colength(moved, K_max=14).value == 4


def test_same_value_over_both_fields(qq, gf):
    s = square_block_system(2, qq)
    t = square_block_system(2, gf)

    assert local_colength(s, 10).value == local_colength(t, 10).value == 4


def test_debug_checks_pass_on_correct_stop(qq):
    result = local_colength(tangency_system(3, 2, qq), K_max=10, debug_checks=True)

    assert result.value == 3


def test_sample_generic_member(qq):
    s, result = sample_generic_member(2, 2, 2, 1, seed=0, fld=qq)

    assert epsilon(s) == 1
    assert result.value == 2
    assert sample_generic_member(2, 2, 2, 1, seed=0, fld=qq)[0] == s


def test_to_json(qq):
    payload = local_colength(power_system(1, 2, qq), K_max=4).to_json()

    assert payload == {
        "kind": "Finite",
        "value": 2,
        "K": 2,
        "trace": [1, 2, 2],
        "trials": 1,
        "stabilized": [True],
    }


def test_oracle_contract(qq):
    z1, _ = (Polynomial.variable(2, k, qq) for k in range(2))
    underdetermined = PolySystem(2, 2, (z1 * z1,), qq)

    with pytest.raises(OracleError):
        local_colength(underdetermined, K_max=4)
    with pytest.raises(OracleError):
        local_colength(power_system(2, 2, qq), K_max=1)
    with pytest.raises(OracleError):
        cycle_multiplicity(underdetermined, trials=0, seed=0, K_max=4)


@pytest.mark.slow
def test_parallel_trials_agree(gf):
    z1, z2, z3 = (Polynomial.variable(3, k, gf) for k in range(3))
    s = PolySystem(3, 2, (z1 * z1 + z2 * z3, z2 * z2), gf)

    serial = cycle_multiplicity(s, trials=4, seed=3, K_max=10)
    parallel = cycle_multiplicity(s, trials=4, seed=3, K_max=10, jobs=2)

    assert serial == parallel


def test_standard_form_keeps_multiplicity(gf):
    s = transform_rows(tangency_system(4, 2, gf), random_invertible(4, 7, gf))

    assert local_colength(reduce_standard_form(s), K_max=12).value == 3
    assert local_colength(s, K_max=12).value == 3


def test_non_isolated_square_system_is_at_least_everything(qq):
    s = line_system(2, 2, seed=0, fld=qq)

    result = cycle_multiplicity(s, trials=3, seed=0, K_max=6)

    assert result.kind == MultKind.NO_STABILIZATION
    assert len(result.trial_traces) == 3
    assert is_mult_at_least(s, 2, trials=3, seed=0, K_max=6)
    assert is_mult_at_least(s, 10**6, trials=3, seed=0, K_max=6)


@pytest.mark.parametrize(
    ("left", "right", "expected"),
    [
        (lambda f: tangency_system(2, 1, f), lambda f: power_system(1, 3, f), 6),
        (lambda f: power_system(1, 2, f), lambda f: power_system(2, 2, f), 8),
        (lambda f: square_block_system(1, f), lambda f: tangency_system(3, 2, f), 6),
    ],
)
def test_multiplicity_of_direct_sum_is_product(left, right, expected, gf):
    s1, s2 = left(gf), right(gf)
    m1 = local_colength(s1, K_max=20).value
    m2 = local_colength(s2, K_max=20).value

    assert m1 * m2 == expected
    assert local_colength(direct_sum(s1, s2), K_max=default_k_max(3, expected)).value == expected


@pytest.mark.parametrize(
    ("make", "expected"),
    [
        (lambda f: tangency_system(3, 2, f), 3),
        (lambda f: power_system(2, 2, f), 4),
        (lambda f: square_block_system(1, f), 2),
    ],
)
def test_extra_variable_does_not_change_multiplicity(make, expected, gf):
    s = make(gf)

    result = cycle_multiplicity(embed(s, 1), trials=3, seed=0, K_max=default_k_max(s.d, expected))

    assert local_colength(s, K_max=default_k_max(s.d, expected)).value == expected
    assert result.value == expected


@pytest.mark.parametrize(("i", "M"), [(1, 1), (2, 2), (1, 3), (2, 4)])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_smooth_stratum_has_multiplicity_one(i, M, seed, gf):
    s = sample_stratum(i, M, 2, 0, seed=seed, fld=gf)

    assert epsilon(s) == 0
    assert cycle_multiplicity(s, trials=3, seed=seed, K_max=6).value == 1


def test_slicing_examples(gf):
    z1, z2 = (Polynomial.variable(2, k, gf) for k in range(2))
    double_line = PolySystem(2, 2, (z1 * z1,), gf)
    node = PolySystem(2, 2, (z1 * z2,), gf)
    curve = PolySystem(3, 2, tangency_system(3, 2, gf).polys[:2], gf)

    assert cycle_multiplicity(double_line, trials=3, seed=0, K_max=10).value == 2
    assert cycle_multiplicity(node, trials=3, seed=0, K_max=10).value == 2
    assert cycle_multiplicity(curve, trials=3, seed=0, K_max=10).value == 1


def test_threshold_examples(gf):
    z1, z2 = (Polynomial.variable(2, k, gf) for k in range(2))
    origin = PolySystem(2, 2, (z1, z2), gf)

    assert is_mult_at_least(power_system(2, 2, gf), 4, trials=3, seed=0, K_max=18)
    assert not is_mult_at_least(origin, 2, trials=3, seed=0, K_max=4)
    assert is_mult_at_least(square_block_system(2, gf), 4, trials=3, seed=0, K_max=18)
    assert not is_mult_at_least(square_block_system(2, gf), 5, trials=3, seed=0, K_max=18)


def test_k_max_from_stratum_bound():
    assert stratum_k_max(2, (3, 3, 2, 1)) == 2 + 4 * 3
    assert stratum_k_max(3, None) == 2 + 4 * 3
    assert stratum_k_max(2, (4, 4, 4, 2)) == 2 + 4 * 4


SMALL_FIXTURES = [
    ("power_2_2", lambda f: power_system(2, 2, f), 4),
    ("power_2_3", lambda f: power_system(2, 3, f), 9),
    ("power_3_2", lambda f: power_system(3, 2, f), 8),
    ("square_block_1", lambda f: square_block_system(1, f), 2),
    ("square_block_2", lambda f: square_block_system(2, f), 4),
    ("tangency_2_1", lambda f: tangency_system(2, 1, f), 2),
    ("tangency_3_1", lambda f: tangency_system(3, 1, f), 2),
    ("tangency_3_2", lambda f: tangency_system(3, 2, f), 3),
    ("tangency_4_3", lambda f: tangency_system(4, 3, f), 4),
]


def _moved(s, seed):
    return transform_rows(
        transform_coords(s, random_invertible(s.M, seed, s.field)),
        random_invertible(s.i, seed + 50, s.field),
    )


@pytest.mark.parametrize(("name", "make", "expected"), SMALL_FIXTURES, ids=[f[0] for f in SMALL_FIXTURES])
def test_fixtures_invariant_under_one_transform(name, make, expected, gf):
    s = make(gf)

    result = cycle_multiplicity(_moved(s, 0), trials=3, seed=0, K_max=default_k_max(s.d, expected))

    assert result.value == expected


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize(("name", "make", "expected"), SMALL_FIXTURES, ids=[f[0] for f in SMALL_FIXTURES])
def test_fixtures_invariant_under_twenty_transforms(name, make, expected, seed, gf):
    s = make(gf)

    result = cycle_multiplicity(_moved(s, seed), trials=3, seed=seed, K_max=default_k_max(s.d, expected))

    assert result.value == expected
