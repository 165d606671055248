"""Tests for the omega optimizer and the envelope scan."""

import mpmath as mp
import pytest

from app.services.asymptotics import (
    CrossoverReport,
    CrossoverRow,
    asymptotic_bound_log,
    bisect_sign_change,
    check_single_peak,
    compute_omega,
    crossover_scan,
    golden_section_max,
    omega_derivative,
    omega_objective,
)
from app.services.bounds import xi_upper
from app.utils.errors import OptimizerDisagreementError, ValidationError


@pytest.fixture(scope="module")
def omega_result():
    return compute_omega()


def test_omega_value(omega_result):
    assert 1.12 < omega_result.omega < 1.13
    assert 2 < omega_result.argmax_s < 2.1
    assert omega_result.omega > mp.log(2)


def test_optimizers_agree(omega_result):
    assert abs(omega_result.argmax_s - omega_result.bisection_argmax) <= 1e-11
    lo, hi = omega_result.bracket
    assert lo < omega_result.argmax_s < hi


def test_omega_is_deterministic(omega_result):
    assert compute_omega().to_json() == omega_result.to_json()


def test_to_json(omega_result):
    payload = omega_result.to_json(digits=6)

    assert payload["omega"].startswith("1.12")
    assert payload["tol"] == 1e-12
    assert payload["iterations"] > 0
    assert set(payload) == {"omega", "argmax_s", "bracket", "iterations", "tol"}


def test_objective_at_two():
    """f(2) = 4 ln 2 - 3/2 ln 3 and f'(2) > 0."""
    assert float(omega_objective(2)) == pytest.approx(float(4 * mp.log(2) - mp.mpf(3) / 2 * mp.log(3)))
    assert omega_derivative(2) > 0
    assert omega_derivative(3) < 0


def test_objective_near_one():
    assert 0 < omega_objective(1 + 1e-9) < 1e-8


@pytest.mark.parametrize("s", [1, 0.5])
def test_objective_domain(s):
    with pytest.raises(ValidationError):
        omega_objective(s)
    with pytest.raises(ValidationError):
        omega_derivative(s)


def test_golden_section_on_parabola():
    with mp.workdps(30):
        peak = mp.mpf("0.3")
        argmax, iterations = golden_section_max(
            lambda x: -((x - peak) ** 2), mp.mpf(0), mp.mpf(1), mp.mpf("1e-12")
        )
        error = abs(argmax - peak)

    assert error < 1e-11
    assert iterations > 50


def test_bisection_needs_sign_change():
    with pytest.raises(OptimizerDisagreementError):
        bisect_sign_change(lambda s: s, mp.mpf(1), mp.mpf(2), mp.mpf("1e-10"))


def test_bad_tolerance():
    with pytest.raises(ValidationError):
        compute_omega(tol=0)


def test_envelope_log(omega_result):
    omega = omega_result.omega

    assert float(asymptotic_bound_log(1, omega)) == pytest.approx(float(omega))
    assert float(asymptotic_bound_log(4, omega)) == pytest.approx(float(2 * omega + mp.log(2)))


def test_crossover_scan(omega_result):
    report = crossover_scan(1, 100, omega_result)

    assert len(report.rows) == 100
    assert report.threshold is not None
    assert report.rows[-1].holds
    assert float(report.rows[3].ln_xi_upper) == pytest.approx(float(mp.log(xi_upper(4))))


def test_crossover_threshold_after_last_failure():
    rows = tuple(
        CrossoverRow(M, mp.mpf(value), mp.mpf(1))
        for M, value in ((1, 0), (2, 2), (3, 0), (4, 0))
    )
    report = CrossoverReport(rows, mp.mpf(1))

    assert report.failures == [2]
    assert report.threshold == 3
    assert rows[1].as_tuple(digits=3) == (2, "2.0", "1.0", "-1.0")


def test_crossover_scan_rejects_empty_range(omega_result):
    with pytest.raises(ValidationError):
        crossover_scan(5, 4, omega_result)


def test_squares_meet_power_of_two(omega_result):
    """xi(m^2) >= 2^m, and both sit below the envelope."""
    for m in range(1, 6):
        M = m * m
        assert xi_upper(M) >= 2**m
        assert mp.log(xi_upper(M)) <= asymptotic_bound_log(M, omega_result.omega)


@pytest.mark.slow
def test_finer_grid_agrees(omega_result):
    fine = compute_omega(grid=20000)

    assert abs(fine.omega - omega_result.omega) < 1e-12


@pytest.mark.slow
def test_crossover_scan_full(omega_result):
    report = crossover_scan(1, 400, omega_result, jobs=2)

    assert report.threshold is not None
    assert report.rows[-1].holds


def test_single_peak_scan_accepts_unimodal_slope():
    points = [mp.mpf(k) / 10 for k in range(41)]

    check_single_peak(lambda s: 2 - s, points, 20)


def test_single_peak_scan_rejects_second_maximum():
    """sin has a second maximum at 5 pi / 2 inside [0, 10]."""
    points = [mp.mpf(k) / 10 for k in range(101)]

    with pytest.raises(OptimizerDisagreementError):
        check_single_peak(mp.cos, points, 16)


def test_objective_decreases_past_the_peak():
    assert omega_objective(100) < omega_objective(2)
    points = [1 + mp.mpf(k) / 100 for k in range(1, 1001)]
    values = [omega_objective(s) for s in points]
    k_best = values.index(max(values))

    assert 2 <= points[k_best] <= 2.1
    check_single_peak(omega_derivative, points, k_best)
