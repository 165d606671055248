"""The constant omega and the envelope sqrt(M) * exp(omega * sqrt(M)).

omega = max over s > 1 of f(s) = 2 s ln s - (s - 1/s) ln(s^2 - 1).
All arithmetic runs in mpmath at the configured working precision.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import mpmath as mp

from app.config import get_settings
from app.services.bounds import xi_upper
from app.utils.errors import OptimizerDisagreementError, ValidationError

logger = logging.getLogger(__name__)

SCAN_LO = mp.mpf(1) + mp.mpf("1e-6")
SCAN_HI = mp.mpf(100)
NEAR_ONE = mp.mpf("1e-8")

INV_PHI = (mp.sqrt(5) - 1) / 2
INV_PHI_SQUARE = (3 - mp.sqrt(5)) / 2

CSV_COLUMNS = ("M", "ln_xi_upper", "envelope_log", "slack")


def omega_objective(s) -> mp.mpf:
    s = mp.mpf(s)
    if s <= 1:
        raise ValidationError(f"omega objective is defined for s > 1, got {s}")
    if s - 1 <= NEAR_ONE:
        # second term vanishes as s -> 1+
        return 2 * s * mp.log(s)
    return 2 * s * mp.log(s) - (s - 1 / s) * mp.log(s * s - 1)


def omega_derivative(s) -> mp.mpf:
    """f'(s) = 2 ln s - (1 + 1/s^2) ln(s^2 - 1)."""
    s = mp.mpf(s)
    if s <= 1:
        raise ValidationError(f"omega derivative is defined for s > 1, got {s}")
    return 2 * mp.log(s) - (1 + 1 / (s * s)) * mp.log(s * s - 1)


@dataclass(frozen=True)
class OmegaResult:
    omega: mp.mpf
    argmax_s: mp.mpf
    bracket: Tuple[mp.mpf, mp.mpf]
    iterations: int
    tol: float
    bisection_argmax: mp.mpf

    def to_json(self, digits: int = 20) -> dict:
        return {
            "omega": mp.nstr(self.omega, digits),
            "argmax_s": mp.nstr(self.argmax_s, digits),
            "bracket": [mp.nstr(x, digits) for x in self.bracket],
            "iterations": self.iterations,
            "tol": self.tol,
        }


def golden_section_max(f: Callable, lo, hi, tol) -> Tuple[mp.mpf, int]:
    """Golden-section search for the maximum of a unimodal f on [lo, hi]."""
    a, b = lo, hi
    h = b - a
    if h <= tol:
        return (a + b) / 2, 0

    n = int(math.ceil(float(mp.log(tol / h) / mp.log(INV_PHI))))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)

    for _ in range(n - 1):
        if yc > yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    if yc > yd:
        return (a + d) / 2, n
    return (c + b) / 2, n


def bisect_sign_change(g: Callable, lo, hi, tol) -> mp.mpf:
    """Root of g on [lo, hi] where g(lo) > 0 > g(hi)."""
    if not (g(lo) > 0 > g(hi)):
        raise OptimizerDisagreementError(
            f"derivative has no sign change on [{mp.nstr(lo, 10)}, {mp.nstr(hi, 10)}]"
        )
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def check_single_peak(g: Callable, points: List, k_best: int) -> None:
    """Sign scan of the derivative g over the grid around the maximum at k_best.

    g must be positive before the bracket and negative after it; a sign
    change anywhere else is a second extremum and the bracket is not trusted.
    """
    for k, s in enumerate(points):
        if k_best - 1 <= k <= k_best + 1:
            continue
        slope = g(s)
        if (k < k_best and slope <= 0) or (k > k_best and slope >= 0):
            raise OptimizerDisagreementError(
                f"derivative changes sign away from the peak at s={mp.nstr(s, 10)}"
            )


def compute_omega(
    tol: float = 1e-12,
    grid: Optional[int] = None,
    dps: Optional[int] = None,
) -> OmegaResult:
    """Maximize f by a grid scan on [1 + 1e-6, 100] refined by golden section.

    A derivative sign scan over the grid confirms a single peak, and a
    derivative bisection on the same bracket serves as the independent
    second optimizer; the two must agree within 10 * tol.
    """
    if tol <= 0:
        raise ValidationError(f"tol must be positive, got {tol}")
    settings = get_settings()
    grid = grid or settings.omega_grid
    dps = dps or settings.omega_dps

    with mp.workdps(dps):
        tol_mp = mp.mpf(tol)
        step = (SCAN_HI - SCAN_LO) / grid
        points = [SCAN_LO + k * step for k in range(grid + 1)]
        values = [omega_objective(s) for s in points]
        k_best = max(range(len(values)), key=lambda k: values[k])
        check_single_peak(omega_derivative, points, k_best)
        if not omega_objective(SCAN_HI) < omega_objective(2):
            raise OptimizerDisagreementError("f(100) >= f(2): the scan range does not contain the peak")
        lo = points[max(k_best - 1, 0)]
        hi = points[min(k_best + 1, grid)]
        logger.debug(f"Grid maximum at s={mp.nstr(points[k_best], 10)}, bracket [{mp.nstr(lo, 10)}, {mp.nstr(hi, 10)}]")

        argmax, iterations = golden_section_max(omega_objective, lo, hi, tol_mp)
        omega = omega_objective(argmax)

        root = bisect_sign_change(omega_derivative, lo, hi, tol_mp)
        omega_root = omega_objective(root)

        if abs(argmax - root) > 10 * tol_mp or abs(omega - omega_root) > 10 * tol_mp:
            raise OptimizerDisagreementError(
                f"golden section gives s={mp.nstr(argmax, 20)}, bisection s={mp.nstr(root, 20)}"
            )
        result = OmegaResult(+omega, +argmax, (+lo, +hi), iterations, tol, +root)

    logger.info(f"omega = {mp.nstr(result.omega, 20)} at s = {mp.nstr(result.argmax_s, 20)}")
    return result


def asymptotic_bound_log(M: int, omega) -> mp.mpf:
    """ln(sqrt(M) * exp(omega * sqrt(M)))."""
    if M < 1:
        raise ValidationError(f"M must be >= 1, got {M}")
    return omega * mp.sqrt(M) + mp.log(M) / 2


@dataclass(frozen=True)
class CrossoverRow:
    M: int
    ln_xi_upper: mp.mpf
    envelope_log: mp.mpf

    @property
    def slack(self) -> mp.mpf:
        return self.envelope_log - self.ln_xi_upper

    @property
    def holds(self) -> bool:
        return self.ln_xi_upper <= self.envelope_log

    def as_tuple(self, digits: int = 15) -> tuple:
        return (
            self.M,
            mp.nstr(self.ln_xi_upper, digits),
            mp.nstr(self.envelope_log, digits),
            mp.nstr(self.slack, digits),
        )


@dataclass(frozen=True)
class CrossoverReport:
    rows: Tuple[CrossoverRow, ...]
    omega: mp.mpf

    @property
    def failures(self) -> List[int]:
        """Values of M where the envelope is below the bound."""
        return [r.M for r in self.rows if not r.holds]

    @property
    def threshold(self) -> Optional[int]:
        """Smallest M0 such that the envelope holds on [M0, M_hi]; None if it fails at M_hi."""
        m0 = None
        for row in reversed(self.rows):
            if not row.holds:
                break
            m0 = row.M
        return m0


def crossover_scan(
    M_lo: int,
    M_hi: int,
    omega_result: Optional[OmegaResult] = None,
    jobs: int = 1,
) -> CrossoverReport:
    """Compare ln xi_upper(M) with the envelope for every M in [M_lo, M_hi]."""
    if M_lo < 1 or M_lo > M_hi:
        raise ValidationError(f"need 1 <= M_lo <= M_hi, got {M_lo}..{M_hi}")
    omega_result = omega_result or compute_omega()
    Ms = list(range(M_lo, M_hi + 1))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            xis = list(executor.map(xi_upper, Ms, chunksize=16))
    else:
        xis = [xi_upper(M) for M in Ms]

    with mp.workdps(get_settings().omega_dps):
        rows = tuple(
            CrossoverRow(M, +mp.log(mp.mpf(xi)), +asymptotic_bound_log(M, omega_result.omega))
            for M, xi in zip(Ms, xis)
        )
    report = CrossoverReport(rows, omega_result.omega)
    if report.failures:
        logger.info(f"Envelope fails at M in {report.failures}")
    logger.info(f"Envelope holds from M0={report.threshold} up to {M_hi}")
    return report
