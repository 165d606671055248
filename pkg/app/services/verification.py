"""Verification suite behind ``multbound verify``.

Every check runs and returns a CheckResult. The first failure carries the
counterexample that the command turns into its exit status.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import mpmath as mp

from app.algebra.codec import load_system
from app.algebra.constructions import (
    power_system,
    sample_stratum,
    square_block_system,
    tangency_system,
)
from app.algebra.field import Field
from app.config import DEFAULT_PRIME, get_settings
from app.services import asymptotics, bounds, codim, oracle, words
from app.utils.errors import MultBoundError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Grid:
    """Sizes of the exhaustive grids for one level."""

    bounds_M: int
    words_M: int
    square_m: int
    tangency_M: int
    power_M: int
    samples: int
    cross_field: bool
    omega_refine: bool


LEVELS: Dict[str, Grid] = {
    "fast": Grid(bounds_M=6, words_M=6, square_m=3, tangency_M=5, power_M=2, samples=0,
                 cross_field=False, omega_refine=False),
    "full": Grid(bounds_M=12, words_M=10, square_m=6, tangency_M=6, power_M=4, samples=50,
                 cross_field=True, omega_refine=True),
}

CODIM_M = 12
CODIM_D = 5
B2_EQUALITY = (4, 5, 6, 8)
OMEGA_TOL = 1e-12
SAMPLING_M = 5


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    counterexample: Optional[str] = None

    def line(self) -> str:
        if self.passed:
            return f"✅ {self.name}: {self.detail}"
        return f"❌ {self.name}: {self.counterexample}"


@dataclass(frozen=True)
class SuiteReport:
    level: str
    results: List[CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((r for r in self.results if not r.passed), None)

    def render(self) -> str:
        lines = [f"verify level={self.level}"]
        lines += [r.line() for r in self.results]
        passed = sum(r.passed for r in self.results)
        lines.append(f"{passed}/{len(self.results)} checks passed")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class OracleOptions:
    field: Field
    seed: int
    trials: int
    k_max: Optional[int]
    jobs: int = 1

    def k_for(self, d: int, stratum: Optional[Tuple[int, int, int, int]]) -> int:
        return self.k_max or oracle.stratum_k_max(d, stratum)


def _fail(name: str, counterexample: str) -> CheckResult:
    logger.warning(f"Check {name} failed: {counterexample}")
    return CheckResult(name, False, "", counterexample)


def _other_field(fld: Field) -> Field:
    return Field.rational() if fld.is_prime else Field.prime(DEFAULT_PRIME)


def check_fixtures(fixtures_dir: Path, opts: OracleOptions, cross_field: bool) -> CheckResult:
    """Shipped fixtures: oracle equals the recorded multiplicity and stays under the bound."""
    name = "fixtures"
    paths = sorted(Path(fixtures_dir).glob("*.json"))
    if not paths:
        return _fail(name, f"no fixtures in {fixtures_dir}")

    fields = [opts.field, _other_field(opts.field)] if cross_field else [opts.field]
    for path in paths:
        values = []
        for fld in fields:
            s, meta = load_system(path, field_override=fld)
            expected = meta.expected if meta else None
            stratum = meta.stratum.as_tuple() if meta and meta.stratum else None
            result = oracle.cycle_multiplicity(
                s, opts.trials, opts.seed, opts.k_for(s.d, stratum), opts.jobs
            )
            values.append(result.value)
            if expected is not None and result.value != expected:
                return _fail(name, f"{path.name} over {fld.describe()}: oracle {result.kind.value} {result.value}, recorded {expected}")
            if stratum is not None and result.is_finite:
                bound = bounds.min_bound(*stratum)
                if result.value > bound:
                    return _fail(name, f"{path.name}: multiplicity {result.value} exceeds bound {bound} at {stratum}")
        if len(set(values)) > 1:
            return _fail(name, f"{path.name}: fields disagree {values}")
    return CheckResult(name, True, f"{len(paths)} fixtures over {', '.join(f.describe() for f in fields)}")


def check_extremal(grid: Grid, opts: OracleOptions) -> CheckResult:
    """Closed-form families: tangency (a+1), square block (2^m), powers (d^M)."""
    name = "extremal"
    fld = opts.field
    count = 0
    cases = []
    for M in range(2, grid.tangency_M + 1):
        for a in range(1, M):
            cases.append((f"tangency({M},{a})", tangency_system(M, a, fld), a + 1, (M, M, a, 1)))
    for m in range(1, min(grid.square_m, 4) + 1):
        M = m * m
        cases.append((f"square_block({m})", square_block_system(m, fld), 2**m, (M, M, M, m)))
    for M in range(1, grid.power_M + 1):
        for d in (2, 3):
            cases.append((f"power({M},{d})", power_system(M, d, fld), d**M, None))

    for label, s, expected, state in cases:
        result = oracle.local_colength(s, opts.k_for(s.d, state))
        if result.value != expected:
            return _fail(name, f"{label}: oracle {result.value}, expected {expected}")
        if state is not None and bounds.bound_dp(*state) != expected:
            return _fail(name, f"{label}: bound {bounds.bound_dp(*state)} not attained")
        count += 1
    return CheckResult(name, True, f"{count} systems, equality with the bound where a <= M")


def check_dp_values(grid: Grid) -> CheckResult:
    name = "dp_values"
    for M in range(1, grid.bounds_M + 1):
        for i in range(1, M + 1):
            for a in range(M + 1):
                if bounds.bound_dp(i, M, a, 0) != 1 or bounds.bound_closed_form(i, M, a, 0) != 1:
                    return _fail(name, f"b=0 base case at {(i, M, a)}")
        for a in range(1, M + 1):
            if bounds.bound_dp(M, M, a, 1) != a + 1:
                return _fail(name, f"bound_dp({M},{M},{a},1)={bounds.bound_dp(M, M, a, 1)} != {a + 1}")
        for a in range(4, M + 1):
            dp, diag = bounds.bound_dp(M, M, a, 2), bounds.bound_b2_diag(a)
            if dp > diag or (a in B2_EQUALITY and dp != diag):
                return _fail(name, f"b=2 diagonal at M={M}, a={a}: dp {dp}, formula {diag}")
    for m in range(1, grid.square_m + 1):
        M = m * m
        dp, closed = bounds.bound_dp(M, M, M, m), bounds.bound_closed_form(M, M, M, m)
        if not dp == closed == 2**m:
            return _fail(name, f"square state m={m}: dp {dp}, closed form {closed}")
    return CheckResult(name, True, f"worked values for M <= {grid.bounds_M}, m <= {grid.square_m}")


def check_domination(grid: Grid) -> CheckResult:
    """dp <= closed form, b=1 exactness, monotonicity in a."""
    name = "domination"
    states = 0
    for M in range(1, grid.bounds_M + 1):
        for i in range(1, M + 1):
            for b in range(i + 1):
                prev_dp = prev_closed = 0
                for a in range(M + 1):
                    if not bounds.feasible(i, M, a, b):
                        continue
                    dp, closed = bounds.bound_dp(i, M, a, b), bounds.bound_closed_form(i, M, a, b)
                    if dp > closed:
                        return _fail(name, f"dp {dp} > closed form {closed} at {(i, M, a, b)}")
                    if dp < prev_dp or closed < prev_closed:
                        return _fail(name, f"not monotone in a at {(i, M, a, b)}")
                    if b == 1 and dp != bounds.bound_b1(i, M, a):
                        return _fail(name, f"b=1 formula differs at {(i, M, a)}")
                    prev_dp, prev_closed = dp, closed
                    states += 1
    return CheckResult(name, True, f"{states} feasible states with M <= {grid.bounds_M}")


def check_words(grid: Grid) -> CheckResult:
    name = "words"
    states = 0
    for M in range(1, grid.words_M + 1):
        for i in range(1, M + 1):
            for a in range(M + 1):
                for b in range(i + 1):
                    if not bounds.feasible(i, M, a, b):
                        continue
                    report = words.check_lemma21(i, M, a, b)
                    if report.total != bounds.bound_dp(i, M, a, b):
                        return _fail(name, f"{report.total} words != bound_dp at {(i, M, a, b)}")
                    if not report.ok:
                        return _fail(name, report.failures()[0])
                    states += 1
    return CheckResult(name, True, f"{states} states with M <= {grid.words_M}")


def check_codim() -> CheckResult:
    name = "codim"
    try:
        for M in range(1, CODIM_M + 1):
            for d in range(2, CODIM_D + 1):
                for b in range(M + 1):
                    if codim.gamma_quadratic(b, d, M) != ((b + 1) * d - b) * (M - b) + 1:
                        return _fail(name, f"gamma identity at b={b}, d={d}, M={M}")
                if codim.gamma_quadratic(M - 1, d, M) != (d - 1) * M + 2:
                    return _fail(name, f"gamma(M-1) at d={d}, M={M}")
                if M >= 2 and codim.gamma_quadratic(M - 2, d, M) != 2 * (d - 1) * (M - 1) + 3:
                    return _fail(name, f"gamma(M-2) at d={d}, M={M}")
                for i in range(1, M + 1):
                    p31 = codim.prop31_bound(i, M, d)
                    ends = min(codim.gamma_quadratic(0, d, M), codim.gamma_quadratic(i - 1, d, M))
                    target = d * M + 1 if i <= M - 1 else (d - 1) * M + 2
                    if p31 != ends or p31 != target:
                        return _fail(name, f"prop31 {p31} at {(i, M, d)}, endpoints {ends}, expected {target}")
                    if codim.prop11_bound(i, M, d) <= M:
                        return _fail(name, f"a <= M reaches the infinite-multiplicity locus at {(i, M, d)}")
                if codim.line_stratum_codim(M, d) != codim.prop11_bound(M, M, d):
                    return _fail(name, f"line stratum not sharp at M={M}, d={d}")
    except AssertionError as e:
        return _fail(name, f"internal identity broken: {e}")
    return CheckResult(name, True, f"M <= {CODIM_M}, d <= {CODIM_D}")


def check_omega(grid: Grid) -> CheckResult:
    name = "omega"
    try:
        result = asymptotics.compute_omega(OMEGA_TOL)
    except MultBoundError as e:
        return _fail(name, e.message)
    if not result.omega > mp.log(2):
        return _fail(name, f"omega {mp.nstr(result.omega, 15)} <= ln 2")
    if result.omega < asymptotics.omega_objective(2):
        return _fail(name, "omega below f(2)")
    if grid.omega_refine:
        finer = asymptotics.compute_omega(OMEGA_TOL, grid=10 * get_settings().omega_grid)
        if abs(finer.omega - result.omega) >= OMEGA_TOL:
            return _fail(name, f"finer grid moves omega to {mp.nstr(finer.omega, 20)}")
    for m in range(1, 101):
        if asymptotics.asymptotic_bound_log(m * m, result.omega) < m * mp.log(2):
            return _fail(name, f"envelope below 2^m at M={m * m}")
    return CheckResult(name, True, f"omega={mp.nstr(result.omega, 15)} at s={mp.nstr(result.argmax_s, 15)}")


def check_sampling(grid: Grid, opts: OracleOptions, max_M: int = SAMPLING_M) -> CheckResult:
    """Seeded stratum draws at a = b(M+b-i) stay under the bound; b = 0 gives 1."""
    name = "sampling"
    draws = 0
    for M in range(1, max_M + 1):
        for i in range(1, M + 1):
            for b in range(0, i + 1):
                a = b * bounds.delta_of(i, M, b)
                if a > M:
                    continue
                bound = bounds.min_bound(i, M, a, b)
                K_max = opts.k_max or oracle.default_k_max(2, bound)
                for k in range(grid.samples):
                    seed = opts.seed + 1000 * k
                    try:
                        s = sample_stratum(i, M, 2, b, seed, opts.field)
                    except MultBoundError as e:
                        return _fail(name, f"{(i, M, b)} seed {seed}: {e.message}")
                    result = oracle.cycle_multiplicity(s, opts.trials, seed, K_max, opts.jobs)
                    draws += 1
                    if not result.is_finite:
                        return _fail(name, f"{(i, M, a, b)} seed {seed}: {result.kind.value} after K={K_max}")
                    if result.value > bound:
                        return _fail(name, f"{(i, M, a, b)} seed {seed}: multiplicity {result.value} > bound {bound}")
    logger.info(f"Sampling: {draws} draws compared with the bound")
    return CheckResult(name, True, f"{draws} stratum draws with M <= {max_M}")


def run_suite(level: str, fixtures_dir: Path, opts: OracleOptions) -> SuiteReport:
    if level not in LEVELS:
        raise ValidationError(f"unknown level {level!r}, expected one of {sorted(LEVELS)}")
    grid = LEVELS[level]
    checks: List[Callable[[], CheckResult]] = [
        lambda: check_fixtures(fixtures_dir, opts, grid.cross_field),
        lambda: check_extremal(grid, opts),
        lambda: check_dp_values(grid),
        lambda: check_domination(grid),
        lambda: check_words(grid),
        check_codim,
        lambda: check_omega(grid),
    ]
    if grid.samples:
        checks.append(lambda: check_sampling(grid, opts))

    results = []
    for check in checks:
        result = check()
        logger.info(result.line())
        results.append(result)
    return SuiteReport(level, results)
