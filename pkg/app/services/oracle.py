"""Local multiplicity oracle.

The multiplicity of an isolated solution at the origin is the colength of
the local quotient ring. It is computed from the truncated quotients

    d_K = dim F[z] / (I + m^{K+1}),

each one the corank of a Macaulay matrix whose rows are the multiples
z^beta * f_j cut at degree K. Once d_{K+1} = d_K the sequence is constant
(Nakayama), and d_K is the colength.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from app.algebra.constructions import MAX_RETRIES, sample_stratum
from app.algebra.field import Field
from app.algebra.linalg import SparseEchelon
from app.algebra.polynomial import Polynomial, monomials_up_to
from app.algebra.system import PolySystem
from app.services.bounds import min_bound
from app.utils.errors import OracleError, SamplingError

logger = logging.getLogger(__name__)

SLICE_COEFFS = range(-7, 8)


class MultKind(str, Enum):
    """Outcome of a multiplicity computation."""

    FINITE = "Finite"
    NO_STABILIZATION = "NoStabilization"
    INCORRECT_CODIMENSION = "IncorrectCodimension"


@dataclass(frozen=True)
class MultResult:
    """Result of the oracle.

    ``trace`` is the sequence d_0, d_1, ... of the trial that produced the
    value; ``stabilized`` records per trial whether the sequence stabilized
    and ``trial_traces`` keeps every trial's sequence, so a caller can tell
    a positive-dimensional zero set from a K_max that is too small.
    """

    kind: MultKind
    value: Optional[int]
    truncation_degree_used: int
    trials: int = 1
    trace: Tuple[int, ...] = ()
    stabilized: Tuple[bool, ...] = field(default=())
    trial_traces: Tuple[Tuple[int, ...], ...] = field(default=())

    @property
    def is_finite(self) -> bool:
        return self.kind == MultKind.FINITE

    def to_json(self) -> Dict:
        return {
            "kind": self.kind.value,
            "value": self.value,
            "K": self.truncation_degree_used,
            "trace": list(self.trace),
            "trials": self.trials,
            "stabilized": list(self.stabilized),
        }


def default_k_max(d: int, estimate: Optional[int] = None) -> int:
    """Truncation budget from an upper estimate of the multiplicity.

    Stabilization happens by the nil-index, which is at most the multiplicity.
    """
    if estimate is not None:
        return 2 + 4 * estimate
    return 2 + 4 * d


def stratum_k_max(d: int, stratum: Optional[Tuple[int, int, int, int]]) -> int:
    """Truncation budget from the bound of the stratum (i, M, a, b), or 2 + 4d."""
    estimate = min_bound(*stratum) if stratum is not None else None
    return default_k_max(d, estimate)


def eliminate_linear(
    polys: Sequence[Polynomial],
    num_vars: int,
    K: int,
    fld: Field,
) -> Tuple[int, List[Polynomial]]:
    """Solve the variables fixed by the linear parts, modulo degree K+1.

    After row reduction on the differentials each pivot row reads
    z_p + (linear form in the free variables) + N_p(z), N_p of order >= 2.
    Iterating z_p <- -(linear form) - N_p(z) converges in K steps modulo
    degree K+1, and substituting into the rows with vanishing differential
    gives polynomials in the free variables with the same truncated
    quotient dimensions.
    """
    rows = list(polys)
    pivot_of: Dict[int, int] = {}
    for var in range(num_vars):
        candidates = [
            r for r in range(len(rows))
            if r not in pivot_of.values() and rows[r].linear_coefficients()[var] != 0
        ]
        if not candidates:
            continue
        r = candidates[0]
        rows[r] = rows[r].scale(fld.inv(rows[r].linear_coefficients()[var]))
        for k in range(len(rows)):
            coeff = rows[k].linear_coefficients()[var] if k != r else 0
            if coeff != 0:
                rows[k] = rows[k] - rows[r].scale(coeff)
        pivot_of[var] = r

    free = [v for v in range(num_vars) if v not in pivot_of]
    n = len(free)
    y = {v: Polynomial.variable(n, idx, fld) for idx, v in enumerate(free)}

    linear_tail: Dict[int, Polynomial] = {}
    nonlinear: Dict[int, Polynomial] = {}
    for var, r in pivot_of.items():
        coeffs = rows[r].linear_coefficients()
        tail = Polynomial.zero(n, fld)
        for v in free:
            if coeffs[v] != 0:
                tail = tail + y[v].scale(coeffs[v])
        linear_tail[var] = -tail
        nonlinear[var] = Polynomial(
            num_vars,
            {e: c for e, c in rows[r].terms.items() if sum(e) >= 2},
            fld,
        )

    psi = dict(linear_tail)
    for _ in range(K):
        images = [y[v] if v in y else psi[v] for v in range(num_vars)]
        updated = {
            var: linear_tail[var] - nonlinear[var].substitute(images, truncate=K)
            for var in pivot_of
        }
        if updated == psi:
            break
        psi = updated

    images = [y[v] if v in y else psi[v] for v in range(num_vars)]
    pivot_rows = set(pivot_of.values())
    reduced = []
    for r, f in enumerate(rows):
        if r in pivot_rows:
            continue
        g = f.substitute(images, truncate=K)
        if not g.is_zero:
            reduced.append(g)
    return n, reduced


def macaulay_corank(polys: Sequence[Polynomial], num_vars: int, K: int, fld: Field) -> int:
    """d_K: monomials of degree <= K minus the rank of the truncated multiples."""
    columns = {e: idx for idx, e in enumerate(monomials_up_to(num_vars, K))}
    echelon = SparseEchelon(fld)
    for g in polys:
        order = g.order()
        if order is None or order > K:
            continue
        for beta in monomials_up_to(num_vars, K - order):
            row = g.shift_monomial(beta, truncate=K)
            echelon.add_row({columns[e]: c for e, c in row.terms.items()})
    return len(columns) - echelon.rank


def truncated_colength(s: PolySystem, K: int) -> int:
    n, reduced = eliminate_linear(s.polys, s.M, K, s.field)
    return macaulay_corank(reduced, n, K, s.field)


def local_colength(s: PolySystem, K_max: int, debug_checks: bool = False) -> MultResult:
    """Colength of the local quotient for a square system (i = M)."""
    if s.i != s.M:
        raise OracleError(f"local_colength needs i = M, got i={s.i}, M={s.M}")
    if K_max < 2:
        raise OracleError(f"K_max must be >= 2, got {K_max}")

    trace: List[int] = []
    for K in range(K_max + 1):
        trace.append(truncated_colength(s, K))
        if K >= 1 and trace[K] == trace[K - 1]:
            value = trace[K - 1]
            if debug_checks:
                after = truncated_colength(s, K + 1)
                if after != value:
                    raise OracleError(
                        f"stabilization broke: d_{K}={value}, d_{K + 1}={after}"
                    )
            logger.debug(f"Colength {value} stabilized at K={K}, trace={trace}")
            return MultResult(
                MultKind.FINITE, value, K, 1, tuple(trace), (True,), (tuple(trace),)
            )

    logger.info(f"No stabilization up to K_max={K_max}, trace={trace}")
    return MultResult(
        MultKind.NO_STABILIZATION, None, K_max, 1, tuple(trace), (False,), (tuple(trace),)
    )


def slice_forms(M: int, count: int, seed: int, trial: int, fld: Field) -> List[Polynomial]:
    """Seeded random linear forms for one trial."""
    rng = random.Random(f"{seed}:{trial}")
    forms = []
    while len(forms) < count:
        coeffs = [rng.choice(SLICE_COEFFS) for _ in range(M)]
        if any(coeffs):
            forms.append(Polynomial.linear_form(coeffs, fld))
    return forms


def _run_trial(args: Tuple[PolySystem, int, int, int, bool]) -> MultResult:
    s, seed, trial, K_max, debug_checks = args
    forms = slice_forms(s.M, s.M - s.i, seed, trial, s.field)
    sliced = PolySystem(s.M, s.d, s.polys + tuple(forms), s.field)
    return local_colength(sliced, K_max, debug_checks)


def cycle_multiplicity(
    s: PolySystem,
    trials: int,
    seed: int,
    K_max: int,
    jobs: int = 1,
    debug_checks: bool = False,
) -> MultResult:
    """Multiplicity at the origin of the cycle cut out by s (i <= M).

    The system is completed by M - i random linear forms; a degenerate slice
    can only overshoot, so the minimum over trials is taken.
    """
    if trials < 1:
        raise OracleError(f"trials must be >= 1, got {trials}")
    if s.i == s.M:
        result = local_colength(s, K_max, debug_checks)
        return MultResult(
            result.kind, result.value, result.truncation_degree_used, trials,
            result.trace, result.stabilized * trials, result.trial_traces * trials,
        )

    tasks = [(s, seed, t, K_max, debug_checks) for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_run_trial, tasks))
    else:
        results = [_run_trial(task) for task in tasks]

    stabilized = tuple(r.is_finite for r in results)
    traces = tuple(r.trace for r in results)
    finite = [r for r in results if r.is_finite]
    if not finite:
        logger.info(f"No trial stabilized for i={s.i}, M={s.M}: incorrect codimension or K_max too small")
        return MultResult(
            MultKind.INCORRECT_CODIMENSION, None, K_max, trials,
            results[0].trace, stabilized, traces,
        )
    best = min(finite, key=lambda r: r.value)
    if len({r.value for r in finite}) > 1:
        logger.debug(f"Trials disagree: {[r.value for r in finite]}, keeping {best.value}")
    return MultResult(
        MultKind.FINITE, best.value, best.truncation_degree_used, trials,
        best.trace, stabilized, traces,
    )


def is_mult_at_least(
    s: PolySystem,
    m: int,
    trials: int,
    seed: int,
    K_max: int,
    jobs: int = 1,
) -> bool:
    """Membership in X_{i,M}(m); an infinite multiplicity is >= every m."""
    result = cycle_multiplicity(s, trials, seed, K_max, jobs)
    if not result.is_finite:
        return True
    return result.value >= m


def sample_generic_member(
    i: int,
    M: int,
    d: int,
    b: int,
    seed: int,
    fld: Field,
    trials: int = 3,
) -> Tuple[PolySystem, MultResult]:
    """Stratum sample whose tangent cones meet properly.

    A generic member of {epsilon = b} has multiplicity 2^b, the product of
    the orders of its last b polynomials; draws that exceed it lie in a
    smaller stratum and are resampled.
    """
    expected = 2**b
    K_max = default_k_max(d, expected)
    for attempt in range(MAX_RETRIES + 1):
        draw_seed = seed + attempt * (MAX_RETRIES + 1)
        s = sample_stratum(i, M, d, b, draw_seed, fld)
        result = cycle_multiplicity(s, trials, draw_seed, K_max)
        if result.is_finite and result.value == expected:
            return s, result
        logger.info(
            f"Resampling (i={i}, M={M}, b={b}): seed {draw_seed} gave {result.kind.value} {result.value}"
        )
    raise SamplingError(f"no generic stratum member for (i={i}, M={M}, d={d}, b={b}) from seed {seed}")
