"""Fixture systems: stratum samples and the extremal constructions."""

import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from app.algebra.field import Field
from app.algebra.linalg import Matrix, is_invertible, to_matrix
from app.algebra.polynomial import Polynomial, monomials_up_to
from app.algebra.system import PolySystem, epsilon
from app.utils.errors import SamplingError, ValidationError

logger = logging.getLogger(__name__)

SAMPLE_COEFFS = (-3, -2, -1, 1, 2, 3)
MAX_RETRIES = 16


def _random_poly(rng: random.Random, M: int, low: int, high: int, fld: Field) -> Polynomial:
    """Dense polynomial with coefficients on every monomial of degree low..high."""
    terms = {
        e: rng.choice(SAMPLE_COEFFS)
        for e in monomials_up_to(M, high)
        if sum(e) >= low
    }
    return Polynomial(M, terms, fld)


def sample_stratum(i: int, M: int, d: int, b: int, seed: int, fld: Field) -> PolySystem:
    """Seeded member of the stratum {epsilon = b}.

    The first i-b polynomials get random linear and higher terms, the last b
    only terms of degree 2..d. A draw with the wrong epsilon is rejected and
    the seed incremented, at most MAX_RETRIES times.
    """
    if not (1 <= i <= M and 0 <= b <= i):
        raise ValidationError(f"need 0 <= b <= i <= M and i >= 1, got i={i}, M={M}, b={b}")
    if d < 2:
        raise ValidationError(f"d must be >= 2, got {d}")

    for attempt in range(MAX_RETRIES + 1):
        rng = random.Random(seed + attempt)
        polys = [_random_poly(rng, M, 1, d, fld) for _ in range(i - b)]
        polys += [_random_poly(rng, M, 2, d, fld) for _ in range(b)]
        system = PolySystem(M, d, tuple(polys), fld)
        if epsilon(system) == b:
            return system
        logger.info(f"Resampling stratum (i={i}, M={M}, b={b}): seed {seed + attempt} not generic")
    raise SamplingError(f"no generic draw for (i={i}, M={M}, d={d}, b={b}) from seed {seed}")


def tangency_system(M: int, a: int, fld: Field) -> PolySystem:
    """Smooth curve t -> (t, t^2, ..., t^M) cut by a hyperplane with contact order a+1."""
    if M < 2 or not 1 <= a <= M - 1:
        raise ValidationError(f"need 1 <= a <= M-1, got M={M}, a={a}")
    z = [Polynomial.variable(M, k, fld) for k in range(M)]
    polys = [z[1] - z[0] * z[0]]
    polys += [z[j] - z[0] * z[j - 1] for j in range(2, M)]
    polys.append(z[a])
    return PolySystem(M, 2, tuple(polys), fld)


def square_block_system(m: int, fld: Field) -> PolySystem:
    """(z1^2, ..., zm^2, z_{m+1}, ..., z_M) with M = m^2."""
    if m < 1:
        raise ValidationError(f"m must be >= 1, got {m}")
    M = m * m
    polys = []
    for k in range(M):
        z = Polynomial.variable(M, k, fld)
        polys.append(z * z if k < m else z)
    return PolySystem(M, 2, tuple(polys), fld)


def power_system(M: int, d: int, fld: Field) -> PolySystem:
    """(z1^d, ..., zM^d)."""
    if M < 1 or d < 2:
        raise ValidationError(f"need M >= 1 and d >= 2, got M={M}, d={d}")
    polys = []
    for k in range(M):
        exponent = [0] * M
        exponent[k] = d
        polys.append(Polynomial.monomial(exponent, fld))
    return PolySystem(M, d, tuple(polys), fld)


def line_system(M: int, d: int, seed: int, fld: Field) -> PolySystem:
    """M random polynomials that all vanish on the z1-axis.

    Every term contains one of z2..zM, so the zero set through the origin
    contains a line and the multiplicity is infinite.
    """
    if M < 2 or d < 2:
        raise ValidationError(f"need M >= 2 and d >= 2, got M={M}, d={d}")
    rng = random.Random(seed)
    support = [e for e in monomials_up_to(M, d) if sum(e) >= 1 and sum(e[1:]) >= 1]
    polys = [Polynomial(M, {e: rng.choice(SAMPLE_COEFFS) for e in support}, fld) for _ in range(M)]
    return PolySystem(M, d, tuple(polys), fld)


def random_invertible(n: int, seed: int, fld: Field) -> Matrix:
    """Seeded invertible n x n matrix with entries in {-3, ..., 3}."""
    rng = random.Random(seed)
    while True:
        matrix = to_matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], fld)
        if is_invertible(matrix, fld):
            return matrix


@dataclass(frozen=True)
class Construction:
    """A named system with its known multiplicity and, when a <= M, its stratum (i, M, a, b)."""

    name: str
    system: PolySystem
    expected: int
    stratum: Optional[Tuple[int, int, int, int]] = None


def shipped_constructions(fld: Field) -> List[Construction]:
    """The fixture catalogue written by the ``fixtures`` command."""
    out = [Construction("power_1_2", power_system(1, 2, fld), 2, (1, 1, 1, 1))]
    for M, d in ((2, 2), (2, 3), (3, 2), (3, 3)):
        out.append(Construction(f"power_{M}_{d}", power_system(M, d, fld), d**M))
    for m in (1, 2, 3):
        M = m * m
        out.append(Construction(f"square_block_{m}", square_block_system(m, fld), 2**m, (M, M, M, m)))
    for M, a in ((2, 1), (3, 1), (3, 2), (4, 3)):
        out.append(Construction(f"tangency_{M}_{a}", tangency_system(M, a, fld), a + 1, (M, M, a, 1)))
    maximal = tuple(Polynomial.variable(3, k, fld) for k in range(3))
    out.append(Construction("maximal_ideal_3", PolySystem(3, 2, maximal, fld), 1, (3, 3, 0, 0)))
    return out
