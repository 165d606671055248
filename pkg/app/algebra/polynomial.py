"""Sparse multivariate polynomials with exact coefficients."""

from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.algebra.field import Field, FieldElement
from app.utils.errors import ValidationError

Exponent = Tuple[int, ...]


def grlex_key(exponent: Exponent) -> Tuple[int, Exponent]:
    """Sort key for graded-lexicographic order (total degree first)."""
    return (sum(exponent), exponent)


def monomials_up_to(num_vars: int, degree: int) -> List[Exponent]:
    """All exponent vectors of total degree <= degree, in grlex order."""
    result: List[Exponent] = []
    for k in range(degree + 1):
        result.extend(sorted(_monomials_of_degree(num_vars, k)))
    return result


def _monomials_of_degree(num_vars: int, degree: int) -> Iterator[Exponent]:
    if num_vars == 0:
        if degree == 0:
            yield ()
        return
    if num_vars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _monomials_of_degree(num_vars - 1, degree - first):
            yield (first,) + rest


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial in ``num_vars`` variables z1..zM.

    ``terms`` maps exponent vectors to nonzero coefficients; it is never
    mutated after construction.
    """

    num_vars: int
    terms: Dict[Exponent, FieldElement]
    field: Field = dc_field(compare=False)

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValidationError(f"num_vars must be non-negative, got {self.num_vars}")
        clean: Dict[Exponent, FieldElement] = {}
        for exponent, coeff in self.terms.items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != self.num_vars or any(e < 0 for e in exponent):
                raise ValidationError(
                    f"exponent {exponent} does not fit {self.num_vars} variables"
                )
            value = self.field(coeff)
            if value != 0:
                clean[exponent] = value
        object.__setattr__(self, "terms", clean)

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self.terms.items())))

    # Constructors

    @classmethod
    def zero(cls, num_vars: int, fld: Field) -> "Polynomial":
        return cls(num_vars, {}, fld)

    @classmethod
    def constant(cls, num_vars: int, value, fld: Field) -> "Polynomial":
        return cls(num_vars, {(0,) * num_vars: value}, fld)

    @classmethod
    def variable(cls, num_vars: int, index: int, fld: Field) -> "Polynomial":
        """The coordinate z_{index+1} (0-based index)."""
        exponent = [0] * num_vars
        exponent[index] = 1
        return cls(num_vars, {tuple(exponent): 1}, fld)

    @classmethod
    def monomial(cls, exponent: Sequence[int], fld: Field, coeff=1) -> "Polynomial":
        return cls(len(exponent), {tuple(exponent): coeff}, fld)

    @classmethod
    def linear_form(cls, coeffs: Sequence, fld: Field) -> "Polynomial":
        n = len(coeffs)
        terms = {}
        for k, c in enumerate(coeffs):
            exponent = [0] * n
            exponent[k] = 1
            terms[tuple(exponent)] = c
        return cls(n, terms, fld)

    # Queries

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Maximal total degree; the zero polynomial has degree 0."""
        return max((sum(e) for e in self.terms), default=0)

    def order(self) -> Optional[int]:
        """Minimal total degree of a term, None for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=None)

    def constant_term(self) -> FieldElement:
        return self.terms.get((0,) * self.num_vars, self.field.zero)

    def coefficient(self, exponent: Sequence[int]) -> FieldElement:
        return self.terms.get(tuple(exponent), self.field.zero)

    def linear_coefficients(self) -> List[FieldElement]:
        """Coefficients of z1..zM, i.e. the differential at the origin."""
        result = []
        for k in range(self.num_vars):
            exponent = [0] * self.num_vars
            exponent[k] = 1
            result.append(self.coefficient(exponent))
        return result

    def sorted_terms(self) -> List[Tuple[Exponent, FieldElement]]:
        """Terms in grlex order."""
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]))

    # Arithmetic

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.num_vars != other.num_vars:
            raise ValidationError(
                f"variable count mismatch: {self.num_vars} vs {other.num_vars}"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        terms = dict(self.terms)
        for exponent, coeff in other.terms.items():
            terms[exponent] = self.field.add(terms.get(exponent, self.field.zero), coeff)
        return Polynomial(self.num_vars, terms, self.field)

    def __neg__(self) -> "Polynomial":
        return Polynomial(
            self.num_vars,
            {e: self.field.neg(c) for e, c in self.terms.items()},
            self.field,
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, factor: FieldElement) -> "Polynomial":
        factor = self.field(factor)
        return Polynomial(
            self.num_vars,
            {e: self.field.mul(c, factor) for e, c in self.terms.items()},
            self.field,
        )

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return self.multiply(other)

    def multiply(self, other: "Polynomial", truncate: Optional[int] = None) -> "Polynomial":
        """Product, optionally dropping every term of degree > truncate."""
        self._check_compatible(other)
        fld = self.field
        terms: Dict[Exponent, FieldElement] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if truncate is not None and d1 + sum(e2) > truncate:
                    continue
                exponent = tuple(a + b for a, b in zip(e1, e2))
                terms[exponent] = fld.add(terms.get(exponent, fld.zero), fld.mul(c1, c2))
        return Polynomial(self.num_vars, terms, fld)

    def shift_monomial(self, exponent: Exponent, truncate: Optional[int] = None) -> "Polynomial":
        """z^exponent * self, optionally truncated."""
        shift = sum(exponent)
        terms = {}
        for e, c in self.terms.items():
            if truncate is not None and sum(e) + shift > truncate:
                continue
            terms[tuple(a + b for a, b in zip(e, exponent))] = c
        return Polynomial(self.num_vars, terms, self.field)

    def truncate(self, degree: int) -> "Polynomial":
        """Drop every term of total degree > degree."""
        return Polynomial(
            self.num_vars,
            {e: c for e, c in self.terms.items() if sum(e) <= degree},
            self.field,
        )

    def substitute(
        self,
        images: Sequence["Polynomial"],
        truncate: Optional[int] = None,
    ) -> "Polynomial":
        """Compose: replace z_k by images[k].

        All images share one variable count, which becomes the variable count
        of the result. With ``truncate`` every intermediate product is cut
        at that degree, which is exact modulo terms of higher degree.
        """
        if len(images) != self.num_vars:
            raise ValidationError(
                f"need {self.num_vars} images, got {len(images)}"
            )
        if not images:
            return self
        target = images[0].num_vars
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(k: int, n: int) -> Polynomial:
            if n == 0:
                return Polynomial.constant(target, 1, self.field)
            if (k, n) not in powers:
                powers[(k, n)] = power(k, n - 1).multiply(images[k], truncate)
            return powers[(k, n)]

        result = Polynomial.zero(target, self.field)
        for exponent, coeff in self.terms.items():
            term = Polynomial.constant(target, coeff, self.field)
            for k, n in enumerate(exponent):
                if n:
                    term = term.multiply(power(k, n), truncate)
                    if term.is_zero:
                        break
            result = result + term
        return result

    def relabel(self, num_vars: int, positions: Sequence[int]) -> "Polynomial":
        """Move variable k to position positions[k] among num_vars variables."""
        terms = {}
        for exponent, coeff in self.terms.items():
            new = [0] * num_vars
            for k, e in enumerate(exponent):
                new[positions[k]] += e
            terms[tuple(new)] = coeff
        return Polynomial(num_vars, terms, self.field)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for exponent, coeff in sorted(
            self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True
        ):
            monomial = "*".join(
                f"z{k + 1}" if e == 1 else f"z{k + 1}^{e}"
                for k, e in enumerate(exponent)
                if e
            )
            value = self.field.to_json(coeff)
            if not monomial:
                parts.append(str(value))
            elif value == 1:
                parts.append(monomial)
            else:
                parts.append(f"{value}*{monomial}")
        return " + ".join(parts)
