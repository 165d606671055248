"""Exact coefficient fields: the rationals and prime fields."""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from app.utils.errors import ParseError, ValidationError

# A field element is a Fraction (rationals) or an int in [0, p) (prime field).
FieldElement = Union[Fraction, int]


class FieldKind(str, Enum):
    """Kind of coefficient field."""

    RATIONAL = "rational"
    PRIME = "prime"


@dataclass(frozen=True)
class Field:
    """Active coefficient field.

    Rationals are kept in lowest terms with a positive denominator (Fraction
    does this); prime-field residues are kept in [0, p).
    """

    kind: FieldKind
    p: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind == FieldKind.PRIME and (self.p is None or self.p < 2):
            raise ValidationError(f"prime field needs a modulus, got p={self.p}")
        if self.kind == FieldKind.RATIONAL and self.p is not None:
            raise ValidationError("rational field takes no modulus")

    @classmethod
    def rational(cls) -> "Field":
        return cls(FieldKind.RATIONAL)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(FieldKind.PRIME, p)

    @property
    def is_prime(self) -> bool:
        return self.kind == FieldKind.PRIME

    @property
    def zero(self) -> FieldElement:
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self) -> FieldElement:
        return 1 if self.is_prime else Fraction(1)

    def __call__(self, value: Union[int, Fraction, str]) -> FieldElement:
        """Coerce an int, Fraction or "num/den" string into the field."""
        if isinstance(value, str):
            try:
                value = Fraction(value)
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(f"bad coefficient {value!r}: {e}") from e
        if self.is_prime:
            if isinstance(value, Fraction):
                num = value.numerator % self.p
                den = value.denominator % self.p
                if den == 0:
                    raise ValidationError(
                        f"denominator of {value} vanishes modulo {self.p}"
                    )
                return num * pow(den, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return (a - b) % self.p if self.is_prime else a - b

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return (a * b) % self.p if self.is_prime else a * b

    def neg(self, a: FieldElement) -> FieldElement:
        return (-a) % self.p if self.is_prime else -a

    def inv(self, a: FieldElement) -> FieldElement:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.is_prime else 1 / a

    def div(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.mul(a, self.inv(b))

    def to_json(self, a: FieldElement) -> Union[int, str]:
        """Canonical JSON coefficient: an int, or "num/den" for proper fractions."""
        if self.is_prime:
            return int(a)
        if a.denominator == 1:
            return a.numerator
        return f"{a.numerator}/{a.denominator}"

    def describe(self) -> str:
        return f"GF({self.p})" if self.is_prime else "QQ"
