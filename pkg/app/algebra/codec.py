"""JSON codec for polynomial systems and shipped fixtures."""

from pathlib import Path
from typing import List, Optional, Tuple, Union

import pydantic
from pydantic import BaseModel, ConfigDict

from app.algebra.field import Field, FieldKind
from app.algebra.polynomial import Polynomial
from app.algebra.system import PolySystem
from app.utils.errors import ParseError


class TermModel(BaseModel):
    """One term: exponent vector and coefficient (int or "num/den")."""

    model_config = ConfigDict(extra="forbid")

    e: List[int]
    c: Union[int, str]


class FieldModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: FieldKind
    p: Optional[int] = None


class StratumModel(BaseModel):
    """Stratum (i, M, a, b) a fixture is a member of."""

    i: int
    M: int
    a: int
    b: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.i, self.M, self.a, self.b)


class FixtureMeta(BaseModel):
    name: str
    expected: Optional[int] = None
    stratum: Optional[StratumModel] = None


class SystemDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    M: int
    d: int
    field: FieldModel
    polys: List[List[TermModel]]
    meta: Optional[FixtureMeta] = None


def document_field(doc: SystemDocument) -> Field:
    if doc.field.kind == FieldKind.PRIME:
        return Field.prime(doc.field.p)
    return Field.rational()


def parse_system(
    text: str,
    field_override: Optional[Field] = None,
) -> Tuple[PolySystem, Optional[FixtureMeta]]:
    """Parse the JSON system format.

    With ``field_override`` the coefficients are read into that field
    instead of the one named in the document.
    """
    try:
        doc = SystemDocument.model_validate_json(text)
    except pydantic.ValidationError as e:
        raise ParseError(str(e)) from e

    fld = field_override or document_field(doc)
    polys = []
    for j, terms in enumerate(doc.polys, start=1):
        mapping = {}
        for term in terms:
            if len(term.e) != doc.M:
                raise ParseError(f"f{j}: exponent {term.e} has length != M={doc.M}")
            exponent = tuple(term.e)
            if exponent in mapping:
                raise ParseError(f"f{j}: repeated exponent {term.e}")
            mapping[exponent] = fld(term.c)
        polys.append(Polynomial(doc.M, mapping, fld))
    return PolySystem(doc.M, doc.d, tuple(polys), fld), doc.meta


def to_document(system: PolySystem, meta: Optional[FixtureMeta] = None) -> SystemDocument:
    fld = system.field
    return SystemDocument(
        M=system.M,
        d=system.d,
        field=FieldModel(kind=fld.kind, p=fld.p),
        polys=[
            [TermModel(e=list(e), c=fld.to_json(c)) for e, c in f.sorted_terms()]
            for f in system.polys
        ],
        meta=meta,
    )


def serialize_system(system: PolySystem, meta: Optional[FixtureMeta] = None) -> str:
    """Canonical JSON: terms in grlex order, normalized coefficients."""
    return to_document(system, meta).model_dump_json(exclude_none=True)


def load_system(
    path: Path,
    field_override: Optional[Field] = None,
) -> Tuple[PolySystem, Optional[FixtureMeta]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    return parse_system(text, field_override)
