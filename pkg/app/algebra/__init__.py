"""Exact polynomial systems: fields, polynomials, stratum invariants, fixtures."""

from app.algebra.constructions import (
    Construction,
    line_system,
    power_system,
    random_invertible,
    sample_stratum,
    shipped_constructions,
    square_block_system,
    tangency_system,
)
from app.algebra.field import Field, FieldElement, FieldKind
from app.algebra.polynomial import Polynomial
from app.algebra.system import (
    LinearPart,
    PolySystem,
    direct_sum,
    embed,
    epsilon,
    linear_part,
    reduce_standard_form,
    standard_form,
    stratum_codimension,
    transform_coords,
    transform_rows,
)

__all__ = [
    "Construction",
    "Field",
    "FieldElement",
    "FieldKind",
    "LinearPart",
    "PolySystem",
    "Polynomial",
    "direct_sum",
    "embed",
    "epsilon",
    "line_system",
    "linear_part",
    "power_system",
    "random_invertible",
    "reduce_standard_form",
    "sample_stratum",
    "shipped_constructions",
    "square_block_system",
    "standard_form",
    "stratum_codimension",
    "tangency_system",
    "transform_coords",
    "transform_rows",
]
