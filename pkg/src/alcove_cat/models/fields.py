"""Annotated field types that carry exact fractions through pydantic models."""

from fractions import Fraction
from typing import Annotated, Any

from pydantic import PlainSerializer, PlainValidator

from alcove_cat.utils import format_fraction


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("Booleans are not rational numbers")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Not a rational literal: {value!r}") from e
    raise ValueError(f"Expected an int, Fraction or 'p/q' string, got {type(value)}")


RatField = Annotated[
    Fraction,
    PlainValidator(_to_fraction),
    PlainSerializer(format_fraction, return_type=str),
]

QVecField = tuple[RatField, ...]
