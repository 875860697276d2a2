"""Formatting and serialization helpers for alcove-cat."""

import json
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from alcove_cat.errors import AlcoveCatError


def format_fraction(value: Fraction | int) -> str:
    """
    Format a rational number as the exact string ``"p/q"``.

    Integers keep a denominator of 1 so every serialized scalar parses the
    same way.

    Example:
        >>> format_fraction(Fraction(-3, 6))
        '-1/2'
        >>> format_fraction(2)
        '2/1'
    """
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """
    Parse ``"p/q"``, ``"p"`` or a finite decimal into a Fraction.

    Raises:
        AlcoveCatError: If the text is not a rational literal
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise AlcoveCatError(f"Not a rational number: {text!r}") from e


def format_vector(vec: Sequence[Fraction]) -> str:
    """Compact human-readable rendering, integers without denominators."""
    return "(" + ", ".join(str(x) for x in vec) + ")"


def safe_json_dumps(data: Any, indent: int = 2) -> str:
    """
    Serialize data to JSON, writing fractions as exact ``"p/q"`` strings.

    Tuples and sets are emitted as arrays; sets are sorted first so the
    output is stable.

    Example:
        >>> safe_json_dumps({"v": (Fraction(1, 2), Fraction(0))}, indent=None)
        '{"v": ["1/2", "0/1"]}'
    """

    def default_encoder(obj: Any) -> Any:
        if isinstance(obj, Fraction):
            return format_fraction(obj)
        if isinstance(obj, (set, frozenset)):
            return sorted(obj, key=repr)
        if hasattr(obj, "model_dump"):
            return obj.model_dump(mode="json")
        raise TypeError(f"Object of type {type(obj)} is not JSON serializable")

    return json.dumps(jsonable(data), indent=indent, default=default_encoder)


def jsonable(data: Any) -> Any:
    """Copy of nested dicts, lists and tuples with fractions written as "p/q"."""
    # json.dumps never calls default for tuples
    if isinstance(data, Fraction):
        return format_fraction(data)
    if isinstance(data, dict):
        return {k: jsonable(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [jsonable(v) for v in data]
    return data


def format_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """
    Render rows as a left-aligned text table with a dashed header rule.

    Example:
        >>> print(format_table(["k", "dim"], [[0, 0], [1, 8]]))
        k  dim
        -  ---
        0  0
        1  8
    """
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]

    def render(row: list[str]) -> str:
        return "  ".join(c.ljust(w) for c, w in zip(row, widths, strict=True)).rstrip()

    lines = [render(cells[0]), render(["-" * w for w in widths])]
    lines.extend(render(row) for row in cells[1:])
    return "\n".join(lines)
