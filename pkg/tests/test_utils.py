"""
Tests for utility functions.

Tests cover:
- Exact fraction formatting and parsing
- JSON serialization of fractions
- Text tables
"""

from fractions import Fraction

import pytest

from alcove_cat.errors import AlcoveCatError
from alcove_cat.utils import (
    format_fraction,
    format_table,
    format_vector,
    jsonable,
    parse_fraction,
    safe_json_dumps,
)


class TestFractions:
    """Tests for format_fraction() and parse_fraction()."""

    def test_format_fraction(self) -> None:
        """Test reduced p/q output."""
        assert format_fraction(Fraction(-3, 6)) == "-1/2"
        assert format_fraction(Fraction(0)) == "0/1"

    def test_format_integer(self) -> None:
        """Test that integers keep a denominator of 1."""
        assert format_fraction(2) == "2/1"

    @pytest.mark.parametrize(
        "text,expected",
        [("1/2", Fraction(1, 2)), (" -3 ", Fraction(-3)), ("0.25", Fraction(1, 4))],
    )
    def test_parse_fraction(self, text: str, expected: Fraction) -> None:
        """Test the accepted rational literals."""
        assert parse_fraction(text) == expected

    @pytest.mark.parametrize("text", ["abc", "1/0", ""])
    def test_parse_invalid(self, text: str) -> None:
        """Test that non-rational text raises AlcoveCatError."""
        with pytest.raises(AlcoveCatError):
            parse_fraction(text)

    def test_format_vector(self) -> None:
        """Test the human-readable vector form."""
        assert format_vector((Fraction(1, 2), Fraction(2))) == "(1/2, 2)"


class TestSafeJsonDumps:
    """Tests for safe_json_dumps() and jsonable()."""

    def test_simple_dict(self) -> None:
        """Test serializing plain data."""
        assert safe_json_dumps({"k": 1, "name": "C2"}, indent=None) == '{"k": 1, "name": "C2"}'

    def test_fractions_in_tuples(self) -> None:
        """Test that fractions inside tuples become p/q strings."""
        result = safe_json_dumps({"v": (Fraction(1, 2), Fraction(0))}, indent=None)
        assert result == '{"v": ["1/2", "0/1"]}'

    def test_sets_are_sorted(self) -> None:
        """Test stable output for sets."""
        assert safe_json_dumps({3, 1, 2}, indent=None) == "[1, 2, 3]"

    def test_custom_indent(self) -> None:
        """Test that indent is passed through."""
        assert "\n    " in safe_json_dumps({"a": [1]}, indent=4)

    def test_jsonable_nested(self) -> None:
        """Test the recursive copy."""
        data = {"a": [Fraction(3, 2), {"b": (Fraction(1),)}], "c": "x"}
        assert jsonable(data) == {"a": ["3/2", {"b": ["1/1"]}], "c": "x"}

    def test_unserializable(self) -> None:
        """Test that unknown objects raise TypeError."""
        with pytest.raises(TypeError):
            safe_json_dumps({"x": object()})


class TestFormatTable:
    """Tests for format_table()."""

    def test_alignment(self) -> None:
        """Test column widths and the header rule."""
        table = format_table(["k", "dim"], [[0, 0], [1, 8]])
        assert table.splitlines() == ["k  dim", "-  ---", "0  0", "1  8"]

    def test_wide_cells(self) -> None:
        """Test that the widest cell sets the column width."""
        table = format_table(["k", "identification"], [[10, "QGr(1,3)"]])
        lines = table.splitlines()
        assert lines[1] == "--  --------------"
        assert lines[2] == "10  QGr(1,3)"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
