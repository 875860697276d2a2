"""
Tests for the pydantic models.

Tests cover:
- LieType parsing, rank rules and ordering
- Exact fraction fields
- Identification labels and dimensions
- Category values and plan validation
"""

from fractions import Fraction

import pytest
from pydantic import BaseModel, ValidationError

from alcove_cat.errors import InvalidLieTypeError
from alcove_cat.models import CategoryValue, Identification, LieType, VerifyPlan
from alcove_cat.models.fields import QVecField, RatField


class _Point(BaseModel):
    x: RatField
    v: QVecField = ()


class TestLieType:
    """Tests for LieType."""

    @pytest.mark.parametrize(
        "text,name", [("C4", "C4"), ("e_8", "E8"), (" g2 ", "G2"), ("A1", "A1")]
    )
    def test_parse(self, text: str, name: str) -> None:
        """Test the accepted spellings."""
        assert LieType.parse(text).name == name

    @pytest.mark.parametrize("text", ["B1", "D2", "E5", "F3", "G3", "H3", "C", "4C"])
    def test_invalid(self, text: str) -> None:
        """Test that non-existent types raise InvalidLieTypeError."""
        with pytest.raises(InvalidLieTypeError):
            LieType.parse(text)

    @pytest.mark.parametrize(
        "name,group",
        [("A3", "SU(4)"), ("B3", "Spin(7)"), ("C4", "Sp(4)"), ("D4", "Spin(8)"), ("F4", "F4")],
    )
    def test_group_name(self, name: str, group: str) -> None:
        """Test the simply connected group of each type."""
        assert LieType.parse(name).group_name == group

    def test_frozen_and_hashable(self) -> None:
        """Test that equal types hash together and cannot be mutated."""
        assert len({LieType.parse("C2"), LieType.of("c", 2)}) == 1
        with pytest.raises(ValidationError):
            LieType.parse("C2").rank = 3  # type: ignore[misc]

    def test_sort_key(self) -> None:
        """Test ordering by family then rank."""
        names = ["G2", "A10", "A2", "E6"]
        ordered = sorted((LieType.parse(n) for n in names), key=lambda t: t.sort_key)
        assert [t.name for t in ordered] == ["A2", "A10", "E6", "G2"]

    def test_classical(self) -> None:
        """Test the classical family flag."""
        assert LieType.parse("D5").is_classical
        assert not LieType.parse("E7").is_classical


class TestRationalFields:
    """Tests for RatField and QVecField."""

    def test_accepts_strings_and_ints(self) -> None:
        """Test the accepted inputs."""
        p = _Point(x="3/6", v=(1, "1/2"))
        assert p.x == Fraction(1, 2)
        assert p.v == (Fraction(1), Fraction(1, 2))

    def test_serializes_exactly(self) -> None:
        """Test p/q output in JSON mode."""
        assert _Point(x=Fraction(2, 3), v=(2,)).model_dump(mode="json") == {
            "x": "2/3",
            "v": ["2/1"],
        }

    @pytest.mark.parametrize("value", [True, 0.5, "x", "1/0"])
    def test_rejects(self, value: object) -> None:
        """Test that booleans, floats and bad strings are rejected."""
        with pytest.raises(ValidationError):
            _Point(x=value)


class TestIdentification:
    """Tests for Identification."""

    def test_labels(self) -> None:
        """Test the printed names."""
        assert Identification.center_point().label == "CenterPoint"
        assert Identification.quaternionic_grassmannian(1, 3).label == "QGr(1,3)"
        assert str(Identification.oriented_real_grassmannian(4, 7)) == "OrientedRealGr(4,7)"
        assert Identification.generic().label == "Generic"

    def test_dimensions(self) -> None:
        """Test 4d(n-d), p(m-p), 0 and None."""
        assert Identification.quaternionic_grassmannian(2, 5).dimension == 24
        assert Identification.oriented_real_grassmannian(4, 8).dimension == 16
        assert Identification.center_point().dimension == 0
        assert Identification.generic().dimension is None


class TestCategoryValue:
    """Tests for CategoryValue."""

    def test_constructors(self) -> None:
        """Test the printed forms of each kind."""
        assert str(CategoryValue.known(0)) == "Known(0)"
        assert str(CategoryValue.conjectured(3)) == "Conjectured(3)"
        assert str(CategoryValue.assumed(1)) == "Assumed(1)"
        assert str(CategoryValue.unknown()) == "Unknown"

    def test_assumed_source(self) -> None:
        """Test that overrides are labelled."""
        assert CategoryValue.assumed(2).source == "user override"

    def test_negative_value(self) -> None:
        """Test that categories are nonnegative."""
        with pytest.raises(ValidationError):
            CategoryValue.known(-1)


class TestVerifyPlanModel:
    """Tests for VerifyPlan validation."""

    def test_defaults(self) -> None:
        """Test default sampling parameters."""
        plan = VerifyPlan(lie_type=LieType.parse("C2"), checks=["lemma33"])
        assert (plan.seed, plan.samples, plan.word_length_bound) == (7, 500, 8)
        assert plan.grid_denominator == 12

    def test_empty_checks(self) -> None:
        """Test that a plan needs at least one check."""
        with pytest.raises(ValidationError):
            VerifyPlan(lie_type=LieType.parse("C2"), checks=[])

    def test_unknown_check(self) -> None:
        """Test that check names are validated."""
        with pytest.raises(ValidationError):
            VerifyPlan(lie_type=LieType.parse("C2"), checks=["lemma34"])


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
