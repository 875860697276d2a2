"""
Lie type model.

A LieType names one simple, simply connected compact Lie group by its
Dynkin family and rank, e.g. ``C4`` for Sp(4) or ``B3`` for Spin(7).
"""

import re
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from alcove_cat.errors import InvalidLieTypeError

Family = Literal["A", "B", "C", "D", "E", "F", "G"]

FAMILIES: tuple[str, ...] = ("A", "B", "C", "D", "E", "F", "G")

_TYPE_PATTERN = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


class LieType(BaseModel):
    """
    Dynkin family and rank of a simple Lie type.

    Rank constraints: A n>=1, B n>=2, C n>=1 (C1 = A1), D n>=3,
    E n in {6, 7, 8}, F n=4, G n=2.

    Example:
        >>> LieType.parse("C4").group_name
        'Sp(4)'
        >>> str(LieType(family="E", rank=8))
        'E8'
    """

    model_config = ConfigDict(frozen=True)

    family: Family = Field(..., description="Dynkin family letter")
    rank: int = Field(..., ge=1, description="Rank of the root system")

    @model_validator(mode="after")
    def validate_rank(self) -> "LieType":
        """Reject (family, rank) pairs that name no simple type."""
        f, n = self.family, self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 1,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[f]
        if not ok:
            raise ValueError(f"Invalid rank {n} for family {f}")
        return self

    @classmethod
    def of(cls, family: str, rank: int) -> "LieType":
        """
        Build a LieType, converting validation failures to InvalidLieTypeError.

        Raises:
            InvalidLieTypeError: If the family is unknown or the rank invalid
        """
        try:
            return cls(family=family.upper(), rank=rank)  # type: ignore[arg-type]
        except ValidationError as e:
            raise InvalidLieTypeError(
                f"{family}{rank} is not a simple Lie type: "
                + "; ".join(err["msg"] for err in e.errors())
            ) from e

    @classmethod
    def parse(cls, text: str) -> "LieType":
        """Parse names such as ``"C4"``, ``"e_8"`` or ``"G2"``."""
        match = _TYPE_PATTERN.match(text)
        if not match:
            raise InvalidLieTypeError(f"Cannot parse Lie type from {text!r}")
        return cls.of(match.group(1), int(match.group(2)))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def is_classical(self) -> bool:
        return self.family in ("A", "B", "C", "D")

    @property
    def group_name(self) -> str:
        """Compact simply connected group of this type."""
        n = self.rank
        if self.family == "A":
            return f"SU({n + 1})"
        if self.family == "B":
            return f"Spin({2 * n + 1})"
        if self.family == "C":
            return f"Sp({n})"
        if self.family == "D":
            return f"Spin({2 * n})"
        return self.name

    @property
    def sort_key(self) -> tuple[int, int]:
        return FAMILIES.index(self.family), self.rank

    def __str__(self) -> str:
        return self.name
