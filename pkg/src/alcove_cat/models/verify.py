"""
Verification plan and report models.

A plan names a Lie type, the checks to run and the sampling parameters;
running it yields one CheckResult per check in plan order. A failed check
always carries a counterexample that reproduces the failure on its own.
"""

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from alcove_cat.models.lie_type import LieType
from alcove_cat.utils import safe_json_dumps

CheckName = Literal[
    "lemma33",
    "prop34b",
    "prop34c",
    "prop34d",
    "thm41_welldef",
    "grass_cover",
    "spin_double_cover",
    "dim_identity",
]

ALL_CHECKS: tuple[CheckName, ...] = (
    "lemma33",
    "prop34b",
    "prop34c",
    "prop34d",
    "thm41_welldef",
    "grass_cover",
    "spin_double_cover",
    "dim_identity",
)

# Checks tied to a concrete matrix or Clifford model apply to some families only.
CHECK_FAMILIES: dict[str, tuple[str, ...]] = {
    "grass_cover": ("C",),
    "spin_double_cover": ("B", "D"),
    "dim_identity": ("A", "B", "C", "D"),
}


def check_supported(check: str, lie_type: LieType) -> bool:
    families = CHECK_FAMILIES.get(check)
    return families is None or lie_type.family in families


def checks_for(lie_type: LieType) -> list[CheckName]:
    """Every check that applies to the given type, in canonical order."""
    return [c for c in ALL_CHECKS if check_supported(c, lie_type)]


class VerifyPlan(BaseModel):
    """
    A verification campaign.

    Example:
        >>> plan = VerifyPlan(lie_type=LieType.parse("C2"), checks=["lemma33"])
        >>> plan.samples, plan.word_length_bound
        (500, 8)
    """

    lie_type: LieType
    checks: list[CheckName] = Field(..., min_length=1)
    seed: int = Field(default=7, description="Seed of the pseudo-random source")
    samples: int = Field(default=500, gt=0)
    word_length_bound: int = Field(default=8, ge=1)
    grid_denominator: int = Field(default=12, ge=1)
    boundary_rate: float = Field(default=0.25, ge=0.0, le=1.0)

    @field_validator("checks")
    @classmethod
    def validate_checks(cls, v: list[CheckName]) -> list[CheckName]:
        if len(set(v)) != len(v):
            raise ValueError(f"Duplicate checks in plan: {v}")
        return v

    @classmethod
    def all_for(cls, lie_type: LieType, **kwargs: Any) -> "VerifyPlan":
        return cls(lie_type=lie_type, checks=checks_for(lie_type), **kwargs)


class CheckResult(BaseModel):
    """Outcome of one check."""

    check: CheckName
    passed: bool
    instances: int = Field(default=0, ge=0, description="Instances tested")
    counterexample: Optional[dict[str, Any]] = None
    detail: str = ""
    duration_seconds: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="after")
    def validate_counterexample(self) -> "CheckResult":
        if not self.passed and self.counterexample is None:
            raise ValueError(f"Failed check {self.check} must carry a counterexample")
        return self


class VerifyReport(BaseModel):
    """Results of a plan, in plan order."""

    lie_type: LieType
    seed: int
    results: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_json(self, timings: bool = False) -> str:
        """
        JSON form of the report; durations are left out unless ``timings``
        so identical plans give identical output.
        """
        data = self.model_dump(mode="json")
        data["lie_type"] = self.lie_type.name
        data["passed"] = self.passed
        if not timings:
            for entry in data["results"]:
                entry.pop("duration_seconds", None)
        return safe_json_dumps(data, indent=2)
