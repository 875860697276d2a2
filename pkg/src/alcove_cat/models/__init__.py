"""Pydantic models for the inputs and results of alcove-cat."""

from alcove_cat.models.lie_type import FAMILIES, LieType
from alcove_cat.models.orbit import (
    BoundReport,
    CategoryValue,
    Identification,
    OrbitSummary,
    VertexOrbit,
)
from alcove_cat.models.verify import CheckResult, VerifyPlan, VerifyReport

__all__ = [
    "FAMILIES",
    "BoundReport",
    "CategoryValue",
    "CheckResult",
    "Identification",
    "LieType",
    "OrbitSummary",
    "VerifyPlan",
    "VerifyReport",
    "VertexOrbit",
]
