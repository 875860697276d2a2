"""
Models describing the distinguished conjugacy classes O_k and the category bound.

These are the I/O-facing results of the orbit classifier; they serialize to
JSON with exact fractions written as ``"p/q"`` strings.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from alcove_cat.models.fields import QVecField
from alcove_cat.models.lie_type import LieType

CategoryKind = Literal["known", "conjectured", "assumed", "unknown"]

IdentificationKind = Literal[
    "center_point",
    "quaternionic_grassmannian",
    "oriented_real_grassmannian",
    "generic",
]


class CategoryValue(BaseModel):
    """
    Relative category of an orbit in its group, with provenance.

    ``assumed`` marks a value supplied as a user override.
    """

    model_config = ConfigDict(frozen=True)

    kind: CategoryKind
    value: Optional[int] = Field(default=None, ge=0)
    source: str = Field(default="", description="Where the value comes from")

    @model_validator(mode="after")
    def validate_value(self) -> "CategoryValue":
        if self.kind == "unknown" and self.value is not None:
            raise ValueError("An unknown category carries no value")
        if self.kind != "unknown" and self.value is None:
            raise ValueError(f"A {self.kind} category needs a value")
        return self

    @classmethod
    def known(cls, value: int, source: str = "") -> "CategoryValue":
        return cls(kind="known", value=value, source=source)

    @classmethod
    def conjectured(cls, value: int, source: str = "") -> "CategoryValue":
        return cls(kind="conjectured", value=value, source=source)

    @classmethod
    def assumed(cls, value: int, source: str = "user override") -> "CategoryValue":
        return cls(kind="assumed", value=value, source=source)

    @classmethod
    def unknown(cls, source: str = "") -> "CategoryValue":
        return cls(kind="unknown", source=source)

    def __str__(self) -> str:
        if self.value is None:
            return "Unknown"
        return f"{self.kind.capitalize()}({self.value})"


class Identification(BaseModel):
    """
    Named homogeneous space an orbit is diffeomorphic to.

    QuaternionicGrassmannian(d, n) uses ``d``/``n``; OrientedRealGrassmannian
    (p, m) uses ``p``/``m``.
    """

    model_config = ConfigDict(frozen=True)

    kind: IdentificationKind
    d: Optional[int] = None
    n: Optional[int] = None
    p: Optional[int] = None
    m: Optional[int] = None

    @classmethod
    def center_point(cls) -> "Identification":
        return cls(kind="center_point")

    @classmethod
    def quaternionic_grassmannian(cls, d: int, n: int) -> "Identification":
        return cls(kind="quaternionic_grassmannian", d=d, n=n)

    @classmethod
    def oriented_real_grassmannian(cls, p: int, m: int) -> "Identification":
        return cls(kind="oriented_real_grassmannian", p=p, m=m)

    @classmethod
    def generic(cls) -> "Identification":
        return cls(kind="generic")

    @property
    def dimension(self) -> Optional[int]:
        """Manifold dimension of the named space, when it has a closed form."""
        if self.kind == "center_point":
            return 0
        if self.kind == "quaternionic_grassmannian" and self.d is not None and self.n is not None:
            return 4 * self.d * (self.n - self.d)
        if self.kind == "oriented_real_grassmannian" and self.p is not None and self.m is not None:
            return self.p * (self.m - self.p)
        return None

    @property
    def label(self) -> str:
        if self.kind == "center_point":
            return "CenterPoint"
        if self.kind == "quaternionic_grassmannian":
            return f"QGr({self.d},{self.n})"
        if self.kind == "oriented_real_grassmannian":
            return f"OrientedRealGr({self.p},{self.m})"
        return "Generic"

    def __str__(self) -> str:
        return self.label


class VertexOrbit(BaseModel):
    """The conjugacy class O_k of exp v_k."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=0)
    vertex: QVecField
    subsystem: tuple[QVecField, ...] = Field(
        ..., description="Roots alpha with alpha(v_k) integral"
    )
    stabilizer_components: tuple[LieType, ...]
    is_central: bool
    orbit_dim: int = Field(..., ge=0)
    identification: Identification
    rel_cat: CategoryValue

    @model_validator(mode="after")
    def validate_centrality(self) -> "VertexOrbit":
        central_id = self.identification.kind == "center_point"
        if not (self.is_central == (self.orbit_dim == 0) == central_id):
            raise ValueError(
                f"O_{self.k}: is_central, orbit_dim == 0 and CenterPoint must agree"
            )
        return self

    @property
    def stabilizer_label(self) -> str:
        if not self.stabilizer_components:
            return "1"
        return "x".join(t.name for t in self.stabilizer_components)


class OrbitSummary(BaseModel):
    """Per-orbit row of a BoundReport."""

    k: int
    identification: Identification
    orbit_dim: int
    rel_cat: CategoryValue


class BoundReport(BaseModel):
    """
    Upper bound cat(G) + 1 <= sum_k (cat_G(O_k) + 1).

    ``upper_bound`` is None when some summand is unknown.
    """

    lie_type: LieType
    group: str
    orbits: list[OrbitSummary]
    upper_bound: Optional[int] = None
    assumptions: list[str] = Field(default_factory=list)
    known_lower_bound: Optional[int] = None
    lower_bound_citation: Optional[str] = None
    known_value: Optional[int] = None
    known_value_citation: Optional[str] = None
    notes: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_bound(self) -> "BoundReport":
        if self.upper_bound is not None:
            values = [o.rel_cat.value for o in self.orbits]
            if any(v is None for v in values):
                raise ValueError("A bound was given although a summand is unknown")
            expected = sum(v + 1 for v in values if v is not None) - 1
            if expected != self.upper_bound:
                raise ValueError(
                    f"upper_bound {self.upper_bound} != sum(rel_cat + 1) - 1 = {expected}"
                )
        return self

    @property
    def upper_bound_label(self) -> str:
        return "Unknown" if self.upper_bound is None else str(self.upper_bound)
