"""Pydantic models for points, reports and their JSON forms."""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction

from pydantic import BaseModel, Field, field_validator

from geocrystal.cartan import AffineTypeId
from geocrystal.semiring import format_scalar, parse_scalar

TYPE_PATTERN = r"^(a1|b1|d1|a2-odd|d2|a2-even|a2-even-dagger)$"
MODEL_PATTERN = r"^(V|B|V2)$"


def _canonical(value: str | int) -> str:
    return format_scalar(parse_scalar(value))


# --- geometric crystal points ---


class GCPoint(BaseModel):
    """A point of a geometric crystal model with its spectral parameter."""

    type: str = Field(pattern=TYPE_PATTERN)
    n: int = Field(gt=0)
    model: str = Field(default="V", pattern=MODEL_PATTERN)
    L: str = Field(default="1", description="spectral parameter as p/q")
    coords: dict[str, str]

    @field_validator("L")
    @classmethod
    def _check_spectral(cls, v: str) -> str:
        q = parse_scalar(v)
        if q == 0:
            raise ValueError("spectral parameter must be nonzero")
        return format_scalar(q)

    @field_validator("coords", mode="before")
    @classmethod
    def _check_coords(cls, v: Mapping[str, str | int]) -> dict[str, str]:
        out = {name: _canonical(value) for name, value in dict(v).items()}
        zero = [name for name, value in out.items() if value == "0"]
        if zero:
            raise ValueError(f"coordinates must be nonzero: {', '.join(zero)}")
        return out

    @property
    def affine_type(self) -> AffineTypeId:
        return AffineTypeId(self.type, self.n)

    @property
    def spectral(self) -> Fraction:
        return parse_scalar(self.L)

    def values(self) -> dict[str, Fraction]:
        return {name: parse_scalar(value) for name, value in self.coords.items()}

    @classmethod
    def build(
        cls,
        t: AffineTypeId,
        model: str,
        spectral: Fraction | int,
        values: Mapping[str, Fraction | int],
    ) -> GCPoint:
        return cls(
            type=t.family,
            n=t.rank,
            model=model,
            L=format_scalar(spectral),
            coords={name: format_scalar(v) for name, v in values.items()},
        )

    def replace(
        self, values: Mapping[str, Fraction], spectral: Fraction | None = None
    ) -> GCPoint:
        return GCPoint.build(
            self.affine_type,
            self.model,
            self.spectral if spectral is None else spectral,
            values,
        )


class ProductPoint(BaseModel):
    """Ordered factors of a product geometric crystal (left-associated)."""

    factors: list[GCPoint] = Field(min_length=1)

    @field_validator("factors")
    @classmethod
    def _same_model(cls, v: list[GCPoint]) -> list[GCPoint]:
        kinds = {(p.type, p.n, p.model) for p in v}
        if len(kinds) > 1:
            raise ValueError("all factors must share type, rank and model")
        return v


# --- ultra-discretization ---


class LatticePoint(BaseModel):
    """Integer point of an ultra-discretized model; ``level`` is the UD of L."""

    type: str = Field(pattern=TYPE_PATTERN)
    n: int = Field(gt=0)
    model: str = Field(default="V", pattern=MODEL_PATTERN)
    level: int = 0
    coords: dict[str, int]

    @property
    def affine_type(self) -> AffineTypeId:
        return AffineTypeId(self.type, self.n)


# --- verification reports ---


class CheckRecord(BaseModel):
    """Outcome counts for one named identity.

    Advisory records compare against printed closed forms that are not authoritative; their
    failures are reported but do not fail the suite.
    """

    suite: str
    check: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    details: list[str] = Field(default_factory=list)
    advisory: bool = False

    @property
    def ok(self) -> bool:
        return self.advisory or self.failed == 0


class SuiteReport(BaseModel):
    type: str
    n: int
    suite: str
    seed: int
    records: list[CheckRecord] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    def summary(self) -> dict[str, object]:
        return {
            "status": "ok" if self.ok else "failed",
            "type": self.type,
            "n": self.n,
            "suite": self.suite,
            "seed": self.seed,
            "checks": len(self.records),
            "passed": sum(r.passed for r in self.records),
            "failed": sum(r.failed for r in self.records if not r.advisory),
            "skipped": sum(r.skipped for r in self.records),
        }
