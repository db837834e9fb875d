from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

IntervalRecord = tuple[str, str]  # (birth grade, death grade or "inf")


class SubspaceRecord(BaseModel):
    """Canonical basis, column-major, rationals as "p/q" strings."""

    ambient_dim: int = Field(..., ge=0)
    basis: list[list[str]] = []


class PosetRecord(BaseModel):
    grades: list[str]
    metric: list[list[str]] | None = None


class DiagramPoint(BaseModel):
    interval: IntervalRecord
    dim: int = Field(..., ge=1)
    basis: list[list[str]]
    description: str | None = None  # e.g. "span{2c - a - b}"


class DiagramDocument(BaseModel):
    poset: PosetRecord
    order: Literal["product", "reverse-inclusion"]
    degree: int | None = Field(default=None, ge=0)
    invariant: Literal["bd", "lap", "treegram", "custom"] = "custom"
    basis_labels: list[str] = []
    points: list[DiagramPoint] = []


class ClassicalPoint(BaseModel):
    interval: IntervalRecord
    multiplicity: int = Field(..., ge=1)


class ClassicalDocument(BaseModel):
    poset: PosetRecord
    degree: int = Field(..., ge=0)
    include_diagonal: bool = False
    points: list[ClassicalPoint] = []


class HarmonicRecord(BaseModel):
    """One off-diagonal point of the harmonic barcode next to the Grassmannian value."""

    interval: IntervalRecord
    multiplicity: int = Field(..., ge=0)
    harmonic_dim: int = Field(..., ge=0)
    projection_rank: int = Field(..., ge=0)
    barcode_space: SubspaceRecord


class HarmonicDocument(BaseModel):
    poset: PosetRecord
    degree: int = Field(..., ge=0)
    records: list[HarmonicRecord] = []
