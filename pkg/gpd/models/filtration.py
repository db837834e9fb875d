from __future__ import annotations

from pydantic import BaseModel, field_validator


class SimplexRecord(BaseModel):
    t: str
    v: list[str]

    @field_validator("t", mode="before")
    @classmethod
    def _grade_as_text(cls, value: object) -> str:
        # numbers are re-read as exact decimals later
        return str(value)


class FiltrationDocument(BaseModel):
    vertices: list[str] = []
    grades: list[str] = []  # steps that add no simplex
    simplices: list[SimplexRecord] = []

    @field_validator("grades", mode="before")
    @classmethod
    def _grades_as_text(cls, value: object) -> object:
        if isinstance(value, list):
            return [str(item) for item in value]
        return value


class GramDocument(BaseModel):
    """Gram matrices of the chain spaces keyed by degree; omitted degrees use the identity."""

    grams: dict[int, list[list[str]]] = {}

    @field_validator("grams", mode="before")
    @classmethod
    def _entries_as_text(cls, value: object) -> object:
        if isinstance(value, dict):
            return {k: [[str(x) for x in row] for row in rows] for k, rows in value.items()}
        return value
