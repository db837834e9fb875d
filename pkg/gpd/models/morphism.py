from __future__ import annotations

from pydantic import BaseModel, Field

from .diagram import SubspaceRecord


class MorphismDocument(BaseModel):
    """A Galois connection by 1-based index maps, plus an optional diagonal zeta."""

    left: list[int] = Field(..., min_length=1)
    right: list[int] = Field(..., min_length=1)
    zeta: dict[str, SubspaceRecord] | None = None  # keyed by the grade t of [t, t]
    cost: str | None = None
