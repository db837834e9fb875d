from __future__ import annotations

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, NonNegativeInt, model_validator


class RunConfig(BaseModel):
    """Options of one CLI invocation, after merging flags over settings."""

    command: str
    inputs: list[Path] = []
    degrees: list[NonNegativeInt] = []
    invariant: Literal["bd", "lap", "both"] = "bd"
    backend: Literal["rational", "float"] = "rational"
    gram: Path | None = None
    output_format: Literal["json", "tsv", "dot", "png"] = "json"
    output: Path | None = None
    seed: int = 0
    tolerance: float | None = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _check_degrees(self) -> "RunConfig":
        if self.invariant in ("lap", "both") and not self.degrees:
            raise ValueError("The Laplacian invariant needs at least one --degree")
        if self.backend == "rational":
            # exact arithmetic ignores the tolerance
            self.tolerance = None
        return self
