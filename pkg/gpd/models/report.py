from __future__ import annotations

from typing import Literal

from pydantic import BaseModel


class CheckResult(BaseModel):
    """Outcome of a diagnostic check; truthy iff it passed."""

    ok: bool
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "CheckResult":
        return cls(ok=True)

    @classmethod
    def failed(cls, detail: str) -> "CheckResult":
        return cls(ok=False, detail=detail)


class PropertyResult(BaseModel):
    name: str
    status: Literal["pass", "fail", "skipped-float"]
    instances: int = 0
    detail: str | None = None


class VerifyReport(BaseModel):
    seed: int
    backend: str
    results: list[PropertyResult] = []

    @property
    def ok(self) -> bool:
        return all(result.status != "fail" for result in self.results)
