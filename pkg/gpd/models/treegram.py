from __future__ import annotations

from pydantic import BaseModel


class BreakpointRecord(BaseModel):
    t: str
    blocks: list[list[str]]


class TreegramDocument(BaseModel):
    vertices: list[str]
    breakpoints: list[BreakpointRecord] = []
