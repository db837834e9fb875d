"""Serialisation of diagram documents to files and terminal tables."""
from __future__ import annotations

import logging
from pathlib import Path

from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from gpd.models import ClassicalDocument, DiagramDocument, HarmonicDocument, VerifyReport

logger = logging.getLogger(__name__)


def to_json(document: BaseModel) -> str:
    return document.model_dump_json(indent=2) + "\n"


def diagram_tsv(document: DiagramDocument) -> str:
    """Plot data: one row per point with its endpoints and dimension."""

    lines = ["birth\tdeath\tdim"]
    lines.extend(f"{p.interval[0]}\t{p.interval[1]}\t{p.dim}" for p in document.points)
    return "\n".join(lines) + "\n"


def classical_tsv(document: ClassicalDocument) -> str:
    lines = ["birth\tdeath\tmultiplicity"]
    lines.extend(f"{p.interval[0]}\t{p.interval[1]}\t{p.multiplicity}" for p in document.points)
    return "\n".join(lines) + "\n"


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("Wrote %s", path)
    return path


def write_bytes(path: Path, payload: bytes) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(payload)
    logger.info("Wrote %s", path)
    return path


# ---------------------------------------------------------------------------
# Terminal summaries
# ---------------------------------------------------------------------------


def diagram_table(document: DiagramDocument, title: str) -> Table:
    table = Table(title=title)
    table.add_column("interval")
    table.add_column("dim", justify="right")
    table.add_column("span")
    for point in document.points:
        birth, death = point.interval
        table.add_row(f"[{birth}, {death}{')' if death == 'inf' else ']'}", str(point.dim), point.description or "")
    return table


def classical_table(document: ClassicalDocument, title: str) -> Table:
    table = Table(title=title)
    table.add_column("interval")
    table.add_column("multiplicity", justify="right")
    for point in document.points:
        birth, death = point.interval
        table.add_row(f"[{birth}, {death}{')' if death == 'inf' else ']'}", str(point.multiplicity))
    return table


def harmonic_table(document: HarmonicDocument, title: str) -> Table:
    table = Table(title=title)
    for column in ("interval", "multiplicity", "harmonic dim", "projection rank"):
        table.add_column(column)
    for record in document.records:
        birth, death = record.interval
        table.add_row(
            f"[{birth}, {death}]", str(record.multiplicity), str(record.harmonic_dim), str(record.projection_rank)
        )
    return table


def report_table(report: VerifyReport) -> Table:
    table = Table(title=f"verify (seed {report.seed}, {report.backend})")
    table.add_column("property")
    table.add_column("status")
    table.add_column("instances", justify="right")
    table.add_column("detail")
    styles = {"pass": "green", "fail": "red", "skipped-float": "yellow"}
    for result in report.results:
        table.add_row(
            result.name,
            f"[{styles[result.status]}]{result.status}[/]",
            str(result.instances),
            result.detail or "",
        )
    return table


def print_table(table: Table, console: Console | None = None) -> None:
    (console or Console()).print(table)
