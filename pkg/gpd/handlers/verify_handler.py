"""The ``verify`` and ``compare`` commands."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import ValidationError
from rich.console import Console

from gpd.config import get_settings
from gpd.models import DiagramDocument
from gpd.reports import exporters
from gpd.services.inversion import GrassmannianDiagram, off_diagonal_part
from gpd.services.subspace import AmbientSpace
from gpd.services.verification import run_suites, suite_names

from .common import EXIT_INPUT_ERROR, EXIT_VERIFY_FAILED, backend_for, input_errors, run_config

settings = get_settings()
logger = logging.getLogger(__name__)


def verify(
    ctx: typer.Context,
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed of the random instance set."),
    suite: List[str] = typer.Option([], "--suite", help="Run only these properties; repeatable."),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the JSON report here."),
) -> None:
    """Run the property suites; exit 1 if any property fails."""

    config = run_config(ctx, "verify", seed=settings.seed if seed is None else seed)
    backend = backend_for(config)
    unknown = [name for name in suite if name not in suite_names()]
    if unknown:
        logger.error("Unknown property %r; choose from %s", unknown[0], ", ".join(suite_names()))
        raise typer.Exit(EXIT_INPUT_ERROR)
    report = run_suites(config.seed, backend, suite or None)
    if output is not None:
        exporters.write_text(output, exporters.to_json(report))
    exporters.print_table(exporters.report_table(report))
    if not report.ok:
        raise typer.Exit(EXIT_VERIFY_FAILED)


def _read_diagram(path: Path, backend) -> GrassmannianDiagram:
    try:
        document = DiagramDocument.model_validate_json(path.read_text(encoding="utf-8"))
    except (OSError, ValidationError) as exc:
        logger.error("Cannot read diagram %s: %s", path, exc)
        raise typer.Exit(EXIT_INPUT_ERROR) from exc
    ambient = AmbientSpace.standard(len(document.basis_labels), document.basis_labels, backend=backend)
    with input_errors():
        return GrassmannianDiagram.from_document(document, ambient)


def compare(
    ctx: typer.Context,
    first: Path = typer.Argument(..., exists=True, dir_okay=False),
    second: Path = typer.Argument(..., exists=True, dir_okay=False),
    with_diagonal: bool = typer.Option(False, "--with-diagonal", help="Also compare ephemeral points."),
) -> None:
    """Compare two diagram files, ignoring the diagonal unless asked."""

    config = run_config(ctx, "compare", inputs=[first, second])
    backend = backend_for(config)
    left, right = _read_diagram(first, backend), _read_diagram(second, backend)
    if left.ambient.labels != right.ambient.labels:
        logger.error("Diagrams live in different chain spaces")
        raise typer.Exit(EXIT_INPUT_ERROR)
    if not with_diagonal:
        left, right = off_diagonal_part(left), off_diagonal_part(right)
    console = Console()
    if left.poset != right.poset:
        console.print("differs: the diagrams are indexed by different posets", markup=False)
        raise typer.Exit(EXIT_VERIFY_FAILED)
    if left == right:
        console.print("equal", markup=False)
        return
    differing = sorted(
        {I for I in left.values.keys() | right.values.keys() if left[I] != right[I]}
    )
    for interval in differing:
        birth, death = left.poset.format_interval(interval)
        console.print(f"differs at [{birth}, {death}]", markup=False)
    raise typer.Exit(EXIT_VERIFY_FAILED)
