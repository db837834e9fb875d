"""Commands that compute diagrams from filtration files: compute, classical, harmonic."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional

import typer

from gpd.config import get_settings
from gpd.models import (
    ClassicalDocument,
    ClassicalPoint,
    DiagramDocument,
    HarmonicDocument,
    HarmonicRecord,
    PosetRecord,
    RunConfig,
)
from gpd.reports import exporters
from gpd.reports.diagram_plot import render_diagram_png
from gpd.services.complex import Filtration
from gpd.services.invariants import harmonic_tower, lk, zb
from gpd.services.inversion import GrassmannianDiagram, classical_diagram, oi_supseteq, oi_times
from gpd.services.poset import Interval
from gpd.services.subspace import perp, project_subspace
from gpd.services.treegram import treegram_of_filtration

from .common import (
    backend_for,
    emit_document,
    input_errors,
    input_grades,
    load_input,
    output_path,
    run_config,
)

settings = get_settings()
logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _degrees(config: RunConfig, filtration: Filtration | None) -> list[int]:
    if config.degrees:
        return list(config.degrees)
    top = filtration.max_dimension if filtration is not None else 0
    return list(range(max(top, 0) + 1))


def _config(ctx: typer.Context, command: str, output_format: str, output: Path | None, **fields) -> RunConfig:
    if output_format == "png" and output is None:
        output = settings.output_dir
    return run_config(ctx, command, output_format=output_format, output=output, **fields)


def classical_document(diagram: GrassmannianDiagram, degree: int, include_diagonal: bool = False) -> ClassicalDocument:
    poset = diagram.poset
    points = [
        ClassicalPoint(interval=poset.format_interval(I), multiplicity=m)
        for I, m in classical_diagram(diagram, include_diagonal).items()
    ]
    return ClassicalDocument(
        poset=poset.to_record(), degree=degree, include_diagonal=include_diagonal, points=points
    )


def _plot(config: RunConfig, source: Path, suffix: str, diagram: GrassmannianDiagram, title: str) -> None:
    poset = diagram.poset
    points = [
        (poset.grade(I.birth), None if I.is_ray else poset.grade(int(I.death)), W.dim)
        for I, W in diagram.values.items()
    ]
    payload = render_diagram_png(points, poset.grades, title)
    exporters.write_bytes(output_path(config.output, source, suffix, "png"), payload)


def _empty_documents(config: RunConfig, source: Path) -> None:
    grades = input_grades(source)
    for q in _degrees(config, None):
        document = DiagramDocument(
            poset=PosetRecord(grades=grades), order="product", degree=q, invariant="bd", points=[]
        )
        emit_document(config, source, f"bd.q{q}", document, exporters.diagram_tsv(document))
        if config.output is None:
            exporters.print_table(exporters.diagram_table(document, f"{source.name} degree {q}"))


def _emit_diagram(
    config: RunConfig, source: Path, suffix: str, diagram: GrassmannianDiagram, document: DiagramDocument
) -> None:
    if config.output_format == "png":
        _plot(config, source, suffix, diagram, f"{source.stem} {suffix}")
        return
    emit_document(config, source, suffix, document, exporters.diagram_tsv(document))
    if config.output is None:
        exporters.print_table(exporters.diagram_table(document, f"{source.name} {suffix}"))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def compute(
    ctx: typer.Context,
    inputs: List[Path] = typer.Argument(..., exists=True, dir_okay=False, help="Filtration files."),
    degree: List[int] = typer.Option([], "--degree", "-q", help="Homological degree; repeatable."),
    invariant: str = typer.Option("bd", "--invariant", help="bd, lap or both."),
    classical: bool = typer.Option(False, "--classical", help="Also write the integer diagram."),
    treegram: bool = typer.Option(False, "--treegram", help="Also write the treegram."),
    literal: bool = typer.Option(False, "--literal", help="Use the three-term ×-inversion."),
    gram: Optional[Path] = typer.Option(None, "--gram", exists=True, dir_okay=False),
    output_format: str = typer.Option("json", "--format", help="json, tsv or png."),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Output directory."),
) -> None:
    """Grassmannian persistence diagrams of each input, per degree and invariant."""

    config = _config(
        ctx, "compute", output_format, output, inputs=inputs, degrees=degree, invariant=invariant, gram=gram
    )
    if config.output_format == "dot":
        logger.error("DOT output is only available for treegrams")
        raise typer.Exit(2)
    backend = backend_for(config)
    for source in config.inputs:
        filtration = load_input(source, config, backend)
        if filtration is None:
            _empty_documents(config, source)
            continue
        with input_errors():
            for q in _degrees(config, filtration):
                if config.invariant in ("bd", "both"):
                    diagram = oi_times(zb(filtration, q), literal=literal)
                    _emit_diagram(config, source, f"bd.q{q}", diagram, diagram.to_document(q, "bd"))
                    if classical:
                        document = classical_document(diagram, q)
                        emit_document(
                            config, source, f"classical.q{q}", document, exporters.classical_tsv(document)
                        )
                if config.invariant in ("lap", "both"):
                    diagram = oi_supseteq(lk(filtration, q))
                    _emit_diagram(config, source, f"lap.q{q}", diagram, diagram.to_document(q, "lap"))
                logger.info("Computed degree %d of %s", q, source.name)
            if treegram:
                tree = treegram_of_filtration(filtration)
                emit_document(config, source, "treegram", tree.to_document())


def classical(
    ctx: typer.Context,
    inputs: List[Path] = typer.Argument(..., exists=True, dir_okay=False, help="Filtration files."),
    degree: List[int] = typer.Option([], "--degree", "-q"),
    diagonal: bool = typer.Option(False, "--diagonal", help="Keep ephemeral points."),
    gram: Optional[Path] = typer.Option(None, "--gram", exists=True, dir_okay=False),
    output_format: str = typer.Option("json", "--format", help="json, tsv or png."),
    output: Optional[Path] = typer.Option(None, "--output", "-o"),
) -> None:
    """Classical persistence diagrams read off the Grassmannian ones."""

    config = _config(ctx, "classical", output_format, output, inputs=inputs, degrees=degree, gram=gram)
    backend = backend_for(config)
    for source in config.inputs:
        filtration = load_input(source, config, backend)
        if filtration is None:
            logger.warning("%s has no simplices; nothing to write", source.name)
            continue
        with input_errors():
            for q in _degrees(config, filtration):
                diagram = oi_times(zb(filtration, q))
                document = classical_document(diagram, q, diagonal)
                suffix = f"classical.q{q}"
                if config.output_format == "png":
                    kept = diagram if diagonal else diagram.restrict(lambda I: not I.is_diagonal)
                    _plot(config, source, suffix, kept, f"{source.stem} {suffix}")
                    continue
                emit_document(config, source, suffix, document, exporters.classical_tsv(document))
                if config.output is None:
                    exporters.print_table(exporters.classical_table(document, f"{source.name} {suffix}"))


def harmonic(
    ctx: typer.Context,
    inputs: List[Path] = typer.Argument(..., exists=True, dir_okay=False, help="Filtration files."),
    degree: List[int] = typer.Option([], "--degree", "-q"),
    gram: Optional[Path] = typer.Option(None, "--gram", exists=True, dir_okay=False),
    output: Optional[Path] = typer.Option(None, "--output", "-o"),
) -> None:
    """Harmonic barcode next to the finite off-diagonal Grassmannian points."""

    config = _config(ctx, "harmonic", "json", output, inputs=inputs, degrees=degree, gram=gram)
    backend = backend_for(config)
    for source in config.inputs:
        filtration = load_input(source, config, backend)
        if filtration is None:
            logger.warning("%s has no simplices; nothing to write", source.name)
            continue
        with input_errors():
            for q in _degrees(config, filtration):
                document = harmonic_document(filtration, q)
                emit_document(config, source, f"harmonic.q{q}", document)
                if config.output is None:
                    exporters.print_table(exporters.harmonic_table(document, f"{source.name} harmonic q{q}"))


def harmonic_document(filtration: Filtration, q: int) -> HarmonicDocument:
    diagram = oi_times(zb(filtration, q))
    poset = filtration.poset
    records = []
    for i in range(1, filtration.n + 1):
        for j in range(i + 1, filtration.n + 1):
            value = diagram[Interval(i, j)]
            tower = harmonic_tower(filtration, q, i, j)
            if value.is_zero() and tower.p_space.is_zero():
                continue
            records.append(
                HarmonicRecord(
                    interval=poset.format_interval(Interval(i, j)),
                    multiplicity=value.dim,
                    harmonic_dim=tower.p_space.dim,
                    projection_rank=project_subspace(value, perp(tower.n_space)).dim,
                    barcode_space=tower.p_space.to_record(),
                )
            )
    return HarmonicDocument(poset=poset.to_record(), degree=q, records=records)
