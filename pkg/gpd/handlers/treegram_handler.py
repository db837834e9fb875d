"""The ``treegram`` command."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional

import typer
from rich.console import Console

from gpd.reports import exporters
from gpd.services.invariants import zb
from gpd.services.inversion import oi_times
from gpd.services.treegram import reconstruct_gpd0, treegram_of_filtration, treegram_to_dot

from .common import EXIT_VERIFY_FAILED, backend_for, input_errors, load_input, output_path, run_config

logger = logging.getLogger(__name__)


def treegram(
    ctx: typer.Context,
    inputs: List[Path] = typer.Argument(..., exists=True, dir_okay=False, help="Filtration files."),
    reconstruct: bool = typer.Option(
        False, "--reconstruct", help="Rebuild the degree-0 diagram from the treegram and compare."
    ),
    output_format: str = typer.Option("json", "--format", help="json or dot."),
    output: Optional[Path] = typer.Option(None, "--output", "-o"),
) -> None:
    """Merge history of connected components."""

    config = run_config(ctx, "treegram", inputs=inputs, output_format=output_format, output=output)
    if config.output_format not in ("json", "dot"):
        logger.error("Treegrams are written as json or dot")
        raise typer.Exit(2)
    backend = backend_for(config)
    console = Console()
    mismatches = 0
    for source in config.inputs:
        filtration = load_input(source, config, backend)
        if filtration is None:
            logger.warning("%s has no simplices; nothing to write", source.name)
            continue
        with input_errors():
            tree = treegram_of_filtration(filtration)
            text = treegram_to_dot(tree) if config.output_format == "dot" else exporters.to_json(tree.to_document())
            if config.output is None:
                console.print(text, end="", markup=False, highlight=False)
            else:
                exporters.write_text(output_path(config.output, source, "treegram", config.output_format), text)
            if reconstruct:
                rebuilt = reconstruct_gpd0(tree, filtration.context(0), filtration.poset)
                equal = rebuilt == oi_times(zb(filtration, 0))
                verdict = "equal" if equal else "different"
                console.print(f"{source.name}: reconstruction {verdict}", markup=False)
                if not equal:
                    mismatches += 1
                    logger.error("Reconstruction differs from the ×-inversion for %s", source.name)
    if mismatches:
        raise typer.Exit(EXIT_VERIFY_FAILED)
