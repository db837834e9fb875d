from __future__ import annotations

import logging
from typing import Optional

import typer
from rich.console import Console
from rich.logging import RichHandler

from gpd.config import get_settings
from gpd.handlers import compute_handler, treegram_handler, verify_handler

app = typer.Typer(name="gpd", help="Grassmannian persistence diagrams of simplicial filtrations.", no_args_is_help=True)

app.command("compute")(compute_handler.compute)
app.command("classical")(compute_handler.classical)
app.command("harmonic")(compute_handler.harmonic)
app.command("treegram")(treegram_handler.treegram)
app.command("verify")(verify_handler.verify)
app.command("compare")(verify_handler.compare)


@app.callback()
def main(
    ctx: typer.Context,
    backend: Optional[str] = typer.Option(None, "--backend", help="rational or float; overrides GPD_BACKEND."),
    tolerance: Optional[float] = typer.Option(None, "--tolerance", help="Float backend tolerance."),
    log_level: Optional[str] = typer.Option(None, "--log-level"),
) -> None:
    settings = get_settings()
    logging.basicConfig(
        level=(log_level or settings.log_level).upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True, show_path=False)],
        force=True,
    )
    ctx.obj = {"backend": backend, "tolerance": tolerance}


if __name__ == "__main__":
    app()
