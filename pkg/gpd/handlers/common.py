"""Shared plumbing of the CLI commands: run configuration, inputs and outputs."""
from __future__ import annotations

import contextlib
import logging
from pathlib import Path
from typing import Any, Iterator

import typer
from pydantic import BaseModel, ValidationError

from gpd.config import get_settings
from gpd.models import RunConfig
from gpd.reports import exporters
from gpd.services.complex import Filtration, FiltrationError
from gpd.services.invariants import NotIntersectionMonotoneError
from gpd.services.inversion import InversionError
from gpd.services.linalg import BackendError, LinearAlgebraBackend, get_backend
from gpd.services.morphisms import MorphismError
from gpd.services.subspace import AmbientMismatchError
from gpd.services.treegram import TreegramError
from gpd.utils.filtration_parser import FiltrationParseError, load_filtration, read_filtration_document

settings = get_settings()
logger = logging.getLogger(__name__)

EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2

_INPUT_ERRORS = (
    FiltrationParseError,
    FiltrationError,
    TreegramError,
    InversionError,
    NotIntersectionMonotoneError,
    MorphismError,
    AmbientMismatchError,
    BackendError,
    ValidationError,
)


@contextlib.contextmanager
def input_errors() -> Iterator[None]:
    """Translate domain errors into exit status 2."""

    try:
        yield
    except _INPUT_ERRORS as exc:
        logger.error("%s", exc)
        raise typer.Exit(EXIT_INPUT_ERROR) from exc
    except ValueError as exc:
        logger.error("Invalid input: %s", exc)
        raise typer.Exit(EXIT_INPUT_ERROR) from exc


def global_options(ctx: typer.Context) -> dict[str, Any]:
    return ctx.obj or {}


def run_config(ctx: typer.Context, command: str, **fields: Any) -> RunConfig:
    options = global_options(ctx)
    fields.setdefault("backend", options.get("backend") or settings.backend)
    fields.setdefault("tolerance", options.get("tolerance"))
    fields.setdefault("seed", settings.seed)
    with input_errors():
        config = RunConfig(command=command, **fields)
    logger.debug("Run configuration: %s", config.model_dump_json())
    return config


def backend_for(config: RunConfig) -> LinearAlgebraBackend:
    with input_errors():
        return get_backend(config.backend, config.tolerance)


def load_input(path: Path, config: RunConfig, backend: LinearAlgebraBackend) -> Filtration | None:
    with input_errors():
        return load_filtration(path, gram_path=config.gram, backend=backend)


def input_grades(path: Path) -> list[str]:
    """Grades declared by a filtration file, for documents of empty filtrations."""

    with input_errors():
        document = read_filtration_document(path)
    return document.grades


def output_path(directory: Path, source: Path, suffix: str, extension: str) -> Path:
    return directory / f"{source.stem}.{suffix}.{extension}"


def emit_document(config: RunConfig, source: Path, suffix: str, document: BaseModel, tsv: str | None = None) -> None:
    """Write a document in the requested format when ``--output`` is set."""

    if config.output is None:
        return
    if config.output_format == "tsv" and tsv is not None:
        exporters.write_text(output_path(config.output, source, suffix, "tsv"), tsv)
    else:
        exporters.write_text(output_path(config.output, source, suffix, "json"), exporters.to_json(document))
