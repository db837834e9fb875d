"""Readers for filtration files and Gram-matrix files.

Text format::

    # comments and blank lines are ignored
    vertices: a b c
    grades: 0
    1 ; a
    1 ; b
    2 ; a b

JSON files hold a :class:`FiltrationDocument`. Gram files hold a
:class:`GramDocument` whose matrices follow the chain basis order (simplices
sorted by vertex positions).
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from gpd.models import FiltrationDocument, GramDocument, SimplexRecord
from gpd.services.complex import Filtration, FiltrationError
from gpd.services.linalg import LinearAlgebraBackend
from gpd.services.poset import parse_grade

logger = logging.getLogger(__name__)


class FiltrationParseError(ValueError):
    """Raised for unreadable filtration or Gram files."""

    def __init__(self, message: str, line_number: int | None = None, line: str | None = None) -> None:
        where = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{where}{message}")
        self.line_number = line_number
        self.line = line


def parse_filtration_text(text: str) -> FiltrationDocument:
    vertices: list[str] = []
    grades: list[str] = []
    simplices: list[SimplexRecord] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        key = head.strip().lower()
        if key in ("vertices", "grades") and ";" not in line:
            items = rest.split()
            if key == "vertices":
                vertices.extend(items)
            else:
                for item in items:
                    _check_grade(item, number, raw)
                grades.extend(items)
            continue
        grade, sep, members = line.partition(";")
        if not sep:
            raise FiltrationParseError("expected '<grade> ; <vertices>'", number, raw)
        grade = grade.strip()
        _check_grade(grade, number, raw)
        names = members.split()
        if not names:
            raise FiltrationParseError("simplex has no vertices", number, raw)
        if len(set(names)) != len(names):
            raise FiltrationParseError("simplex repeats a vertex", number, raw)
        simplices.append(SimplexRecord(t=grade, v=names))
    return FiltrationDocument(vertices=vertices, grades=grades, simplices=simplices)


def _check_grade(value: str, number: int, raw: str) -> None:
    try:
        parse_grade(value)
    except ValueError as exc:
        raise FiltrationParseError(f"bad grade {value!r}", number, raw) from exc


def parse_filtration_json(text: str) -> FiltrationDocument:
    try:
        return FiltrationDocument.model_validate_json(text)
    except ValidationError as exc:
        raise FiltrationParseError(f"invalid filtration document: {exc.errors()[0]['msg']}") from exc


def read_filtration_document(path: Path) -> FiltrationDocument:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FiltrationParseError(f"cannot read {path}: {exc.strerror}") from exc
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return parse_filtration_json(text)
    return parse_filtration_text(text)


def filtration_from_document(
    document: FiltrationDocument,
    *,
    grams: dict[int, list[list[Any]]] | None = None,
    backend: LinearAlgebraBackend | None = None,
) -> Filtration | None:
    """The filtration of a document; None for a document without simplices."""

    if not document.simplices:
        logger.warning("Filtration has no simplices")
        return None
    listed = set(document.vertices)
    if listed:
        for record in document.simplices:
            unknown = [v for v in record.v if v not in listed]
            if unknown:
                raise FiltrationError(f"Vertex {unknown[0]!r} is not in the vertices header", tuple(record.v))
    entries = [(tuple(record.v), record.t) for record in document.simplices]
    return Filtration.from_grades(
        entries,
        vertex_order=document.vertices,
        extra_grades=document.grades,
        grams=grams,
        backend=backend,
    )


def load_grams(path: Path) -> dict[int, list[list[str]]]:
    try:
        document = GramDocument.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise FiltrationParseError(f"cannot read {path}: {exc.strerror}") from exc
    except ValidationError as exc:
        raise FiltrationParseError(f"invalid Gram document: {exc.errors()[0]['msg']}") from exc
    return document.grams


def load_filtration(
    path: Path, *, gram_path: Path | None = None, backend: LinearAlgebraBackend | None = None
) -> Filtration | None:
    document = read_filtration_document(path)
    grams = load_grams(gram_path) if gram_path is not None else None
    filtration = filtration_from_document(document, grams=grams, backend=backend)
    if filtration is not None:
        logger.info(
            "Loaded %s: %d simplices over %d steps", path.name, len(filtration.entry), filtration.n
        )
    return filtration
