"""Simplicial complexes, filtrations and their chain spaces.

All degree-q subspaces of a filtration live in the chain space of the final
complex K, with one orthonormal (or Gram-weighted) basis vector per oriented
q-simplex. Operators of a subcomplex are represented K-wide with zero
columns for the simplices it does not contain.
"""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Sequence

import networkx as nx

from gpd.models import FiltrationDocument, SimplexRecord
from gpd.services.linalg import LinearAlgebraBackend, get_backend
from gpd.services.poset import LinearMetricPoset, parse_grade
from gpd.services.subspace import AmbientSpace, Subspace, Vector, span

logger = logging.getLogger(__name__)

Simplex = tuple[str, ...]
Matrix = list[list[Any]]


class FiltrationError(ValueError):
    """Raised for malformed complexes and filtrations."""

    def __init__(self, message: str, simplex: Simplex | None = None) -> None:
        super().__init__(message)
        self.simplex = simplex


# ---------------------------------------------------------------------------
# Simplices
# ---------------------------------------------------------------------------


def faces(simplex: Simplex) -> list[tuple[int, Simplex]]:
    """Codimension-one faces with their boundary signs (-1)^k."""

    if len(simplex) < 2:
        return []
    return [
        ((-1) ** k, simplex[:k] + simplex[k + 1 :])
        for k in range(len(simplex))
    ]


def simplex_label(simplex: Simplex) -> str:
    if all(len(v) == 1 for v in simplex):
        return "".join(simplex)
    return "[" + ",".join(simplex) + "]"


def normalize_simplex(vertices: Iterable[str], order: Mapping[str, int]) -> Simplex:
    """Sort vertices by the vertex order; repeated vertices are rejected."""

    items = list(vertices)
    if not items:
        raise FiltrationError("A simplex needs at least one vertex")
    if len(set(items)) != len(items):
        raise FiltrationError(f"Repeated vertex in simplex {items}")
    missing = [v for v in items if v not in order]
    if missing:
        raise FiltrationError(f"Unknown vertex {missing[0]!r} in simplex {items}")
    return tuple(sorted(items, key=order.__getitem__))


@dataclass(frozen=True)
class SimplicialComplex:
    simplices: frozenset[Simplex]

    def __post_init__(self) -> None:
        object.__setattr__(self, "simplices", frozenset(self.simplices))
        for simplex in self.simplices:
            for _, face in faces(simplex):
                if face not in self.simplices:
                    raise FiltrationError(f"Face {face} of {simplex} is missing", simplex)

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls(frozenset())

    def __contains__(self, simplex: object) -> bool:
        return simplex in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def vertices(self) -> set[str]:
        return {s[0] for s in self.simplices if len(s) == 1}

    def of_dimension(self, q: int) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == q + 1)

    def components(self) -> list[frozenset[str]]:
        """Connected components of the 1-skeleton."""

        graph = nx.Graph()
        graph.add_nodes_from(self.vertices())
        graph.add_edges_from(s for s in self.simplices if len(s) == 2)
        return [frozenset(c) for c in nx.connected_components(graph)]

    def is_connected(self) -> bool:
        return len(self.components()) == 1


# ---------------------------------------------------------------------------
# Chain spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainContext:
    """The q-chains of K: basis simplices in fixed order and their ambient space."""

    degree: int
    basis: tuple[Simplex, ...]
    ambient: AmbientSpace

    @classmethod
    def build(
        cls,
        degree: int,
        basis: Sequence[Simplex],
        gram: Sequence[Sequence[Any]] | None = None,
        backend: LinearAlgebraBackend | None = None,
    ) -> "ChainContext":
        labels = tuple(simplex_label(s) for s in basis)
        if len(set(labels)) != len(labels):
            labels = tuple("[" + ",".join(s) + "]" for s in basis)
        ambient = AmbientSpace(len(basis), None if gram is None else tuple(map(tuple, gram)), labels, backend or get_backend())
        return cls(degree, tuple(basis), ambient)

    @classmethod
    def for_vertices(
        cls, vertices: Sequence[str], backend: LinearAlgebraBackend | None = None
    ) -> "ChainContext":
        return cls.build(0, [(v,) for v in vertices], backend=backend)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self, simplex: Simplex) -> int:
        try:
            return self._positions()[simplex]
        except KeyError as exc:
            raise FiltrationError(f"{simplex} is not a {self.degree}-simplex of K", simplex) from exc

    def _positions(self) -> dict[Simplex, int]:
        cached = self.__dict__.get("_position_cache")
        if cached is None:
            cached = {s: k for k, s in enumerate(self.basis)}
            object.__setattr__(self, "_position_cache", cached)
        return cached

    def simplex_vector(self, simplex: Simplex | str) -> Vector:
        key = (simplex,) if isinstance(simplex, str) else tuple(simplex)
        return self.ambient.basis_vector(self.index(key))

    def chain(self, coefficients: Mapping[Simplex | str, Any]) -> Vector:
        """A chain from simplex coefficients; unlisted simplices get 0."""

        backend = self.ambient.backend
        coords = [backend.zero()] * self.dimension
        for simplex, value in coefficients.items():
            key = (simplex,) if isinstance(simplex, str) else tuple(simplex)
            coords[self.index(key)] = backend.scalar(value)
        return Vector(self.ambient, tuple(coords))

    def support_vector(self, simplices: Iterable[Simplex]) -> list[int]:
        return sorted(self.index(s) for s in simplices)


def boundary_matrix(
    upper: ChainContext, lower: ChainContext, sub: SimplicialComplex | None = None
) -> Matrix:
    """Matrix of the boundary of *sub* on the K-wide bases (rows: lower simplices)."""

    backend = upper.ambient.backend
    zero = backend.zero()
    matrix = [[zero] * upper.dimension for _ in range(lower.dimension)]
    if upper.degree == 0:
        return matrix
    for col, simplex in enumerate(upper.basis):
        if sub is not None and simplex not in sub:
            continue
        for sign, face in faces(simplex):
            matrix[lower.index(face)][col] = backend.scalar(sign)
    return matrix


def _transpose(matrix: Matrix, ncols: int) -> Matrix:
    return [[row[c] for row in matrix] for c in range(ncols)]


def adjoint(
    matrix: Matrix,
    gram_src: Sequence[Sequence[Any]] | None,
    gram_dst: Sequence[Sequence[Any]] | None,
    *,
    src_dim: int,
    backend: LinearAlgebraBackend | None = None,
) -> Matrix:
    """A* = G_src^-1 A^T G_dst for A: src -> dst given as a dst x src matrix."""

    backend = backend or get_backend()
    dst_dim = len(matrix)
    result = _transpose(matrix, src_dim)
    if gram_dst is not None and dst_dim:
        result = backend.matmul(result, gram_dst, dst_dim, dst_dim)
    if gram_src is not None and src_dim:
        result = backend.matmul(backend.inverse(gram_src), result, src_dim, dst_dim)
    return result


# ---------------------------------------------------------------------------
# Filtrations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Filtration:
    """Entry indices (1..n) of the simplices of K over a linear metric poset."""

    poset: LinearMetricPoset
    entry: Mapping[Simplex, int]
    vertex_order: tuple[str, ...] = ()
    grams: Mapping[int, tuple[tuple[Any, ...], ...]] = field(default_factory=dict)
    backend: LinearAlgebraBackend = field(default_factory=get_backend)
    _memo: dict[tuple[Any, ...], Any] = field(default_factory=dict, init=False, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, init=False, repr=False)

    def memoized(self, key: tuple[Any, ...], compute: Callable[[], Any]) -> Any:
        """Cached value of *key*; the cache is shared by all threads using this filtration."""

        with self._lock:
            if key not in self._memo:
                self._memo[key] = compute()
            return self._memo[key]

    def __post_init__(self) -> None:
        order = tuple(self.vertex_order) or tuple(
            sorted({v for simplex in self.entry for v in simplex})
        )
        object.__setattr__(self, "vertex_order", order)
        positions = {v: k for k, v in enumerate(order)}
        entry: dict[Simplex, int] = {}
        for simplex, index in self.entry.items():
            key = normalize_simplex(simplex, positions)
            if key in entry:
                raise FiltrationError(f"Simplex {key} is listed twice", key)
            if not 1 <= index <= self.poset.n:
                raise FiltrationError(f"Entry index {index} of {key} is outside 1..{self.poset.n}", key)
            entry[key] = index
        for simplex, index in entry.items():
            for _, face in faces(simplex):
                if face not in entry:
                    raise FiltrationError(f"Face {face} of {simplex} is missing", simplex)
                if entry[face] > index:
                    raise FiltrationError(
                        f"Coface {simplex} enters at step {index} before its face {face}", simplex
                    )
        object.__setattr__(self, "entry", entry)

    @classmethod
    def from_grades(
        cls,
        entries: Mapping[Sequence[str], Any] | Iterable[tuple[Sequence[str], Any]],
        *,
        vertex_order: Sequence[str] = (),
        extra_grades: Iterable[Any] = (),
        grams: Mapping[int, Sequence[Sequence[Any]]] | None = None,
        backend: LinearAlgebraBackend | None = None,
    ) -> "Filtration":
        """Build a filtration from simplex grades; distinct grades become the poset."""

        pairs = list(entries.items()) if isinstance(entries, Mapping) else list(entries)
        graded = [(tuple(vertices), parse_grade(grade)) for vertices, grade in pairs]
        poset = LinearMetricPoset.from_grades(
            sorted({g for _, g in graded} | {parse_grade(g) for g in extra_grades})
        )
        entry = {vertices: poset.index_of(grade) for vertices, grade in graded}
        frozen_grams = {q: tuple(map(tuple, g)) for q, g in (grams or {}).items()}
        return cls(poset, entry, tuple(vertex_order), frozen_grams, backend or get_backend())

    def with_grams(self, grams: Mapping[int, Sequence[Sequence[Any]]]) -> "Filtration":
        frozen = {q: tuple(map(tuple, g)) for q, g in grams.items()}
        return Filtration(self.poset, self.entry, self.vertex_order, frozen, self.backend)

    def with_poset(self, poset: LinearMetricPoset, entry: Mapping[Simplex, int]) -> "Filtration":
        return Filtration(poset, entry, self.vertex_order, self.grams, self.backend)

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def complex(self) -> SimplicialComplex:
        return self.sublevel(self.n)

    @property
    def max_dimension(self) -> int:
        return max((len(s) - 1 for s in self.entry), default=-1)

    def sublevel(self, i: int) -> SimplicialComplex:
        """K_i; index 0 is the empty complex."""

        if not 0 <= i <= self.n:
            raise FiltrationError(f"Step {i} is outside 0..{self.n}")
        return self.memoized(
            ("sublevel", i),
            lambda: SimplicialComplex(frozenset(s for s, e in self.entry.items() if e <= i)),
        )

    def simplices_at(self, q: int, i: int) -> list[Simplex]:
        return [s for s in self.context(q).basis if 0 < self.entry[s] <= i]

    def context(self, q: int) -> ChainContext:
        return self.memoized(("context", q), lambda: self._build_context(q))

    def _build_context(self, q: int) -> ChainContext:
        if q < 0:
            basis: list[Simplex] = []
        else:
            positions = {v: k for k, v in enumerate(self.vertex_order)}
            basis = sorted(
                (s for s in self.entry if len(s) == q + 1),
                key=lambda s: tuple(positions[v] for v in s),
            )
        return ChainContext.build(q, basis, self.grams.get(q), self.backend)

    def boundary(self, q: int, i: int | None = None) -> Matrix:
        """∂_q of K_i (of K when i is None), K-wide."""

        def compute() -> Matrix:
            sub = None if i is None else self.sublevel(i)
            return boundary_matrix(self.context(q), self.context(q - 1), sub)

        return self.memoized(("boundary", q, i), compute)

    def to_document(self) -> FiltrationDocument:
        entries = sorted(self.entry.items(), key=lambda item: (item[1], len(item[0]), item[0]))
        used = {index for _, index in entries}
        return FiltrationDocument(
            vertices=list(self.vertex_order),
            grades=[str(self.poset.grade(i)) for i in self.poset.indices() if i not in used],
            simplices=[SimplexRecord(t=str(self.poset.grade(e)), v=list(s)) for s, e in entries],
        )


def sublevel(filtration: Filtration, i: int) -> SimplicialComplex:
    return filtration.sublevel(i)


def cycles(filtration: Filtration, q: int, i: int) -> Subspace:
    """Z_q(K_i) inside C_q^K."""

    return filtration.memoized(("cycles", q, i), lambda: _cycles(filtration, q, i))


def _cycles(filtration: Filtration, q: int, i: int) -> Subspace:
    ctx = filtration.context(q)
    ambient = ctx.ambient
    present = [ctx.index(s) for s in filtration.simplices_at(q, i)]
    if q == 0 or not present:
        return span(ambient, [ambient.basis_vector(k) for k in present])
    full = filtration.boundary(q)
    restricted = [[row[k] for k in present] for row in full]
    kernel = ambient.backend.nullspace(restricted, len(present))
    vectors = []
    for coefficients in kernel:
        coords = [ambient.backend.zero()] * ambient.dimension
        for k, value in zip(present, coefficients):
            coords[k] = value
        vectors.append(Vector(ambient, tuple(coords)))
    return span(ambient, vectors)


def boundaries(filtration: Filtration, q: int, i: int) -> Subspace:
    """B_q(K_i) inside C_q^K."""

    return filtration.memoized(("boundaries", q, i), lambda: _boundaries(filtration, q, i))


def _boundaries(filtration: Filtration, q: int, i: int) -> Subspace:
    ctx = filtration.context(q)
    upper = filtration.context(q + 1)
    full = filtration.boundary(q + 1)
    columns = [upper.index(s) for s in filtration.simplices_at(q + 1, i)]
    vectors = [Vector(ctx.ambient, tuple(row[c] for row in full)) for c in columns]
    return span(ctx.ambient, vectors)


def same_final_complex(first: Filtration, second: Filtration) -> bool:
    return set(first.entry) == set(second.entry) and first.vertex_order == second.vertex_order
