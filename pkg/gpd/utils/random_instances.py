"""Seeded random instances for the property suites and the generator script."""
from __future__ import annotations

import itertools
import logging
import random
import string
from fractions import Fraction

import numpy as np

from gpd.config import get_settings
from gpd.services.complex import Filtration, Simplex
from gpd.services.linalg import LinearAlgebraBackend, get_backend
from gpd.services.poset import GaloisConnection, LinearMetricPoset
from gpd.services.subspace import AmbientSpace, Subspace, span

logger = logging.getLogger(__name__)


def vertex_names(count: int) -> list[str]:
    return list(string.ascii_lowercase[:count])


def random_grades(rng: random.Random, count: int, *, start: int = 0) -> list[Fraction]:
    """Strictly increasing grades with random positive gaps in {1/2, 1, 3/2, 2}."""

    grades = []
    current = Fraction(start)
    for _ in range(count):
        grades.append(current)
        current += Fraction(rng.randint(1, 4), 2)
    return grades


def random_complex(
    rng: random.Random, vertices: list[str], *, max_dimension: int = 3, connected: bool = False
) -> list[Simplex]:
    """A random flag-like complex: edges with probability 1/2, higher simplices when all faces exist."""

    edges: set[Simplex] = set()
    if connected:
        order = vertices[:]
        rng.shuffle(order)
        for k in range(1, len(order)):
            u, v = order[k], rng.choice(order[:k])
            edges.add(tuple(sorted((u, v))))
    for u, v in itertools.combinations(vertices, 2):
        if rng.random() < 0.5:
            edges.add((u, v))
    simplices: list[Simplex] = [(v,) for v in vertices] + sorted(edges)
    current = set(edges)
    for dimension in range(2, max_dimension + 1):
        higher = set()
        for candidate in itertools.combinations(vertices, dimension + 1):
            boundary = itertools.combinations(candidate, dimension)
            if all(face in current for face in boundary) and rng.random() < 0.5:
                higher.add(candidate)
        if not higher:
            break
        simplices.extend(sorted(higher))
        current = higher
    return simplices


def random_filtration(
    rng: random.Random,
    *,
    max_vertices: int | None = None,
    max_steps: int | None = None,
    max_dimension: int = 3,
    connected: bool = False,
    empty_first: bool = False,
    backend: LinearAlgebraBackend | None = None,
) -> Filtration:
    """Entry steps are drawn at or after the latest face, so faces always come first.

    With ``empty_first`` the first grade adds no simplex.
    """

    settings = get_settings()
    max_vertices = max_vertices or settings.max_vertices
    max_steps = max_steps or settings.max_steps
    vertices = vertex_names(rng.randint(1, max_vertices))
    simplices = random_complex(rng, vertices, max_dimension=max_dimension, connected=connected)
    offset = 1 if empty_first else 0
    steps = rng.randint(1, max_steps)
    poset = LinearMetricPoset(tuple(random_grades(rng, steps + offset)))
    entry: dict[Simplex, int] = {}
    for simplex in simplices:
        earliest = max((entry[f] for f in itertools.combinations(simplex, len(simplex) - 1) if f), default=1 + offset)
        entry[simplex] = rng.randint(earliest, poset.n)
    logger.debug("Random filtration: %d vertices, %d simplices, %d steps", len(vertices), len(entry), poset.n)
    return Filtration(poset, entry, tuple(vertices), {}, backend or get_backend())


def random_spd_gram(rng: random.Random, dimension: int, *, bound: int = 3) -> list[list[Fraction]]:
    """L Lᵀ for a random integer lower-triangular L with positive diagonal."""

    if dimension == 0:
        return []
    lower = np.zeros((dimension, dimension), dtype=np.int64)
    for r in range(dimension):
        for c in range(r):
            lower[r, c] = rng.randint(-bound, bound)
        lower[r, r] = rng.randint(1, bound)
    gram = lower @ lower.T
    return [[Fraction(int(x)) for x in row] for row in gram]


def random_grams(rng: random.Random, filtration: Filtration) -> dict[int, list[list[Fraction]]]:
    return {
        q: random_spd_gram(rng, filtration.context(q).dimension)
        for q in range(filtration.max_dimension + 1)
    }


def random_connection(
    rng: random.Random, source: LinearMetricPoset, target: LinearMetricPoset
) -> GaloisConnection:
    """left is monotone with left(1) = 1; right(q) = max{p : left(p) <= q}."""

    left = sorted([1] + [rng.randint(1, target.n) for _ in range(source.n - 1)])
    right = [max(p for p in source.indices() if left[p - 1] <= q) for q in target.indices()]
    return GaloisConnection(source, target, tuple(left), tuple(right))


def random_poset(rng: random.Random, *, max_steps: int | None = None) -> LinearMetricPoset:
    steps = rng.randint(1, max_steps or get_settings().max_steps)
    return LinearMetricPoset(tuple(random_grades(rng, steps)))


def random_vector_coords(rng: random.Random, dimension: int, *, bound: int = 3) -> list[Fraction]:
    return [Fraction(rng.randint(-bound, bound)) for _ in range(dimension)]


def random_subspace(rng: random.Random, ambient: AmbientSpace, dim: int) -> Subspace:
    """Span of ``dim`` random integer vectors; the result may have smaller dimension."""

    vectors = [ambient.vector(random_vector_coords(rng, ambient.dimension)) for _ in range(dim)]
    return span(ambient, vectors)
