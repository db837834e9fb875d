"""Small hand-checked inputs shared by the verification suite, tests and data files."""
from __future__ import annotations

from fractions import Fraction

from gpd.services.complex import Filtration
from gpd.services.linalg import LinearAlgebraBackend
from gpd.services.poset import GaloisConnection, LinearMetricPoset
from gpd.services.treegram import SubPartition, Treegram

# grade 0 adds nothing; a, b, c and ab enter at 1
WORKED_ENTRIES: list[tuple[tuple[str, ...], int]] = [
    (("a",), 1),
    (("b",), 1),
    (("c",), 1),
    (("a", "b"), 1),
    (("a", "c"), 2),
    (("b", "c"), 2),
    (("a", "b", "c"), 2),
    (("d",), 3),
    (("b", "d"), 4),
    (("c", "d"), 5),
    (("b", "c", "d"), 6),
]

# degree -> [(birth grade, death grade or "inf", {simplex label: coefficient})]
WORKED_TABLES: dict[int, list[tuple[str, str, dict[str, int]]]] = {
    0: [
        ("1", "1", {"b": 1, "a": -1}),
        ("1", "2", {"c": 2, "a": -1, "b": -1}),
        ("3", "4", {"d": 3, "a": -1, "b": -1, "c": -1}),
        ("1", "inf", {"a": 1, "b": 1, "c": 1}),
    ],
    1: [
        ("2", "2", {"ab": 1, "ac": -1, "bc": 1}),
        ("5", "6", {"cd": 3, "bd": -3, "bc": 2, "ab": -1, "ac": 1}),
    ],
}


def worked_filtration(backend: LinearAlgebraBackend | None = None) -> Filtration:
    return Filtration.from_grades(
        WORKED_ENTRIES, vertex_order=("a", "b", "c", "d"), extra_grades=[0], backend=backend
    )


def merge_pair(backend: LinearAlgebraBackend | None = None) -> tuple[Filtration, Filtration]:
    """The path a-b-c with its two edges entering in opposite orders."""

    vertices = [(("a",), 0), (("b",), 0), (("c",), 0)]
    ab_first = Filtration.from_grades(
        vertices + [(("a", "b"), 1), (("b", "c"), 2)], vertex_order=("a", "b", "c"), backend=backend
    )
    bc_first = Filtration.from_grades(
        vertices + [(("b", "c"), 1), (("a", "b"), 2)], vertex_order=("a", "b", "c"), backend=backend
    )
    return ab_first, bc_first


MERGE_VERTICES = ("x", "y", "z", "v", "w", "g", "h", "k", "l", "n", "p", "q", "r", "a1", "a2")


def merge_treegram() -> Treegram:
    """Six blocks merging at t = 4, four of them born at t = 1 and two at t = 3."""

    def state(*blocks: str) -> SubPartition:
        return SubPartition(tuple(frozenset(block.split()) for block in blocks))

    early = ("y", "v w", "g", "k")
    grown = ("x y z", "v w", "g h", "k")
    return Treegram(
        MERGE_VERTICES,
        (Fraction(1), Fraction(2), Fraction(3), Fraction(4)),
        (
            state(*early),
            state(*grown),
            state(*grown, "l n", "p q r"),
            state(" ".join(MERGE_VERTICES)),
        ),
    )


def galois_demo() -> GaloisConnection:
    """P = {1 < 2 < 3}, Q = {1 < 2}, left = (1, 2, 2), right = (1, 3)."""

    source = LinearMetricPoset.chain(3)
    target = LinearMetricPoset.chain(2)
    return GaloisConnection(source, target, (1, 2, 2), (1, 3))
