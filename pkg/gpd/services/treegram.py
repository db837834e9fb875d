"""Treegrams and their equivalence with degree-0 Grassmannian diagrams.

A treegram is stored by its breakpoints: the state at ``times[k]`` holds on
``[times[k], times[k+1])`` and the state before ``times[0]`` is empty.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

import networkx as nx

from gpd.models import BreakpointRecord, TreegramDocument
from gpd.services.complex import ChainContext, Filtration
from gpd.services.inversion import GrassmannianDiagram, down_set_sum
from gpd.services.poset import INF, Interval, IntervalOrder, LinearMetricPoset, parse_grade
from gpd.services.subspace import Subspace, Vector, contains_vector, span

logger = logging.getLogger(__name__)


class TreegramError(ValueError):
    """Raised for malformed treegrams and for inputs that have no treegram."""

    def __init__(self, message: str, time: Fraction | None = None) -> None:
        super().__init__(message)
        self.time = time


@dataclass(frozen=True)
class SubPartition:
    """Pairwise disjoint blocks; their union is the support."""

    blocks: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        blocks = tuple(sorted((frozenset(b) for b in self.blocks if b), key=sorted))
        seen: set[str] = set()
        for block in blocks:
            if seen & block:
                raise TreegramError(f"Blocks overlap in {sorted(seen & block)}")
            seen |= block
        object.__setattr__(self, "blocks", blocks)

    @property
    def support(self) -> frozenset[str]:
        return frozenset().union(*self.blocks)

    def block_of(self, vertex: str) -> frozenset[str] | None:
        for block in self.blocks:
            if vertex in block:
                return block
        return None


@dataclass(frozen=True)
class Treegram:
    vertices: tuple[str, ...]
    times: tuple[Fraction, ...]
    states: tuple[SubPartition, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "times", tuple(parse_grade(t) for t in self.times))
        object.__setattr__(self, "states", tuple(self.states))
        if len(self.times) != len(self.states):
            raise TreegramError("Every breakpoint needs exactly one state")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise TreegramError("Breakpoints must be strictly increasing")

    def validate(self) -> None:
        """Nesting of consecutive states and the single final block over X."""

        if not self.states:
            raise TreegramError("A treegram needs at least one breakpoint")
        for time, before, after in zip(self.times[1:], self.states, self.states[1:]):
            if not before.support <= after.support:
                raise TreegramError("Support shrinks", time)
            for block in before.blocks:
                if not any(block <= later for later in after.blocks):
                    raise TreegramError(f"Block {sorted(block)} is split", time)
        final = self.states[-1]
        if len(final.blocks) != 1 or final.support != frozenset(self.vertices):
            raise TreegramError("The final state must be a single block over all vertices", self.times[-1])

    def state_at(self, time: Any) -> SubPartition:
        value = parse_grade(time)
        state = SubPartition(())
        for t, current in zip(self.times, self.states):
            if t > value:
                break
            state = current
        return state

    def birth_times(self) -> dict[str, Fraction]:
        return birth_index(self)

    def to_document(self) -> TreegramDocument:
        order = {v: k for k, v in enumerate(self.vertices)}
        return TreegramDocument(
            vertices=list(self.vertices),
            breakpoints=[
                BreakpointRecord(
                    t=str(t),
                    blocks=[sorted(b, key=order.__getitem__) for b in state.blocks],
                )
                for t, state in zip(self.times, self.states)
            ],
        )

    @classmethod
    def from_document(cls, document: TreegramDocument) -> "Treegram":
        return cls(
            tuple(document.vertices),
            tuple(parse_grade(b.t) for b in document.breakpoints),
            tuple(SubPartition(tuple(frozenset(block) for block in b.blocks)) for b in document.breakpoints),
        )


def birth_index(treegram: Treegram) -> dict[str, Fraction]:
    """b_x: the first breakpoint whose support contains x."""

    births: dict[str, Fraction] = {}
    for time, state in zip(treegram.times, treegram.states):
        for vertex in state.support:
            births.setdefault(vertex, time)
    return births


# ---------------------------------------------------------------------------
# From a filtration
# ---------------------------------------------------------------------------


def treegram_of_filtration(filtration: Filtration) -> Treegram:
    """Connected components at every non-empty step."""

    final = filtration.complex
    if not final.vertices() or not final.is_connected():
        raise TreegramError("The final complex must be non-empty and connected")
    times: list[Fraction] = []
    states: list[SubPartition] = []
    for i in filtration.poset.indices():
        complex_i = filtration.sublevel(i)
        if not complex_i.vertices():
            continue
        times.append(filtration.poset.grade(i))
        states.append(SubPartition(tuple(complex_i.components())))
    vertices = tuple(v for v in filtration.vertex_order if v in final.vertices())
    treegram = Treegram(vertices, tuple(times), tuple(states))
    treegram.validate()
    return treegram


# ---------------------------------------------------------------------------
# Treegram -> degree-0 diagram
# ---------------------------------------------------------------------------


def _centroid(ctx: ChainContext, members: Iterable[str]) -> Vector:
    items = list(members)
    total = ctx.ambient.zero_vector()
    for vertex in items:
        total = total + ctx.simplex_vector(vertex)
    return Fraction(1, len(items)) * total


def reconstruct_gpd0(
    treegram: Treegram, ctx: ChainContext, poset: LinearMetricPoset | None = None
) -> GrassmannianDiagram:
    """Degree-0 ×-diagram built from merge events of the treegram.

    For every block at a breakpoint d, the blocks of the previous breakpoint
    inside it are ordered by (birth, smallest member). Equal-oldest blocks
    give span{c_l - c_1}, younger blocks give span{c_j - c'_j}, and vertices
    with no previous block give span{v - c(old part)} on [d, d]. A block with
    no previous blocks at all is ephemeral except for one direction. The ray
    at the earliest birth is spanned by the sum of the vertices born then.
    """

    treegram.validate()
    poset = poset or LinearMetricPoset(treegram.times)
    missing = [v for v in treegram.vertices if (v,) not in ctx.basis]
    if missing:
        raise TreegramError(f"Vertex {missing[0]!r} has no basis vector in the chain context")
    positions = {v: k for k, v in enumerate(treegram.vertices)}
    births = {v: poset.index_of(t) for v, t in birth_index(treegram).items()}
    pieces: dict[Interval, list[Vector]] = {}

    def add(birth: int, death: int, vector: Vector) -> None:
        if not vector.is_zero():
            pieces.setdefault(Interval(birth, death), []).append(vector)

    previous = SubPartition(())
    for time, state in zip(treegram.times, treegram.states):
        d = poset.index_of(time)
        for block in state.blocks:
            preds = [b for b in previous.blocks if b <= block]
            if not preds:
                centre = _centroid(ctx, block)
                for vertex in sorted(block, key=positions.__getitem__):
                    add(d, d, ctx.simplex_vector(vertex) - centre)
                continue
            old = frozenset().union(*preds)
            ephemeral = sorted(block - old, key=positions.__getitem__)
            if ephemeral:
                centre = _centroid(ctx, old)
                for vertex in ephemeral:
                    add(d, d, ctx.simplex_vector(vertex) - centre)
            if len(preds) == 1:
                continue
            block_birth = {b: min(births[x] for x in b) for b in preds}
            preds.sort(key=lambda b: (block_birth[b], min(positions[x] for x in b)))
            centroids = {
                b: _centroid(ctx, [x for x in b if births[x] == block_birth[b]]) for b in preds
            }
            oldest = block_birth[preds[0]]
            for pred in preds[1:]:
                birth = block_birth[pred]
                if birth == oldest:
                    add(birth, d, centroids[pred] - centroids[preds[0]])
                    continue
                older = [
                    x
                    for b in preds
                    if block_birth[b] < birth
                    for x in b
                    if births[x] <= birth
                ]
                add(birth, d, centroids[pred] - _centroid(ctx, older))
        previous = state

    first = min(births.values())
    essential = ctx.ambient.zero_vector()
    for vertex in treegram.vertices:
        if births[vertex] == first:
            essential = essential + ctx.simplex_vector(vertex)
    values = {I: span(ctx.ambient, vectors) for I, vectors in pieces.items()}
    values[Interval(first, INF)] = span(ctx.ambient, [essential])
    logger.debug("Reconstructed %d degree-0 points from %d breakpoints", len(values), len(treegram.times))
    return GrassmannianDiagram(poset, IntervalOrder.PRODUCT, ctx.ambient, values)


# ---------------------------------------------------------------------------
# Degree-0 diagram -> treegram
# ---------------------------------------------------------------------------


def _vertex_support(space: Subspace, ctx: ChainContext, time: Fraction) -> list[str]:
    vertices = [s[0] for s in ctx.basis if contains_vector(space, ctx.simplex_vector(s))]
    if span(ctx.ambient, [ctx.simplex_vector(v) for v in vertices]) != space:
        raise TreegramError("Recovered cycle space is not spanned by vertices", time)
    return vertices


def treegram_from_gpd0(diagram: GrassmannianDiagram, ctx: ChainContext) -> Treegram:
    """Recover Z_0(K_i) and B_0(K_i) by down-set sums, then read off components."""

    order = IntervalOrder.PRODUCT
    poset = diagram.poset
    times: list[Fraction] = []
    states: list[SubPartition] = []
    for i in poset.indices():
        time = poset.grade(i)
        cycle_space = down_set_sum(diagram, Interval(i, INF), order, ctx.ambient)
        boundary_space = down_set_sum(diagram, Interval(i, i), order, ctx.ambient)
        support = _vertex_support(cycle_space, ctx, time)
        if not support:
            continue
        graph = nx.Graph()
        graph.add_nodes_from(support)
        for k, u in enumerate(support):
            for v in support[k + 1 :]:
                if contains_vector(boundary_space, ctx.simplex_vector(u) - ctx.simplex_vector(v)):
                    graph.add_edge(u, v)
        blocks = [frozenset(c) for c in nx.connected_components(graph)]
        differences = [
            ctx.simplex_vector(u) - ctx.simplex_vector(v) for u, v in graph.edges
        ]
        if span(ctx.ambient, differences) != boundary_space:
            raise TreegramError("Recovered boundary space is not spanned by vertex differences", time)
        times.append(time)
        states.append(SubPartition(tuple(blocks)))
    final = states[-1].support if states else frozenset()
    vertices = tuple(s[0] for s in ctx.basis if s[0] in final)
    treegram = Treegram(vertices, tuple(times), tuple(states))
    treegram.validate()
    return treegram


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------


def treegram_to_dot(treegram: Treegram) -> str:
    """Merge forest in Graphviz DOT: one node per (breakpoint, block)."""

    order = {v: k for k, v in enumerate(treegram.vertices)}
    lines = ["digraph treegram {", "  rankdir=BT;"]
    previous: list[tuple[frozenset[str], str]] = []
    for time, state in zip(treegram.times, treegram.states):
        current = []
        for block in state.blocks:
            members = ",".join(sorted(block, key=order.__getitem__))
            name = f'"{{{members}}}@{time}"'
            lines.append(f'  {name} [label="{{{members}}}"];')
            for before, before_name in previous:
                if before <= block:
                    lines.append(f"  {before_name} -> {name};")
            current.append((block, name))
        previous = current
    lines.append("}")
    return "\n".join(lines) + "\n"
