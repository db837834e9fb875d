from fractions import Fraction

import pytest

from gpd.services.complex import ChainContext, Filtration
from gpd.services.invariants import zb
from gpd.services.inversion import oi_times
from gpd.services.poset import INF, Interval
from gpd.services.subspace import span
from gpd.services.treegram import (
    SubPartition,
    Treegram,
    TreegramError,
    birth_index,
    reconstruct_gpd0,
    treegram_from_gpd0,
    treegram_of_filtration,
    treegram_to_dot,
)
from gpd.utils import samples


def _state(*blocks):
    return SubPartition(tuple(frozenset(block) for block in blocks))


def test_treegram_of_merge_pair(merge_pair):
    first, second = merge_pair
    expected = Treegram(
        ("a", "b", "c"),
        (Fraction(0), Fraction(1), Fraction(2)),
        (_state("a", "b", "c"), _state("ab", "c"), _state("abc")),
    )
    assert treegram_of_filtration(first) == expected
    assert treegram_of_filtration(second) != expected


def test_blocks_must_be_disjoint():
    with pytest.raises(TreegramError, match="overlap"):
        _state("ab", "bc")


def test_split_block_is_rejected():
    treegram = Treegram(("a", "b"), (0, 1), (_state("ab"), _state("a", "b")))
    with pytest.raises(TreegramError, match="split"):
        treegram.validate()


def test_final_state_must_be_one_block():
    treegram = Treegram(("a", "b"), (0,), (_state("a", "b"),))
    with pytest.raises(TreegramError, match="single block"):
        treegram.validate()


def test_disconnected_filtration_has_no_treegram(backend):
    filtration = Filtration.from_grades([(("a",), 0), (("b",), 1)], backend=backend)
    with pytest.raises(TreegramError):
        treegram_of_filtration(filtration)


def test_state_lookup_and_births():
    treegram = samples.merge_treegram()
    assert treegram.state_at("5/2") == treegram.states[1]
    assert treegram.state_at(0) == SubPartition(())
    births = birth_index(treegram)
    assert births["y"] == 1
    assert births["x"] == 2
    assert births["l"] == 3
    assert births["a1"] == 4


def test_reconstruction_matches_the_worked_example(worked):
    treegram = treegram_of_filtration(worked)
    assert treegram.times == tuple(Fraction(t) for t in range(1, 7))
    rebuilt = reconstruct_gpd0(treegram, worked.context(0), worked.poset)
    assert rebuilt == oi_times(zb(worked, 0))


def test_merge_of_blocks_born_before_the_previous_breakpoint(backend):
    filtration = Filtration.from_grades(
        [(("a",), 0), (("b",), 0), (("c",), 1), (("a", "b"), 2), (("b", "c"), 3)],
        vertex_order=("a", "b", "c"),
        backend=backend,
    )
    ctx = filtration.context(0)
    rebuilt = reconstruct_gpd0(treegram_of_filtration(filtration), ctx, filtration.poset)
    a, b, c = (ctx.simplex_vector(v) for v in "abc")
    assert rebuilt[Interval(1, 3)] == span(ctx.ambient, [b - a])
    assert rebuilt[Interval(2, 4)] == span(ctx.ambient, [c - Fraction(1, 2) * (a + b)])
    assert rebuilt == oi_times(zb(filtration, 0))


def test_treegram_is_recovered_from_the_diagram(worked, merge_pair):
    for filtration in (worked, *merge_pair):
        diagram = oi_times(zb(filtration, 0))
        assert treegram_from_gpd0(diagram, filtration.context(0)) == treegram_of_filtration(filtration)


def test_merge_treegram_spans(backend):
    treegram = samples.merge_treegram()
    chain = ChainContext.for_vertices(treegram.vertices, backend)
    diagram = reconstruct_gpd0(treegram, chain)
    v = chain.simplex_vector
    older = v("x") + v("y") + v("z") + v("v") + v("w") + v("g") + v("h") + v("k")
    first = Interval(1, 4)
    assert diagram[first] == span(
        chain.ambient, [Fraction(1, 2) * (v("v") + v("w")) - v("y"), v("g") - v("y"), v("k") - v("y")]
    )
    late = Interval(3, 4)
    assert diagram[late] == span(
        chain.ambient,
        [
            Fraction(1, 2) * (v("l") + v("n")) - Fraction(1, 8) * older,
            Fraction(1, 3) * (v("p") + v("q") + v("r")) - Fraction(1, 8) * older,
        ],
    )
    merged = Fraction(1, 13) * (older + v("l") + v("n") + v("p") + v("q") + v("r"))
    assert diagram[Interval(4, 4)] == span(chain.ambient, [v("a1") - merged, v("a2") - merged])
    assert diagram[Interval(1, INF)] == span(chain.ambient, [v("y") + v("v") + v("w") + v("g") + v("k")])
    assert diagram.is_transverse()


def test_reconstruction_needs_every_vertex(backend):
    treegram = samples.merge_treegram()
    with pytest.raises(TreegramError, match="no basis vector"):
        reconstruct_gpd0(treegram, ChainContext.for_vertices(["x", "y"], backend))


def test_document_round_trip():
    treegram = samples.merge_treegram()
    document = treegram.to_document()
    assert document.breakpoints[0].blocks == [["g"], ["k"], ["v", "w"], ["y"]]
    assert Treegram.from_document(document) == treegram


def test_dot_export(merge_pair):
    text = treegram_to_dot(treegram_of_filtration(merge_pair[0]))
    assert text.startswith("digraph treegram {")
    assert '"{a}@0" -> "{a,b}@1";' in text
    assert '"{a,b}@1" -> "{a,b,c}@2";' in text
