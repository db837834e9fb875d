import random

import pytest

from gpd.services.complex import Filtration
from gpd.services.invariants import check_intersection_monotone, lk, zb
from gpd.services.inversion import (
    GrassmannianDiagram,
    InversionError,
    check_born_dies_exactly,
    check_monoidal_inverse,
    classical_diagram,
    diagonal_part,
    mobius_equivalent,
    off_diagonal_part,
    oi_supseteq,
    oi_times,
    pullback_subspaces,
    pushforward_subspaces,
)
from gpd.services.poset import INF, Interval, IntervalOrder
from gpd.services.subspace import AmbientSpace, span
from gpd.utils import samples


def _expected(filtration, q):
    rows = samples.WORKED_TABLES[q]
    ambient = filtration.context(q).ambient
    expected = {}
    for birth, death, coefficients in rows:
        vector = ambient.zero_vector()
        for label, value in coefficients.items():
            vector = vector + value * ambient.labelled(label)
        expected[filtration.poset.interval_at(birth, death)] = span(ambient, [vector])
    return expected


@pytest.mark.parametrize("q", [0, 1])
def test_worked_example_tables(worked, q):
    diagram = oi_times(zb(worked, q))
    assert diagram.values == _expected(worked, q)


@pytest.mark.parametrize("q", [0, 1])
def test_literal_and_compressed_forms_agree(worked, q):
    function = zb(worked, q)
    assert oi_times(function, literal=True) == oi_times(function)


@pytest.mark.parametrize("q", [0, 1])
def test_off_diagonal_parts_agree(worked, q):
    assert off_diagonal_part(oi_times(zb(worked, q))) == oi_supseteq(lk(worked, q))


def test_diagonal_part(worked):
    diagonal = diagonal_part(oi_times(zb(worked, 1)))
    assert list(diagonal.values) == [Interval(3, 3)]


@pytest.mark.parametrize("q", [0, 1])
def test_diagram_properties(worked, q):
    function = zb(worked, q)
    diagram = oi_times(function)
    assert diagram.is_transverse()
    assert check_monoidal_inverse(diagram, function, IntervalOrder.PRODUCT)
    assert check_born_dies_exactly(worked, q, diagram, random.Random(1))


def test_monoidal_check_reports_a_wrong_candidate(worked):
    function = zb(worked, 0)
    wrong = off_diagonal_part(oi_times(function))
    result = check_monoidal_inverse(wrong, function, IntervalOrder.PRODUCT)
    assert not result
    assert "differs" in result.detail


def test_born_dies_check_catches_a_misplaced_point(worked):
    diagram = oi_times(zb(worked, 0))
    values = dict(diagram.values)
    values[Interval(2, 4)] = values.pop(Interval(2, 3))
    moved = GrassmannianDiagram(diagram.poset, diagram.order, diagram.ambient, values)
    assert not check_born_dies_exactly(worked, 0, moved)


def test_classical_diagram(worked):
    diagram = oi_times(zb(worked, 0))
    assert classical_diagram(diagram) == {Interval(2, 3): 1, Interval(4, 5): 1, Interval(2, INF): 1}
    assert classical_diagram(diagram, include_diagonal=True)[Interval(2, 2)] == 1


def test_two_step_filtration(backend):
    filtration = Filtration.from_grades(
        [(("a",), 0), (("b",), 0), (("a", "b"), 1)], vertex_order=("a", "b"), backend=backend
    )
    function = zb(filtration, 0)
    assert check_intersection_monotone(function)
    ambient = filtration.context(0).ambient
    a, b = ambient.labelled("a"), ambient.labelled("b")
    assert oi_times(function).values == {
        Interval(1, 2): span(ambient, [b - a]),
        Interval(1, INF): span(ambient, [a + b]),
    }


def test_single_step_filtration(backend):
    filtration = Filtration.from_grades([(("a",), 0)], vertex_order=("a",), backend=backend)
    ambient = filtration.context(0).ambient
    assert oi_times(zb(filtration, 0)).values == {Interval(1, INF): span(ambient, [ambient.labelled("a")])}


def test_merge_pair_is_told_apart(merge_pair):
    first, second = (oi_times(zb(F, 0)) for F in merge_pair)
    assert classical_diagram(first) == classical_diagram(second)
    assert first != second


def test_wrong_order_is_rejected(worked):
    with pytest.raises(InversionError):
        oi_times(lk(worked, 0))
    with pytest.raises(InversionError):
        oi_supseteq(zb(worked, 0))


def test_document_round_trip(worked):
    diagram = oi_times(zb(worked, 1))
    document = diagram.to_document(1, "bd")
    assert document.points[0].interval == ("2", "2")
    assert document.points[0].description == "span{ab - ac + bc}"
    assert GrassmannianDiagram.from_document(document, diagram.ambient) == diagram


def test_rgct_example(backend):
    connection = samples.galois_demo()
    ambient = AmbientSpace.standard(3, backend=backend)
    e1, e2, e3 = (ambient.basis_vector(k) for k in range(3))
    inverse = {1: span(ambient, [e1]), 2: span(ambient, [e2]), 3: span(ambient, [e3])}
    other = {1: span(ambient, [e1]), 2: span(ambient, [e2 + e1, e3 + e1])}
    pushed = pushforward_subspaces(connection.left_map(), inverse, [1, 2], ambient)
    assert pushed[2] == span(ambient, [e2, e3])
    assert pushed[2] != other[2]
    assert mobius_equivalent(pushed, other, elements=[1, 2])
    assert not mobius_equivalent(pushed, {1: span(ambient, [e2]), 2: other[2]}, elements=[1, 2])
    assert pullback_subspaces(connection.left_map(), other, [1, 2, 3])[3] == other[2]


def test_float_backend_agrees_on_dimensions(float_backend):
    worked = samples.worked_filtration(float_backend)
    for q in (0, 1):
        diagram = oi_times(zb(worked, q))
        assert diagram.is_transverse()
        assert {I: W.dim for I, W in diagram.values.items()} == {
            worked.poset.interval_at(b, d): 1 for b, d, _ in samples.WORKED_TABLES[q]
        }
