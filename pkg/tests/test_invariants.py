import pytest

from gpd.services.invariants import (
    NotIntersectionMonotoneError,
    SubspaceIntervalFunction,
    betti_function,
    check_intersection_monotone,
    harmonic_barcode,
    harmonic_tower,
    laplacian_kernel,
    lk,
    persistent_betti,
    persistent_laplacian,
    relative_chain_space,
    zb,
)
from gpd.services.inversion import oi_times
from gpd.services.poset import INF, Interval, IntervalOrder, LinearMetricPoset, mobius_invert_int
from gpd.services.subspace import AmbientSpace, Subspace, span


def test_birth_death_spaces(worked):
    function = zb(worked, 0)
    assert function[Interval(2, INF)].dim == 3
    assert function[Interval(2, 2)].dim == 1
    assert function[Interval(1, 7)].is_zero()
    assert check_intersection_monotone(function)
    assert check_intersection_monotone(zb(worked, 1))


def test_non_monotone_function_is_rejected(backend):
    poset = LinearMetricPoset.chain(2)
    ambient = AmbientSpace.standard(1, backend=backend)
    function = SubspaceIntervalFunction.from_callable(
        poset,
        IntervalOrder.PRODUCT,
        ambient,
        lambda I: Subspace.full(ambient) if I == Interval(1, 1) else Subspace.zero(ambient),
    )
    result = check_intersection_monotone(function)
    assert not result
    assert "i=1, j=1" in result.detail
    with pytest.raises(NotIntersectionMonotoneError):
        oi_times(function)


def test_classical_diagram_from_betti_numbers(worked):
    classical = mobius_invert_int(betti_function(worked, 0)).support()
    assert classical == {Interval(2, 3): 1, Interval(4, 5): 1, Interval(2, INF): 1}
    assert mobius_invert_int(betti_function(worked, 1)).support() == {Interval(6, 7): 1}


def test_graph_laplacian(worked, backend):
    operator = persistent_laplacian(worked, 0, 2, 2)
    assert operator.simplices == (("a",), ("b",), ("c",))
    matrix = [[backend.to_fraction(x) for x in row] for row in operator.matrix]
    assert matrix == [[1, -1, 0], [-1, 1, 0], [0, 0, 0]]


def test_relative_chain_space(worked):
    # at grade 4 the edge bd has its boundary outside K at grade 1
    assert relative_chain_space(worked, 1, 2, 5).dim == 3
    assert relative_chain_space(worked, 1, 5, 5).dim == 4


@pytest.mark.parametrize("q", [0, 1])
def test_laplacian_kernel_two_ways(worked, q):
    for i in range(1, worked.n + 1):
        for j in range(i, worked.n + 1):
            formula = laplacian_kernel(worked, q, i, j, "formula")
            assert formula == laplacian_kernel(worked, q, i, j, "operator")
            assert formula.dim == persistent_betti(worked, q, i, j)


def test_unknown_kernel_method(worked):
    with pytest.raises(ValueError, match="Unknown kernel method"):
        laplacian_kernel(worked, 0, 2, 3, "svd")


def test_laplacian_kernels_live_off_the_diagonal(worked):
    function = lk(worked, 1)
    assert function.order is IntervalOrder.REVERSE_INCLUSION
    assert Interval(3, 3) not in function.values
    assert function[Interval(6, 7)].dim == 1
    assert function[Interval(6, INF)].is_zero()


def test_harmonic_barcode_matches_the_diagram(worked):
    for q in (0, 1):
        diagram = oi_times(zb(worked, q))
        barcode = harmonic_barcode(worked, q)
        finite = {I: W.dim for I, W in diagram.values.items() if not I.is_ray and not I.is_diagonal}
        assert {I: W.dim for I, W in barcode.items()} == finite


def test_harmonic_tower_bounds(worked):
    with pytest.raises(ValueError):
        harmonic_tower(worked, 0, 3, 3)
    tower = harmonic_tower(worked, 1, 6, 7)
    assert tower.p_space.dim == 1
    assert tower.harmonic.dim == 1


def test_gram_keeps_dimensions(worked):
    weighted = worked.with_grams({0: [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 3]]})
    plain = oi_times(zb(worked, 0))
    diagram = oi_times(zb(weighted, 0))
    assert {I: W.dim for I, W in diagram.values.items()} == {I: W.dim for I, W in plain.values.items()}
    # the merge of c into ab is orthogonal to b - a in the weighted inner product
    assert diagram[Interval(2, 2)].to_record() == plain[Interval(2, 2)].to_record()
    assert diagram[Interval(2, 3)].to_record() != plain[Interval(2, 3)].to_record()
    a, b, c = (weighted.context(0).ambient.labelled(x) for x in "abc")
    assert diagram[Interval(2, 3)] == span(diagram.ambient, [2 * a + b - 3 * c])
