from concurrent.futures import ThreadPoolExecutor

import pytest

from gpd.services.complex import (
    ChainContext,
    Filtration,
    FiltrationError,
    SimplicialComplex,
    boundaries,
    cycles,
    faces,
    same_final_complex,
)
from gpd.services.subspace import contains
from gpd.services.invariants import persistent_betti


def test_faces_carry_alternating_signs():
    assert faces(("a", "b", "c")) == [(1, ("b", "c")), (-1, ("a", "c")), (1, ("a", "b"))]
    assert faces(("a",)) == []


def test_complex_needs_its_faces():
    with pytest.raises(FiltrationError, match="missing"):
        SimplicialComplex(frozenset({("a",), ("a", "b")}))


def test_coface_before_face_is_rejected(backend):
    with pytest.raises(FiltrationError, match="before its face"):
        Filtration.from_grades([(("a",), 1), (("b",), 0), (("a", "b"), 0)], backend=backend)


def test_repeated_simplex_is_rejected(backend):
    with pytest.raises(FiltrationError, match="twice"):
        Filtration.from_grades([(("a",), 0), (("b",), 0), (("a", "b"), 1), (("b", "a"), 1)], backend=backend)


def test_worked_sublevels(worked):
    assert worked.n == 7
    assert worked.max_dimension == 2
    assert len(worked.sublevel(0)) == 0
    assert len(worked.sublevel(1)) == 0
    assert len(worked.complex) == 11
    assert len(worked.sublevel(3).components()) == 1
    assert len(worked.sublevel(4).components()) == 2
    assert worked.complex.is_connected()


def test_chain_basis_follows_vertex_order(worked):
    context = worked.context(1)
    assert context.basis == (("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d"))
    assert context.ambient.labels == ("ab", "ac", "bc", "bd", "cd")
    chain = context.chain({("a", "b"): 1, ("a", "c"): 0})
    assert chain == context.simplex_vector(("a", "b"))


def test_unknown_simplex(worked):
    with pytest.raises(FiltrationError):
        worked.context(1).index(("a", "d"))


def test_boundary_of_boundary_vanishes(worked, backend):
    lower = worked.boundary(1)
    upper = worked.boundary(2)
    product = backend.matmul(lower, upper, worked.context(1).dimension, worked.context(2).dimension)
    assert all(backend.is_zero(x) for row in product for x in row)


def test_cycles_and_boundaries(worked):
    # grade 2 is index 3, grade 5 is index 6
    assert cycles(worked, 1, 3).dim == 1
    assert boundaries(worked, 1, 3).dim == 1
    assert cycles(worked, 1, 6).dim == 2
    assert boundaries(worked, 1, 6).dim == 1
    assert boundaries(worked, 1, 7).dim == 2
    assert cycles(worked, 0, 4).dim == 4


def test_persistent_betti(worked):
    assert persistent_betti(worked, 0, 4, 4) == 2
    assert persistent_betti(worked, 0, 4, 5) == 1
    assert persistent_betti(worked, 1, 6, 6) == 1
    assert persistent_betti(worked, 1, 6, 7) == 0
    with pytest.raises(ValueError):
        persistent_betti(worked, 0, 3, 2)


def test_grams_replace_the_inner_product(worked):
    weighted = worked.with_grams({0: [[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 3]]})
    assert weighted.context(0).ambient.gram is not None
    assert weighted.context(1).ambient.gram is None
    with pytest.raises(ValueError):
        worked.with_grams({0: [[1, 2, 0, 0], [2, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}).context(0)


def test_same_final_complex(merge_pair, worked):
    first, second = merge_pair
    assert same_final_complex(first, second)
    assert not same_final_complex(first, worked)


def test_for_vertices(backend):
    context = ChainContext.for_vertices(["x", "y"], backend)
    assert context.dimension == 2
    assert context.simplex_vector("y") == context.ambient.basis_vector(1)


def test_document_keeps_empty_grades(worked):
    document = worked.to_document()
    assert document.vertices == ["a", "b", "c", "d"]
    assert document.grades == ["0"]
    assert len(document.simplices) == 11
    assert document.simplices[0].t == "1"


def test_cycles_and_boundaries_grow_with_the_step(worked):
    for q in range(2):
        for i in range(1, worked.n):
            assert contains(cycles(worked, q, i + 1), cycles(worked, q, i))
            assert contains(boundaries(worked, q, i + 1), boundaries(worked, q, i))
            assert contains(cycles(worked, q, i), boundaries(worked, q, i))


def test_cache_is_shared_across_threads(backend):
    filtration = Filtration.from_grades(
        {("a",): 0, ("b",): 0, ("c",): 1, ("a", "b"): 1, ("b", "c"): 2, ("a", "c"): 2}, backend=backend
    )

    def compute(k):
        return filtration.context(k % 2), cycles(filtration, 1, 3), boundaries(filtration, 0, 3)

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(compute, range(32)))
    contexts = {k % 2: results[k][0] for k in range(2)}
    for k, (context, cycle_space, boundary_space) in enumerate(results):
        assert context is contexts[k % 2]
        assert cycle_space is results[0][1]
        assert boundary_space is results[0][2]
    assert cycle_space.dim == 1
    assert boundary_space.dim == 2
