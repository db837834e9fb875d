from fractions import Fraction

import pytest

from gpd.services.subspace import (
    AmbientMismatchError,
    AmbientSpace,
    Subspace,
    contains,
    intersect,
    is_transverse,
    ominus,
    perp,
    project,
    project_subspace,
    projection_preimage,
    span,
    subspace_sum,
)
from gpd.utils.random_instances import random_subspace


def test_span_is_canonical(ambient3):
    v = ambient3.vector
    assert span(ambient3, [v([1, 1, 0]), v([1, -1, 0])]) == span(ambient3, [v([1, 0, 0]), v([0, 1, 0])])
    assert span(ambient3, [v([2, 2, 0])]) == span(ambient3, [v([1, 1, 0])])
    assert span(ambient3, [v([0, 0, 0])]).is_zero()


def test_sum_and_intersection(ambient3):
    v = ambient3.vector
    first = span(ambient3, [v([1, 0, 0]), v([0, 1, 0])])
    second = span(ambient3, [v([0, 1, 0]), v([0, 0, 1])])
    assert subspace_sum(first, second) == Subspace.full(ambient3)
    assert intersect(first, second) == span(ambient3, [v([0, 1, 0])])
    assert (first & second).dim == 1
    assert (first + second).dim == 3


def test_perp_standard(ambient3):
    v = ambient3.vector
    orthogonal = perp(span(ambient3, [v([1, 1, 0])]))
    assert orthogonal == span(ambient3, [v([1, -1, 0]), v([0, 0, 1])])
    assert perp(Subspace.zero(ambient3)) == Subspace.full(ambient3)


def test_perp_uses_gram(backend):
    ambient = AmbientSpace(3, ((2, 1, 0), (1, 2, 0), (0, 0, 1)), ("a", "b", "c"), backend)
    orthogonal = perp(span(ambient, [ambient.labelled("a")]))
    assert orthogonal == span(ambient, [ambient.vector([1, -2, 0]), ambient.labelled("c")])


def test_ominus(ambient3):
    a, b, c = (ambient3.labelled(x) for x in "abc")
    plane = span(ambient3, [a, b])
    assert ominus(plane, span(ambient3, [a])) == span(ambient3, [b])
    assert ominus(plane, span(ambient3, [c])) == plane
    assert ominus(plane, Subspace.zero(ambient3)) == plane


def test_projection(ambient3):
    a, b = ambient3.labelled("a"), ambient3.labelled("b")
    assert project(a + b, span(ambient3, [a])) == a
    line = span(ambient3, [a + b])
    assert project_subspace(span(ambient3, [a]), line) == line
    assert project_subspace(span(ambient3, [ambient3.labelled("c")]), line).is_zero()
    assert Fraction(1, 2) * (a + b) == project(a, line)


def test_projection_preimage(ambient3):
    a, b, c = (ambient3.labelled(x) for x in "abc")
    preimage = projection_preimage(Subspace.full(ambient3), span(ambient3, [a]), Subspace.zero(ambient3))
    assert preimage == span(ambient3, [b, c])


def test_containment(ambient3):
    a, b = ambient3.labelled("a"), ambient3.labelled("b")
    plane = span(ambient3, [a, b])
    assert contains(plane, span(ambient3, [a - b]))
    assert not contains(span(ambient3, [a]), plane)
    assert a + b in plane
    assert ambient3.labelled("c") not in plane


def test_transversality(ambient3):
    a, b = ambient3.labelled("a"), ambient3.labelled("b")
    assert is_transverse([[span(ambient3, [a]), span(ambient3, [b])]])
    assert not is_transverse([[span(ambient3, [a]), span(ambient3, [a + b]), span(ambient3, [b])]])
    assert is_transverse([])


def test_random_subspace_and_complement_are_transverse(rng, ambient3):
    for _ in range(10):
        space = random_subspace(rng, ambient3, 2)
        assert space.dim <= 2
        assert is_transverse([[space], [perp(space)]])
        assert subspace_sum(space, perp(space)) == Subspace.full(ambient3)


def test_mixed_ambients_raise(ambient3, backend):
    other = AmbientSpace.standard(3, ("x", "y", "z"), backend=backend)
    with pytest.raises(AmbientMismatchError):
        intersect(Subspace.full(ambient3), Subspace.full(other))


def test_gram_must_be_positive_definite(backend):
    with pytest.raises(ValueError, match="positive definite"):
        AmbientSpace(2, ((1, 2), (2, 1)), (), backend)


def test_describe(ambient3):
    a, b, c = (ambient3.labelled(x) for x in "abc")
    assert (2 * c - a - b).describe() == "-a - b + 2c"
    assert span(ambient3, [Fraction(1, 2) * a]).describe() == "span{a}"
    assert Subspace.zero(ambient3).describe() == "{0}"


def test_record_round_trip(ambient3):
    space = span(ambient3, [ambient3.vector([1, Fraction(1, 3), 0]), ambient3.vector([0, 0, 2])])
    assert Subspace.from_record(space.to_record(), ambient3) == space


def test_float_backend_equality(float_backend):
    ambient = AmbientSpace.standard(2, backend=float_backend)
    assert span(ambient, [ambient.vector([1, 1 / 3])]) == span(ambient, [ambient.vector([3, 1])])


@pytest.fixture
def weighted3(backend):
    return AmbientSpace(3, ((2, 1, 0), (1, 2, 0), (0, 0, 1)), ("a", "b", "c"), backend)


@pytest.mark.parametrize("ambient_name", ["ambient3", "weighted3"])
def test_difference_laws(request, ambient_name):
    ambient = request.getfixturevalue(ambient_name)
    a, b, c = (ambient.labelled(x) for x in "abc")
    full = Subspace.full(ambient)
    plane, line_a, line_b = span(ambient, [a, b]), span(ambient, [a]), span(ambient, [b])

    assert ominus(ominus(full, line_a), ominus(full, plane)) == ominus(plane, line_a)

    twice = ominus(ominus(full, line_a), ominus(line_b, intersect(line_a, line_b)))
    assert twice == ominus(full, subspace_sum(line_a, line_b))
    assert twice.dim == 1

    tilted = span(ambient, [b + c])
    assert ominus(plane, tilted) == ominus(plane, project_subspace(tilted, plane))
    assert intersect(perp(plane), perp(ominus(tilted, intersect(plane, tilted)))) == intersect(perp(plane), perp(tilted))


def test_modular_dimension_law(rng, ambient3):
    for _ in range(10):
        first, second = random_subspace(rng, ambient3, 2), random_subspace(rng, ambient3, 2)
        assert first.dim + second.dim == subspace_sum(first, second).dim + intersect(first, second).dim


def test_subfamilies_of_a_transverse_family(ambient3):
    a, b, c = (ambient3.labelled(x) for x in "abc")
    family = [span(ambient3, [a, b + c]), span(ambient3, [c])]
    assert is_transverse([family, [Subspace.zero(ambient3)]])
    assert is_transverse([family[:1], []])
    assert is_transverse([[family[1]], []])
