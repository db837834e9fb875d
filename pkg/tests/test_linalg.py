from fractions import Fraction

import pytest

from gpd.services.linalg import BackendError, FloatBackend, RationalBackend, get_backend


def _fractions(backend, rows):
    return [[backend.to_fraction(x) for x in row] for row in rows]


def test_get_backend_by_name():
    assert isinstance(get_backend("rational"), RationalBackend)
    assert isinstance(get_backend("FLOAT"), FloatBackend)


def test_get_backend_unknown_name():
    with pytest.raises(BackendError):
        get_backend("complex")


def test_rational_scalar_reads_decimals_exactly(backend):
    assert backend.to_fraction(backend.scalar("0.1")) == Fraction(1, 10)
    assert backend.to_fraction(backend.scalar(Fraction(2, 3))) == Fraction(2, 3)
    assert backend.format_scalar(backend.scalar("-6/4")) == "-3/2"


def test_rational_rref_drops_dependent_rows(backend):
    rows = [[backend.scalar(x) for x in row] for row in ([2, 4, 0], [1, 2, 0], [0, 1, 1])]
    assert _fractions(backend, backend.rref(rows, 3)) == [[1, 0, -2], [0, 1, 1]]


def test_rational_nullspace(backend):
    rows = [[backend.scalar(1), backend.scalar(1)]]
    kernel = _fractions(backend, backend.nullspace(rows, 2))
    assert len(kernel) == 1
    a, b = kernel[0]
    assert a == -b and a != 0


def test_rational_nullspace_without_constraints_is_identity(backend):
    assert _fractions(backend, backend.nullspace([], 2)) == [[1, 0], [0, 1]]


def test_rational_inverse_of_singular_matrix(backend):
    rows = [[backend.scalar(x) for x in row] for row in ([1, 2], [2, 4])]
    with pytest.raises(ValueError, match="singular"):
        backend.inverse(rows)


def test_positive_definite(backend, float_backend):
    good = [[2, 1], [1, 2]]
    bad = [[1, 2], [2, 1]]
    assert backend.is_positive_definite([[backend.scalar(x) for x in row] for row in good])
    assert not backend.is_positive_definite([[backend.scalar(x) for x in row] for row in bad])
    assert float_backend.is_positive_definite(good)
    assert not float_backend.is_positive_definite(bad)


def test_float_rref_is_reduced(float_backend):
    reduced = float_backend.rref([[2.0, 4.0, 0.0], [1.0, 2.0, 0.0], [0.0, 1.0, 1.0]], 3)
    assert len(reduced) == 2
    assert reduced[0] == pytest.approx([1.0, 0.0, -2.0])
    assert reduced[1] == pytest.approx([0.0, 1.0, 1.0])


def test_float_same_rows_uses_tolerance(float_backend):
    assert float_backend.same_rows([[1.0, 1 / 3]], [[1.0, 0.3333333333333333]])
    assert not float_backend.same_rows([[1.0, 0.3]], [[1.0, 0.4]])
