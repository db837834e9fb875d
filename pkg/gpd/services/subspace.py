"""Subspace arithmetic over a finite-dimensional inner-product space.

Every subspace is stored by the nonzero rows of the reduced row-echelon form
of a spanning set, i.e. the reduced column-echelon form of its basis matrix.
Two subspaces of the same ambient space are equal iff their stored bases
agree entry-wise, which keeps equality, hashing and golden files exact.

Orthogonality is always taken with respect to the ambient Gram matrix; an
absent Gram matrix means the standard inner product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from gpd.models import SubspaceRecord
from gpd.services.linalg import LinearAlgebraBackend, get_backend


Row = tuple[Any, ...]


class AmbientMismatchError(ValueError):
    """Raised when an operation mixes values from different ambient spaces."""

    def __init__(self, left: "AmbientSpace", right: "AmbientSpace") -> None:
        super().__init__(
            f"Ambient mismatch: dimension {left.dimension} vs {right.dimension}"
            if left.dimension != right.dimension
            else "Ambient mismatch: same dimension but different labels, Gram matrix or backend"
        )
        self.left = left
        self.right = right


# ---------------------------------------------------------------------------
# Ambient space and vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AmbientSpace:
    """A coordinate space with an optional Gram matrix and basis labels."""

    dimension: int
    gram: tuple[Row, ...] | None = None
    labels: tuple[str, ...] = ()
    backend: LinearAlgebraBackend = field(default_factory=get_backend)

    def __post_init__(self) -> None:
        if self.dimension < 0:
            raise ValueError("Ambient dimension must be non-negative")
        labels = tuple(self.labels) or tuple(f"e{k + 1}" for k in range(self.dimension))
        if len(labels) != self.dimension or len(set(labels)) != len(labels):
            raise ValueError("Basis labels must be distinct and match the dimension")
        object.__setattr__(self, "labels", labels)
        if self.gram is None:
            return
        gram = tuple(tuple(self.backend.scalar(x) for x in row) for row in self.gram)
        if len(gram) != self.dimension or any(len(row) != self.dimension for row in gram):
            raise ValueError("Gram matrix must be square of the ambient dimension")
        for r in range(self.dimension):
            for c in range(r):
                if not self.backend.is_zero(gram[r][c] - gram[c][r]):
                    raise ValueError("Gram matrix must be symmetric")
        if not self.backend.is_positive_definite(gram):
            raise ValueError("Gram matrix must be positive definite")
        object.__setattr__(self, "gram", gram)

    @classmethod
    def standard(
        cls,
        dimension: int,
        labels: Sequence[str] = (),
        *,
        backend: LinearAlgebraBackend | None = None,
    ) -> "AmbientSpace":
        return cls(dimension, None, tuple(labels), backend or get_backend())

    def vector(self, coords: Iterable[Any]) -> "Vector":
        return Vector(self, tuple(self.backend.scalar(x) for x in coords))

    def basis_vector(self, index: int) -> "Vector":
        """The unit vector of coordinate *index* (0-based)."""

        zero, one = self.backend.zero(), self.backend.one()
        return Vector(self, tuple(one if k == index else zero for k in range(self.dimension)))

    def labelled(self, label: str) -> "Vector":
        return self.basis_vector(self.labels.index(label))

    def zero_vector(self) -> "Vector":
        return Vector(self, tuple(self.backend.zero() for _ in range(self.dimension)))

    # ------------------------------------------------------------------
    # Gram helpers
    # ------------------------------------------------------------------

    def apply_gram(self, rows: Sequence[Sequence[Any]]) -> list[list[Any]]:
        """Return ``rows @ G`` (rows are coordinate vectors)."""

        if self.gram is None:
            return [list(r) for r in rows]
        return self.backend.matmul(rows, self.gram, self.dimension, self.dimension)

    def pairing(self, left: Sequence[Sequence[Any]], right: Sequence[Sequence[Any]]) -> list[list[Any]]:
        """Matrix of inner products ``<left_r, right_c>``."""

        if not left:
            return []
        columns = [list(col) for col in zip(*right)] if right else [[] for _ in range(self.dimension)]
        return self.backend.matmul(self.apply_gram(left), columns, self.dimension, len(right))

    def inner(self, u: "Vector", v: "Vector") -> Any:
        _check_same(u.ambient, self)
        _check_same(v.ambient, self)
        return self.pairing([u.coords], [v.coords])[0][0]


@dataclass(frozen=True)
class Vector:
    ambient: AmbientSpace
    coords: Row

    def __post_init__(self) -> None:
        if len(self.coords) != self.ambient.dimension:
            raise ValueError(
                f"Vector has {len(self.coords)} coordinates, ambient dimension is {self.ambient.dimension}"
            )

    def __add__(self, other: "Vector") -> "Vector":
        _check_same(self.ambient, other.ambient)
        return Vector(self.ambient, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Vector") -> "Vector":
        _check_same(self.ambient, other.ambient)
        return Vector(self.ambient, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Vector":
        return Vector(self.ambient, tuple(-a for a in self.coords))

    def __rmul__(self, factor: Any) -> "Vector":
        scale = self.ambient.backend.scalar(factor)
        return Vector(self.ambient, tuple(scale * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(self.ambient.backend.is_zero(a) for a in self.coords)

    def describe(self) -> str:
        """Human-readable linear combination of the basis labels, e.g. ``2c - a - b``."""

        backend = self.ambient.backend
        terms: list[str] = []
        for label, value in zip(self.ambient.labels, self.coords):
            if backend.is_zero(value):
                continue
            text = backend.format_scalar(value)
            sign = "-" if text.startswith("-") else "+"
            magnitude = text.lstrip("-")
            if magnitude == "1":
                body = label
            elif "/" in magnitude:
                body = f"({magnitude}){label}"
            else:
                body = f"{magnitude}{label}"
            terms.append(f"{sign} {body}")
        if not terms:
            return "0"
        joined = " ".join(terms)
        return joined[2:] if joined.startswith("+ ") else "-" + joined[2:]


# ---------------------------------------------------------------------------
# Subspace
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace in canonical form; build it through :func:`span`."""

    ambient: AmbientSpace
    basis: tuple[Row, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def vectors(self) -> list[Vector]:
        return [Vector(self.ambient, row) for row in self.basis]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient != other.ambient or self.dim != other.dim:
            return False
        return self.ambient.backend.same_rows(self.basis, other.basis)

    def __hash__(self) -> int:
        exact = self.basis if self.ambient.backend.exact else None
        return hash((self.ambient.dimension, self.dim, exact))

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __contains__(self, vector: Vector) -> bool:
        return contains_vector(self, vector)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient.dimension})"

    def describe(self) -> str:
        if self.is_zero():
            return "{0}"
        return "span{" + ", ".join(v.describe() for v in self.vectors()) + "}"

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def to_record(self) -> SubspaceRecord:
        fmt = self.ambient.backend.format_scalar
        return SubspaceRecord(
            ambient_dim=self.ambient.dimension,
            basis=[[fmt(x) for x in row] for row in self.basis],
        )

    @classmethod
    def from_record(cls, record: SubspaceRecord, ambient: AmbientSpace) -> "Subspace":
        if record.ambient_dim != ambient.dimension:
            raise ValueError(
                f"Record ambient dimension {record.ambient_dim} does not match {ambient.dimension}"
            )
        return span(ambient, [ambient.vector(column) for column in record.basis])

    @classmethod
    def zero(cls, ambient: AmbientSpace) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: AmbientSpace) -> "Subspace":
        return span(ambient, [ambient.basis_vector(k) for k in range(ambient.dimension)])


def _check_same(left: AmbientSpace, right: AmbientSpace) -> None:
    if left is not right and left != right:
        raise AmbientMismatchError(left, right)


def _from_rows(ambient: AmbientSpace, rows: Sequence[Sequence[Any]]) -> Subspace:
    reduced = ambient.backend.rref(rows, ambient.dimension)
    return Subspace(ambient, tuple(tuple(r) for r in reduced))


def _combine(ambient: AmbientSpace, coefficients: list[list[Any]], basis: Sequence[Row]) -> list[list[Any]]:
    """Rows ``coefficients @ basis``: linear combinations of basis vectors."""

    return ambient.backend.matmul(coefficients, basis, len(basis), ambient.dimension)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def span(ambient: AmbientSpace, vectors: Iterable[Vector]) -> Subspace:
    rows = []
    for vector in vectors:
        _check_same(vector.ambient, ambient)
        rows.append(vector.coords)
    return _from_rows(ambient, rows)


def subspace_sum(*spaces: Subspace) -> Subspace:
    """W1 + W2 + ... (all arguments must share an ambient space)."""

    if not spaces:
        raise ValueError("subspace_sum needs at least one subspace")
    ambient = spaces[0].ambient
    rows: list[Row] = []
    for space in spaces:
        _check_same(space.ambient, ambient)
        rows.extend(space.basis)
    if len(spaces) == 1:
        return spaces[0]
    return _from_rows(ambient, rows)


def total_sum(ambient: AmbientSpace, spaces: Iterable[Subspace]) -> Subspace:
    """Sum of a possibly empty family; the empty sum is the zero subspace."""

    rows: list[Row] = []
    for space in spaces:
        _check_same(space.ambient, ambient)
        rows.extend(space.basis)
    return _from_rows(ambient, rows)


def intersect(first: Subspace, second: Subspace) -> Subspace:
    _check_same(first.ambient, second.ambient)
    ambient = first.ambient
    if first.is_zero() or second.is_zero():
        return Subspace.zero(ambient)
    # kernel of [B1 | -B2]: pairs (x, y) with B1 x = B2 y
    k1 = first.dim
    stacked = [
        [first.basis[c][r] for c in range(k1)] + [-second.basis[c][r] for c in range(second.dim)]
        for r in range(ambient.dimension)
    ]
    kernel = ambient.backend.nullspace(stacked, k1 + second.dim)
    coefficients = [row[:k1] for row in kernel]
    return _from_rows(ambient, _combine(ambient, coefficients, first.basis))


def perp(space: Subspace) -> Subspace:
    ambient = space.ambient
    if space.is_zero():
        return Subspace.full(ambient)
    constraints = ambient.apply_gram(space.basis)
    return _from_rows(ambient, ambient.backend.nullspace(constraints, ambient.dimension))


def ominus(first: Subspace, second: Subspace) -> Subspace:
    """W1 ⊖ W2 = W1 ∩ W2^⊥, computed as {B1 x : <B2, B1 x> = 0}."""

    _check_same(first.ambient, second.ambient)
    ambient = first.ambient
    if first.is_zero() or second.is_zero():
        return first
    constraints = ambient.pairing(second.basis, first.basis)
    coefficients = ambient.backend.nullspace(constraints, first.dim)
    return _from_rows(ambient, _combine(ambient, coefficients, first.basis))


def _projection_coefficients(space: Subspace, rows: Sequence[Row]) -> list[list[Any]]:
    """Coordinates, in the stored basis of *space*, of the projections of *rows*."""

    ambient = space.ambient
    gram_inverse = ambient.backend.inverse(ambient.pairing(space.basis, space.basis))
    right_sides = ambient.pairing(rows, space.basis)
    return ambient.backend.matmul(right_sides, gram_inverse, space.dim, space.dim)


def project(vector: Vector, space: Subspace) -> Vector:
    """Gram-orthogonal projection of *vector* onto *space*."""

    _check_same(vector.ambient, space.ambient)
    ambient = space.ambient
    if space.is_zero():
        return ambient.zero_vector()
    coefficients = _projection_coefficients(space, [vector.coords])
    return Vector(ambient, tuple(_combine(ambient, coefficients, space.basis)[0]))


def project_subspace(source: Subspace, target: Subspace) -> Subspace:
    """Span of the projections of a basis of *source* onto *target*."""

    _check_same(source.ambient, target.ambient)
    ambient = target.ambient
    if source.is_zero() or target.is_zero():
        return Subspace.zero(ambient)
    coefficients = _projection_coefficients(target, source.basis)
    return _from_rows(ambient, _combine(ambient, coefficients, target.basis))


def projection_preimage(domain: Subspace, target: Subspace, allowed: Subspace) -> Subspace:
    """{x in *domain* : project(x, *target*) lies in *allowed*}.

    Solved as a linear system on the coordinates of x, so a non-injective
    projection is handled without inverting it.
    """

    _check_same(domain.ambient, target.ambient)
    _check_same(domain.ambient, allowed.ambient)
    ambient = domain.ambient
    if domain.is_zero():
        return domain
    if target.is_zero():
        images: list[list[Any]] = [[ambient.backend.zero()] * ambient.dimension for _ in domain.basis]
    else:
        images = _combine(ambient, _projection_coefficients(target, domain.basis), target.basis)
    forbidden = perp(allowed)
    if forbidden.is_zero():
        return domain
    constraints = ambient.pairing(forbidden.basis, images)
    coefficients = ambient.backend.nullspace(constraints, domain.dim)
    return _from_rows(ambient, _combine(ambient, coefficients, domain.basis))


def contains(container: Subspace, candidate: Subspace) -> bool:
    """True iff *candidate* ⊆ *container*."""

    _check_same(container.ambient, candidate.ambient)
    if candidate.dim > container.dim:
        return False
    return subspace_sum(container, candidate).dim == container.dim


def contains_vector(space: Subspace, vector: Vector) -> bool:
    _check_same(space.ambient, vector.ambient)
    if vector.is_zero():
        return True
    return _from_rows(space.ambient, [*space.basis, vector.coords]).dim == space.dim


def is_transverse(families: Sequence[Sequence[Subspace]]) -> bool:
    """True iff the dimension of the total sum equals the sum of dimensions."""

    members = [space for family in families for space in family]
    if not members:
        return True
    ambient = members[0].ambient
    expected = sum(space.dim for space in members)
    if expected > ambient.dimension:
        return False
    return total_sum(ambient, members).dim == expected
