"""Subspace-valued invariants of a filtration.

Birth-death spaces live on all intervals under the product order; Laplacian
kernels live on the off-diagonal intervals (rays included) under the reverse
inclusion order. Both are stored K-wide in the degree-q chain space.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Literal, Mapping

from gpd.models import CheckResult
from gpd.services.complex import Filtration, boundaries, cycles
from gpd.services.poset import (
    INF,
    IntegerIntervalFunction,
    Interval,
    IntervalOrder,
    LinearMetricPoset,
)
from gpd.services.subspace import (
    AmbientSpace,
    Subspace,
    Vector,
    contains,
    intersect,
    ominus,
    perp,
    project_subspace,
    projection_preimage,
    span,
)

logger = logging.getLogger(__name__)

KernelMethod = Literal["formula", "operator"]


class NotIntersectionMonotoneError(ValueError):
    """Raised when a space function fails the intersection-monotone check."""

    def __init__(self, birth: int, death: int, condition: str) -> None:
        super().__init__(f"Not intersection-monotone at (i={birth}, j={death}): {condition}")
        self.birth = birth
        self.death = death
        self.condition = condition


# ---------------------------------------------------------------------------
# Interval functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SubspaceIntervalFunction:
    """Interval -> Subspace over one ambient space."""

    poset: LinearMetricPoset
    order: IntervalOrder
    ambient: AmbientSpace
    values: Mapping[Interval, Subspace] = field(default_factory=dict)

    def __getitem__(self, interval: Interval) -> Subspace:
        return self.values[interval]

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubspaceIntervalFunction):
            return NotImplemented
        return (
            self.poset == other.poset
            and self.order is other.order
            and self.values.keys() == other.values.keys()
            and all(self.values[I] == other.values[I] for I in self.values)
        )

    def __hash__(self) -> int:
        return hash((self.poset, self.order, len(self.values)))

    def items(self):
        return self.values.items()

    def domain(self) -> list[Interval]:
        return self.poset.intervals(self.order)

    def missing(self) -> list[Interval]:
        return [I for I in self.domain() if I not in self.values]

    def at(self, i: int, j: int) -> Subspace:
        """Value at [p_i, p_j]; j = n + 1 reads the ray [p_i, inf)."""

        return self.values[Interval(i, INF if j == self.poset.n + 1 else j)]

    def dims(self) -> IntegerIntervalFunction:
        return IntegerIntervalFunction(self.poset, self.order, {I: W.dim for I, W in self.values.items()})

    @classmethod
    def from_callable(
        cls,
        poset: LinearMetricPoset,
        order: IntervalOrder,
        ambient: AmbientSpace,
        value: Callable[[Interval], Subspace],
    ) -> "SubspaceIntervalFunction":
        return cls(poset, order, ambient, {I: value(I) for I in poset.intervals(order)})


def check_intersection_monotone(function: SubspaceIntervalFunction) -> CheckResult:
    """Covering relations of the product order plus the intersection condition."""

    try:
        _require_intersection_monotone(function)
    except NotIntersectionMonotoneError as exc:
        return CheckResult.failed(str(exc))
    return CheckResult.passed()


def _require_intersection_monotone(function: SubspaceIntervalFunction) -> None:
    if function.order is not IntervalOrder.PRODUCT:
        raise ValueError("Intersection monotonicity is defined for the product order")
    n = function.poset.n
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if not contains(function.at(i, j + 1), function.at(i, j)):
                raise NotIntersectionMonotoneError(i, j, "F[i, j] is not inside F[i, j+1]")
        if i == n:
            # [n, inf) has no successor in the birth coordinate
            continue
        for j in range(i + 1, n + 2):
            if not contains(function.at(i + 1, j), function.at(i, j)):
                raise NotIntersectionMonotoneError(i, j, "F[i, j] is not inside F[i+1, j]")
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            if intersect(function.at(i + 1, j), function.at(i, j + 1)) != function.at(i, j):
                raise NotIntersectionMonotoneError(i, j, "F[i+1, j] ∩ F[i, j+1] differs from F[i, j]")


# ---------------------------------------------------------------------------
# Birth-death spaces and Betti numbers
# ---------------------------------------------------------------------------


def zb(filtration: Filtration, q: int) -> SubspaceIntervalFunction:
    """ZB_q[i, j] = Z_q(K_i) ∩ B_q(K_j) and ZB_q[i, inf) = Z_q(K_i)."""

    ambient = filtration.context(q).ambient

    def value(interval: Interval) -> Subspace:
        z = cycles(filtration, q, interval.birth)
        if interval.is_ray:
            return z
        return intersect(z, boundaries(filtration, q, int(interval.death)))

    result = SubspaceIntervalFunction.from_callable(filtration.poset, IntervalOrder.PRODUCT, ambient, value)
    logger.debug("Computed birth-death spaces in degree %d over %d steps", q, filtration.n)
    return result


def persistent_betti(filtration: Filtration, q: int, i: int, j: int) -> int:
    """Rank of H_q(K_i) -> H_q(K_j)."""

    if i > j:
        raise ValueError(f"Persistent Betti number needs i <= j, got ({i}, {j})")
    if i == 0:
        return 0
    z = cycles(filtration, q, i)
    return z.dim - intersect(z, boundaries(filtration, q, j)).dim


def betti_function(filtration: Filtration, q: int) -> IntegerIntervalFunction:
    """Rank invariant on the reverse inclusion domain: m[i, j] = β^{i, j-1}, m[i, inf) = β^{i, n}."""

    n = filtration.n

    def value(interval: Interval) -> int:
        last = n if interval.is_ray else int(interval.death) - 1
        return persistent_betti(filtration, q, interval.birth, last)

    return IntegerIntervalFunction.from_callable(filtration.poset, IntervalOrder.REVERSE_INCLUSION, value)


# ---------------------------------------------------------------------------
# Persistent Laplacian
# ---------------------------------------------------------------------------


def _embed(ambient: AmbientSpace, positions: list[int], rows: list[list[Any]]) -> list[Vector]:
    backend = ambient.backend
    vectors = []
    for coefficients in rows:
        coords = [backend.zero()] * ambient.dimension
        for k, value in zip(positions, coefficients):
            coords[k] = value
        vectors.append(Vector(ambient, tuple(coords)))
    return vectors


def relative_chain_space(filtration: Filtration, q: int, i: int, j: int) -> Subspace:
    """q-chains of K_j whose boundary is carried by K_i."""

    if i > j:
        raise ValueError(f"Relative chain space needs i <= j, got ({i}, {j})")
    ctx = filtration.context(q)
    columns = [ctx.index(s) for s in filtration.simplices_at(q, j)]
    if q == 0 or not columns:
        return span(ctx.ambient, [ctx.ambient.basis_vector(k) for k in columns])
    lower = filtration.context(q - 1)
    inside = {lower.index(s) for s in filtration.simplices_at(q - 1, i)}
    full = filtration.boundary(q)
    outside_rows = [[full[r][c] for c in columns] for r in range(lower.dimension) if r not in inside]
    kernel = ctx.ambient.backend.nullspace(outside_rows, len(columns))
    return span(ctx.ambient, _embed(ctx.ambient, columns, kernel))


@dataclass(frozen=True)
class LaplacianOperator:
    """Matrix of Δ_q^{K_i,K_j} in the basis of the q-simplices of K_i."""

    simplices: tuple[tuple[str, ...], ...]
    positions: tuple[int, ...]
    matrix: tuple[tuple[Any, ...], ...]


def _submatrix(gram: Any, rows: list[int], cols: list[int], backend: Any) -> list[list[Any]]:
    if gram is None:
        return [[backend.one() if r == c else backend.zero() for c in cols] for r in rows]
    return [[gram[r][c] for c in cols] for r in rows]


def persistent_laplacian(filtration: Filtration, q: int, i: int, j: int) -> LaplacianOperator:
    """Δ = ∂_{q+1}^{K_j,K_i} (∂_{q+1}^{K_j,K_i})* + (∂_q^{K_i})* ∂_q^{K_i}."""

    if i > j:
        raise ValueError(f"Persistent Laplacian needs i <= j, got ({i}, {j})")
    ctx = filtration.context(q)
    backend = ctx.ambient.backend
    simplices = filtration.simplices_at(q, i)
    rows = [ctx.index(s) for s in simplices]
    size = len(rows)
    zero = backend.zero()
    laplacian = [[zero] * size for _ in range(size)]
    if not size:
        return LaplacianOperator((), (), ())
    gram_i = _submatrix(ctx.ambient.gram, rows, rows, backend)

    # up part through a basis of the relative chain space
    relative = relative_chain_space(filtration, q + 1, i, j)
    if not relative.is_zero():
        upper = filtration.context(q + 1)
        full = filtration.boundary(q + 1)
        k = relative.dim
        # (∂ Bx)^T restricted to K_i's q-simplices: one row per relative basis vector
        images = backend.matmul(
            [list(v) for v in relative.basis],
            [[full[r][c] for r in rows] for c in range(upper.dimension)],
            upper.dimension,
            size,
        )
        m_up = [[images[c][r] for c in range(k)] for r in range(size)]
        gram_x = upper.ambient.pairing(relative.basis, relative.basis)
        up = backend.matmul(m_up, backend.inverse(gram_x), k, k)
        up = backend.matmul(up, images, k, size)
        up = backend.matmul(up, gram_i, size, size)
        laplacian = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(laplacian, up)]

    # down part
    if q > 0:
        lower = filtration.context(q - 1)
        lower_rows = [lower.index(s) for s in filtration.simplices_at(q - 1, i)]
        full = filtration.boundary(q)
        d = [[full[r][c] for c in rows] for r in lower_rows]
        if lower_rows:
            gram_lower = _submatrix(lower.ambient.gram, lower_rows, lower_rows, backend)
            d_star = backend.matmul(
                backend.inverse(gram_i),
                backend.matmul([[row[c] for row in d] for c in range(size)], gram_lower, len(lower_rows), len(lower_rows)),
                size,
                len(lower_rows),
            )
            down = backend.matmul(d_star, d, len(lower_rows), size)
            laplacian = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(laplacian, down)]

    return LaplacianOperator(tuple(simplices), tuple(rows), tuple(tuple(r) for r in laplacian))


def laplacian_kernel(
    filtration: Filtration, q: int, i: int, j: int, method: KernelMethod = "formula"
) -> Subspace:
    """ker Δ_q^{K_i,K_j} embedded in C_q^K.

    ``formula`` uses Z_q(K_i) ⊖ (Z_q(K_i) ∩ B_q(K_j)); ``operator`` builds Δ.
    """

    if i > j:
        raise ValueError(f"Laplacian kernel needs i <= j, got ({i}, {j})")
    ambient = filtration.context(q).ambient
    if i == 0:
        return Subspace.zero(ambient)
    if method == "formula":
        z = cycles(filtration, q, i)
        return ominus(z, intersect(z, boundaries(filtration, q, j)))
    if method != "operator":
        raise ValueError(f"Unknown kernel method {method!r}")
    operator = persistent_laplacian(filtration, q, i, j)
    if not operator.positions:
        return Subspace.zero(ambient)
    kernel = ambient.backend.nullspace([list(r) for r in operator.matrix], len(operator.positions))
    return span(ambient, _embed(ambient, list(operator.positions), kernel))


def lk(filtration: Filtration, q: int, method: KernelMethod = "formula") -> SubspaceIntervalFunction:
    """LK_q[i, j] = ker Δ^{i, j-1} and LK_q[i, inf) = ker Δ^{i, n}."""

    n = filtration.n
    ambient = filtration.context(q).ambient

    def value(interval: Interval) -> Subspace:
        last = n if interval.is_ray else int(interval.death) - 1
        return laplacian_kernel(filtration, q, interval.birth, last, method)

    return SubspaceIntervalFunction.from_callable(
        filtration.poset, IntervalOrder.REVERSE_INCLUSION, ambient, value
    )


# ---------------------------------------------------------------------------
# Harmonic tower
# ---------------------------------------------------------------------------


def harmonic_space(filtration: Filtration, q: int, i: int) -> Subspace:
    """Z_q(K_i) ⊖ B_q(K_i); step 0 reads step 1."""

    step = max(i, 1)
    return ominus(cycles(filtration, q, step), boundaries(filtration, q, step))


def harmonic_image(filtration: Filtration, q: int, a: int, b: int) -> Subspace:
    """Image of the harmonic space of K_a projected onto B_q(K_b)^⊥."""

    return project_subspace(harmonic_space(filtration, q, a), perp(boundaries(filtration, q, b)))


@dataclass(frozen=True)
class HarmonicTower:
    harmonic: Subspace
    gamma_image: Subspace
    m_space: Subspace
    n_space: Subspace
    p_space: Subspace


def harmonic_tower(filtration: Filtration, q: int, i: int, j: int) -> HarmonicTower:
    if not 1 <= i < j <= filtration.n:
        raise ValueError(f"Harmonic tower needs 1 <= i < j <= n, got ({i}, {j})")
    harmonic = harmonic_space(filtration, q, i)
    perp_j = perp(boundaries(filtration, q, j))
    perp_before = perp(boundaries(filtration, q, j - 1))
    m_space = projection_preimage(harmonic, perp_j, harmonic_image(filtration, q, i - 1, j))
    n_space = projection_preimage(harmonic, perp_before, harmonic_image(filtration, q, i - 1, j - 1))
    return HarmonicTower(
        harmonic=harmonic,
        gamma_image=project_subspace(harmonic, perp_j),
        m_space=m_space,
        n_space=n_space,
        p_space=ominus(m_space, n_space),
    )


def harmonic_barcode(filtration: Filtration, q: int) -> dict[Interval, Subspace]:
    """Nonzero 𝓟_q^{i,j} over all 1 <= i < j <= n."""

    result = {}
    for i in range(1, filtration.n + 1):
        for j in range(i + 1, filtration.n + 1):
            space = harmonic_tower(filtration, q, i, j).p_space
            if not space.is_zero():
                result[Interval(i, j)] = space
    return result
