"""Orthogonal inversion of subspace-valued interval functions.

The ×-inverse works on the product order over all intervals, the ⊇-inverse
on the reverse inclusion order over off-diagonal intervals. Both produce
Grassmannian persistence diagrams: transverse families of subspaces indexed
by intervals.
"""
from __future__ import annotations

import logging
import operator
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Mapping

from gpd.models import CheckResult, DiagramDocument, DiagramPoint
from gpd.services.complex import Filtration, boundaries, cycles
from gpd.services.invariants import SubspaceIntervalFunction, _require_intersection_monotone
from gpd.services.poset import (
    IntegerIntervalFunction,
    Interval,
    IntervalOrder,
    LinearMetricPoset,
    leq,
)
from gpd.services.subspace import (
    AmbientSpace,
    Subspace,
    Vector,
    contains_vector,
    is_transverse,
    ominus,
    span,
    subspace_sum,
    total_sum,
)

logger = logging.getLogger(__name__)

LeqFn = Callable[[Any, Any], bool]


class InversionError(ValueError):
    """Raised when an interval function cannot be inverted as given."""

    def __init__(self, message: str, missing: list[Interval] | None = None) -> None:
        super().__init__(message)
        self.missing = missing or []


# ---------------------------------------------------------------------------
# Diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GrassmannianDiagram:
    """Interval -> Subspace; intervals absent from ``values`` hold {0}.

    Equality compares the points only, so a ×- and a ⊇-diagram with the same
    off-diagonal values compare equal.
    """

    poset: LinearMetricPoset
    order: IntervalOrder
    ambient: AmbientSpace
    values: Mapping[Interval, Subspace] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "values", {I: W for I, W in sorted(self.values.items()) if not W.is_zero()}
        )

    def __getitem__(self, interval: Interval) -> Subspace:
        return self.values.get(interval, Subspace.zero(self.ambient))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrassmannianDiagram):
            return NotImplemented
        return (
            self.poset == other.poset
            and self.ambient.dimension == other.ambient.dimension
            and self.values.keys() == other.values.keys()
            and all(self.values[I] == other.values[I] for I in self.values)
        )

    def __hash__(self) -> int:
        return hash((self.poset, self.order, tuple(self.values)))

    def support(self) -> dict[Interval, Subspace]:
        return dict(self.values)

    def domain(self) -> list[Interval]:
        return self.poset.intervals(self.order)

    def total(self) -> Subspace:
        return total_sum(self.ambient, self.values.values())

    def is_transverse(self) -> bool:
        return is_transverse([list(self.values.values())])

    def restrict(self, keep: Callable[[Interval], bool]) -> "GrassmannianDiagram":
        return GrassmannianDiagram(
            self.poset, self.order, self.ambient, {I: W for I, W in self.values.items() if keep(I)}
        )

    def to_document(self, degree: int | None = None, invariant: str = "custom") -> DiagramDocument:
        points = [
            DiagramPoint(
                interval=self.poset.format_interval(I),
                dim=W.dim,
                basis=W.to_record().basis,
                description=W.describe(),
            )
            for I, W in self.values.items()
        ]
        return DiagramDocument(
            poset=self.poset.to_record(),
            order=self.order.value,
            degree=degree,
            invariant=invariant,
            basis_labels=list(self.ambient.labels),
            points=points,
        )

    @classmethod
    def from_document(cls, document: DiagramDocument, ambient: AmbientSpace) -> "GrassmannianDiagram":
        poset = LinearMetricPoset.from_record(document.poset)
        values = {}
        for point in document.points:
            interval = poset.interval_at(*point.interval)
            values[interval] = span_rows(ambient, point.basis)
        return cls(poset, IntervalOrder(document.order), ambient, values)


def span_rows(ambient: AmbientSpace, rows: Iterable[Iterable[Any]]) -> Subspace:
    return span(ambient, [ambient.vector(r) for r in rows])


def diagonal_part(diagram: GrassmannianDiagram) -> GrassmannianDiagram:
    return diagram.restrict(lambda I: I.is_diagonal)


def off_diagonal_part(diagram: GrassmannianDiagram) -> GrassmannianDiagram:
    return diagram.restrict(lambda I: not I.is_diagonal)


def dim_diagram(diagram: GrassmannianDiagram) -> IntegerIntervalFunction:
    return IntegerIntervalFunction.from_callable(diagram.poset, diagram.order, lambda I: diagram[I].dim)


# ---------------------------------------------------------------------------
# Orthogonal inversion
# ---------------------------------------------------------------------------


def _require_total(function: SubspaceIntervalFunction, order: IntervalOrder) -> None:
    if function.order is not order:
        raise InversionError(f"Expected a {order.value} interval function, got {function.order.value}")
    missing = function.missing()
    if missing:
        raise InversionError(f"Interval function has no value at {missing[0]!r}", missing)


def _value(function: SubspaceIntervalFunction, i: int, j: int) -> Subspace:
    """F[p_i, p_j] with F[p_0, -] = {0}, F[p_i, p_{i-1}] = {0} and j = n + 1 for rays."""

    if i < 1 or j < i:
        return Subspace.zero(function.ambient)
    return function.at(i, j)


def oi_times_compressed(function: SubspaceIntervalFunction) -> GrassmannianDiagram:
    """F[i, j] ⊖ (F[i-1, j] + F[i, j-1]) at every interval."""

    _require_total(function, IntervalOrder.PRODUCT)
    n = function.poset.n
    values = {}
    for interval in function.domain():
        i, j = interval.birth, interval.death_rank(n)
        below = j - 1 if not interval.is_ray else n
        values[interval] = ominus(
            function[interval], subspace_sum(_value(function, i - 1, j), _value(function, i, below))
        )
    return GrassmannianDiagram(function.poset, IntervalOrder.PRODUCT, function.ambient, values)


def oi_times_literal(function: SubspaceIntervalFunction) -> GrassmannianDiagram:
    """The three-⊖ form (F[i,j] ⊖ F[i,j-1]) ⊖ (F[i-1,j] ⊖ F[i-1,j-1])."""

    _require_total(function, IntervalOrder.PRODUCT)
    n = function.poset.n
    values = {}
    for interval in function.domain():
        i = interval.birth
        if interval.is_diagonal:
            values[interval] = ominus(function[interval], _value(function, i - 1, i))
            continue
        j = interval.death_rank(n)
        below = n if interval.is_ray else j - 1
        values[interval] = ominus(
            ominus(function[interval], _value(function, i, below)),
            ominus(_value(function, i - 1, j), _value(function, i - 1, below)),
        )
    return GrassmannianDiagram(function.poset, IntervalOrder.PRODUCT, function.ambient, values)


def oi_times(function: SubspaceIntervalFunction, *, literal: bool = False) -> GrassmannianDiagram:
    """×-orthogonal inverse of an intersection-monotone function.

    Raises
    ------
    NotIntersectionMonotoneError
        With the first violating ``(i, j)`` pair.
    """

    _require_total(function, IntervalOrder.PRODUCT)
    _require_intersection_monotone(function)
    diagram = oi_times_literal(function) if literal else oi_times_compressed(function)
    logger.debug("×-inversion produced %d nonzero points", len(diagram.values))
    return diagram


def oi_supseteq(function: SubspaceIntervalFunction) -> GrassmannianDiagram:
    """⊇-orthogonal inverse on the off-diagonal intervals."""

    _require_total(function, IntervalOrder.REVERSE_INCLUSION)
    n = function.poset.n
    zero = Subspace.zero(function.ambient)

    def at(i: int, j: int) -> Subspace:
        if i < 1:
            return zero
        return function.at(i, j)

    values = {}
    for interval in function.domain():
        i = interval.birth
        if interval.is_ray:
            values[interval] = ominus(function[interval], at(i - 1, n + 1))
            continue
        j = int(interval.death)
        values[interval] = ominus(
            ominus(at(i, j), at(i, j + 1)),
            ominus(at(i - 1, j), at(i - 1, j + 1)),
        )
    return GrassmannianDiagram(function.poset, IntervalOrder.REVERSE_INCLUSION, function.ambient, values)


# ---------------------------------------------------------------------------
# Monoidal Möbius inversion
# ---------------------------------------------------------------------------


def _as_mapping(values: Any) -> Mapping[Hashable, Subspace]:
    return values.values if hasattr(values, "values") and not callable(values.values) else values


def _leq_fn(order: IntervalOrder | LeqFn) -> LeqFn:
    if isinstance(order, IntervalOrder):
        return lambda a, b: leq(order, a, b)
    return order


def down_set_sum(
    values: Mapping[Hashable, Subspace] | GrassmannianDiagram | SubspaceIntervalFunction,
    element: Hashable,
    order: IntervalOrder | LeqFn,
    ambient: AmbientSpace,
) -> Subspace:
    """Sum of the values at every element below *element*."""

    below = _leq_fn(order)
    mapping = _as_mapping(values)
    return total_sum(ambient, [W for key, W in mapping.items() if below(key, element)])


def _ambient_of(*functions: Any) -> AmbientSpace:
    for function in functions:
        ambient = getattr(function, "ambient", None)
        if ambient is not None:
            return ambient
        for value in _as_mapping(function).values():
            return value.ambient
    raise ValueError("Cannot infer the ambient space of empty functions")


def _elements(first: Any, second: Any, elements: Iterable[Hashable] | None) -> list[Hashable]:
    if elements is not None:
        return list(elements)
    for function in (first, second):
        domain = getattr(function, "domain", None)
        if callable(domain):
            return list(domain())
    keys = dict.fromkeys(_as_mapping(first))
    keys.update(dict.fromkeys(_as_mapping(second)))
    return list(keys)


def check_monoidal_inverse(
    candidate: Any,
    function: Any,
    order: IntervalOrder | LeqFn = operator.le,
    elements: Iterable[Hashable] | None = None,
) -> CheckResult:
    """Σ_{a <= b} candidate(a) = function(b) for every b."""

    ambient = _ambient_of(function, candidate)
    values = _as_mapping(function)
    zero = Subspace.zero(ambient)
    for element in _elements(function, candidate, elements):
        total = down_set_sum(candidate, element, order, ambient)
        if total != values.get(element, zero):
            return CheckResult.failed(f"down-set sum differs at {element!r}")
    return CheckResult.passed()


def mobius_equivalent(
    first: Any,
    second: Any,
    order: IntervalOrder | LeqFn = operator.le,
    elements: Iterable[Hashable] | None = None,
) -> CheckResult:
    """Equal down-set sums at every element."""

    ambient = _ambient_of(first, second)
    for element in _elements(first, second, elements):
        if down_set_sum(first, element, order, ambient) != down_set_sum(second, element, order, ambient):
            return CheckResult.failed(f"down-set sums differ at {element!r}")
    return CheckResult.passed()


def pushforward_subspaces(
    mapping: Mapping[Hashable, Hashable],
    values: Mapping[Hashable, Subspace],
    codomain: Iterable[Hashable],
    ambient: AmbientSpace,
) -> dict[Hashable, Subspace]:
    """f_# m(q) = Σ over the fiber of q; an empty fiber gives {0}."""

    fibers: dict[Hashable, list[Subspace]] = {q: [] for q in codomain}
    for key, space in _as_mapping(values).items():
        fibers[mapping[key]].append(space)
    return {q: total_sum(ambient, spaces) for q, spaces in fibers.items()}


def pullback_subspaces(
    mapping: Mapping[Hashable, Hashable], values: Mapping[Hashable, Subspace], domain: Iterable[Hashable]
) -> dict[Hashable, Subspace]:
    mapped = _as_mapping(values)
    return {p: mapped[mapping[p]] for p in domain}


# ---------------------------------------------------------------------------
# Exact birth and death of representatives
# ---------------------------------------------------------------------------


def _samples(space: Subspace, rng: random.Random, combinations: int) -> list[Vector]:
    vectors = space.vectors()
    samples = list(vectors)
    for _ in range(combinations):
        combo = space.ambient.zero_vector()
        for vector in vectors:
            combo = combo + rng.randint(-4, 4) * vector
        if not combo.is_zero():
            samples.append(combo)
    return samples


def check_born_dies_exactly(
    filtration: Filtration,
    q: int,
    diagram: GrassmannianDiagram,
    rng: random.Random | None = None,
    combinations: int = 10,
) -> CheckResult:
    """Every nonzero vector at [p_i, p_j] is born at p_i and dies at p_j.

    Born at i means z ∉ Z_q(K_{i-1}) + B_q(K_i); on the diagonal, where z is
    already a boundary, it means z ∉ Z_q(K_{i-1}).
    """

    rng = rng or random.Random(0)
    n = filtration.n
    for interval, space in diagram.values.items():
        i = interval.birth
        earlier = cycles(filtration, q, i - 1)
        for z in _samples(space, rng, combinations):
            if interval.is_diagonal:
                if contains_vector(earlier, z):
                    return CheckResult.failed(f"{z.describe()} at {interval!r} already exists at step {i - 1}")
            elif contains_vector(subspace_sum(earlier, boundaries(filtration, q, i)), z):
                return CheckResult.failed(f"{z.describe()} at {interval!r} is not born at step {i}")
            if interval.is_ray:
                if contains_vector(boundaries(filtration, q, n), z):
                    return CheckResult.failed(f"{z.describe()} at {interval!r} dies by step {n}")
                continue
            j = int(interval.death)
            if not contains_vector(boundaries(filtration, q, j), z):
                return CheckResult.failed(f"{z.describe()} at {interval!r} is still alive at step {j}")
            if contains_vector(boundaries(filtration, q, j - 1), z):
                return CheckResult.failed(f"{z.describe()} at {interval!r} dies before step {j}")
    return CheckResult.passed()


def classical_diagram(diagram: GrassmannianDiagram, include_diagonal: bool = False) -> dict[Interval, int]:
    """Multiplicities read off the dimensions of a diagram."""

    return {
        I: W.dim for I, W in diagram.values.items() if include_diagonal or not I.is_diagonal
    }
