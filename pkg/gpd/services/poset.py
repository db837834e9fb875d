"""Finite linear metric posets, their interval posets and Galois connections.

Elements of a poset with n grades are addressed by their 1-based index;
grades are only display and metric data. Intervals carry a death index or
the tagged :data:`INF` for rays, and ``a < INF`` for every finite index.
"""
from __future__ import annotations

import enum
import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence, Union

from sympy import Matrix

from gpd.models import CheckResult, PosetRecord

logger = logging.getLogger(__name__)


class Infinity(enum.Enum):
    """Tagged infinity used for ray deaths and extended metric values."""

    INF = "inf"

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"


INF = Infinity.INF

Extended = Union[Fraction, Infinity]


def parse_grade(value: Any) -> Fraction:
    """Read a grade exactly: ``"3/2"``, ``"0.1"``, ``2`` all work."""

    if isinstance(value, Fraction):
        return value
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Not a rational grade: {value!r}") from exc


def parse_extended(value: Any) -> Extended:
    if value is INF or str(value).strip().lower() in ("inf", "infinity", "∞"):
        return INF
    return parse_grade(value)


def format_extended(value: Extended) -> str:
    return "inf" if value is INF else str(value)


def ext_add(a: Extended, b: Extended) -> Extended:
    if a is INF or b is INF:
        return INF
    return a + b


def ext_leq(a: Extended, b: Extended) -> bool:
    if b is INF:
        return True
    if a is INF:
        return False
    return a <= b


def ext_max(values: Iterable[Extended]) -> Extended:
    best: Extended = Fraction(0)
    for value in values:
        if not ext_leq(value, best):
            best = value
    return best


def ext_abs_diff(a: Extended, b: Extended) -> Extended:
    """|a - b| with |inf - inf| = 0."""

    if a is INF and b is INF:
        return Fraction(0)
    if a is INF or b is INF:
        return INF
    return abs(a - b)


# ---------------------------------------------------------------------------
# Intervals
# ---------------------------------------------------------------------------


class IntervalOrder(str, enum.Enum):
    PRODUCT = "product"
    REVERSE_INCLUSION = "reverse-inclusion"


@functools.total_ordering
@dataclass(frozen=True)
class Interval:
    birth: int
    death: Union[int, Infinity]

    def __post_init__(self) -> None:
        if self.birth < 1:
            raise ValueError(f"Interval birth index must be >= 1, got {self.birth}")
        if self.death is not INF and self.death < self.birth:
            raise ValueError(f"Interval [{self.birth}, {self.death}] has death before birth")

    @property
    def is_ray(self) -> bool:
        return self.death is INF

    @property
    def is_diagonal(self) -> bool:
        return self.death == self.birth

    def death_rank(self, n: int) -> int:
        """Death index with INF read as n + 1."""

        return n + 1 if self.death is INF else int(self.death)

    def __lt__(self, other: "Interval") -> bool:  # rays sort after finite deaths
        return (self.birth, self._death_key()) < (other.birth, other._death_key())

    def _death_key(self) -> float:
        return float("inf") if self.death is INF else float(self.death)

    def __repr__(self) -> str:
        return f"[{self.birth}, {'INF)' if self.death is INF else str(self.death) + ']'}"


def closed(birth: int, death: int) -> Interval:
    return Interval(birth, death)


def ray(birth: int) -> Interval:
    return Interval(birth, INF)


def _death_leq(a: Union[int, Infinity], b: Union[int, Infinity]) -> bool:
    return ext_leq(a if a is INF else Fraction(a), b if b is INF else Fraction(b))


def leq(order: IntervalOrder, first: Interval, second: Interval) -> bool:
    """The product order or the reverse inclusion order on intervals."""

    if order is IntervalOrder.PRODUCT:
        return first.birth <= second.birth and _death_leq(first.death, second.death)
    if first.is_diagonal or second.is_diagonal:
        raise ValueError("Reverse inclusion order is only defined off the diagonal")
    # first ⊇ second
    return first.birth <= second.birth and _death_leq(second.death, first.death)


# ---------------------------------------------------------------------------
# Posets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearMetricPoset:
    """A finite chain p_1 < ... < p_n with an extended metric.

    Without an explicit metric, d(p_a, p_b) = |grade_a - grade_b|.
    """

    grades: tuple[Fraction, ...]
    metric: tuple[tuple[Extended, ...], ...] | None = None

    def __post_init__(self) -> None:
        grades = tuple(parse_grade(g) for g in self.grades)
        if any(b <= a for a, b in zip(grades, grades[1:])):
            raise ValueError("Poset grades must be strictly increasing")
        object.__setattr__(self, "grades", grades)
        if self.metric is not None:
            metric = tuple(tuple(parse_extended(x) for x in row) for row in self.metric)
            _validate_metric(metric, len(grades))
            object.__setattr__(self, "metric", metric)

    @classmethod
    def from_grades(cls, grades: Iterable[Any]) -> "LinearMetricPoset":
        return cls(tuple(parse_grade(g) for g in grades))

    @classmethod
    def chain(cls, n: int) -> "LinearMetricPoset":
        """The chain 1 < 2 < ... < n with grades equal to indices."""

        return cls(tuple(Fraction(k) for k in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.grades)

    def indices(self) -> range:
        return range(1, self.n + 1)

    def grade(self, index: int) -> Fraction:
        return self.grades[index - 1]

    def index_of(self, grade: Any) -> int:
        value = parse_grade(grade)
        try:
            return self.grades.index(value) + 1
        except ValueError as exc:
            raise ValueError(f"Grade {value} is not an element of the poset") from exc

    def distance(self, a: int, b: int) -> Extended:
        if self.metric is not None:
            return self.metric[a - 1][b - 1]
        return abs(self.grade(a) - self.grade(b))

    # ------------------------------------------------------------------
    # Intervals
    # ------------------------------------------------------------------

    def intervals(self, order: IntervalOrder = IntervalOrder.PRODUCT) -> list[Interval]:
        """Int(P) with rays; the reverse inclusion domain leaves out the diagonal."""

        skip_diagonal = order is IntervalOrder.REVERSE_INCLUSION
        result: list[Interval] = []
        for i in self.indices():
            start = i + 1 if skip_diagonal else i
            result.extend(Interval(i, j) for j in range(start, self.n + 1))
            result.append(Interval(i, INF))
        return result

    def interval_distance(self, first: Interval, second: Interval) -> Extended:
        return interval_distance(self, first, second)

    def format_interval(self, interval: Interval) -> tuple[str, str]:
        death = "inf" if interval.is_ray else str(self.grade(int(interval.death)))
        return str(self.grade(interval.birth)), death

    def interval_at(self, birth: Any, death: Any) -> Interval:
        """Interval from grade values; ``death`` may be ``"inf"``."""

        end = parse_extended(death)
        return Interval(self.index_of(birth), INF if end is INF else self.index_of(end))

    def to_record(self) -> PosetRecord:
        metric = None
        if self.metric is not None:
            metric = [[format_extended(x) for x in row] for row in self.metric]
        return PosetRecord(grades=[str(g) for g in self.grades], metric=metric)

    @classmethod
    def from_record(cls, record: PosetRecord) -> "LinearMetricPoset":
        metric = None
        if record.metric is not None:
            metric = tuple(tuple(parse_extended(x) for x in row) for row in record.metric)
        return cls(tuple(parse_grade(g) for g in record.grades), metric)


def _validate_metric(metric: tuple[tuple[Extended, ...], ...], n: int) -> None:
    if len(metric) != n or any(len(row) != n for row in metric):
        raise ValueError("Metric must be an n x n matrix")
    for a in range(n):
        for b in range(n):
            value = metric[a][b]
            if value is not INF and value < 0:
                raise ValueError("Metric values must be non-negative")
            if (a == b) != (value == 0):
                raise ValueError("Metric must vanish exactly on the diagonal")
            if value != metric[b][a]:
                raise ValueError("Metric must be symmetric")
            for c in range(n):
                if not ext_leq(value, ext_add(metric[a][c], metric[c][b])):
                    raise ValueError("Metric violates the triangle inequality")


def interval_distance(poset: LinearMetricPoset, first: Interval, second: Interval) -> Extended:
    """Max of the endpoint distances; d(inf, inf) = 0 and d(finite, inf) = inf."""

    birth = poset.distance(first.birth, second.birth)
    if first.is_ray and second.is_ray:
        death: Extended = Fraction(0)
    elif first.is_ray or second.is_ray:
        death = INF
    else:
        death = poset.distance(int(first.death), int(second.death))
    return ext_max([birth, death])


# ---------------------------------------------------------------------------
# Galois connections
# ---------------------------------------------------------------------------


class Adjoint(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class GaloisConnection:
    """left: source -> target and right: target -> source, by 1-based indices."""

    source: LinearMetricPoset
    target: LinearMetricPoset
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        if len(self.left) != self.source.n or len(self.right) != self.target.n:
            raise ValueError("Index maps must be total on source and target")
        if any(not 1 <= q <= self.target.n for q in self.left) or any(
            not 1 <= p <= self.source.n for p in self.right
        ):
            raise ValueError("Index maps must land inside the other poset")

    def apply_left(self, p: int) -> int:
        return self.left[p - 1]

    def apply_right(self, q: int) -> int:
        return self.right[q - 1]

    def left_map(self) -> dict[int, int]:
        return {p: self.apply_left(p) for p in self.source.indices()}

    def right_map(self) -> dict[int, int]:
        return {q: self.apply_right(q) for q in self.target.indices()}


@dataclass(frozen=True)
class IntervalGaloisConnection:
    """The induced connection between interval posets under the product order."""

    source: LinearMetricPoset
    target: LinearMetricPoset
    left: Mapping[Interval, Interval] = field(hash=False)
    right: Mapping[Interval, Interval] = field(hash=False)


def _is_monotone(values: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


def verify_galois(connection: GaloisConnection | IntervalGaloisConnection) -> CheckResult:
    """Exhaustive adjunction check; reports the first failing pair."""

    if isinstance(connection, IntervalGaloisConnection):
        return _verify_interval_galois(connection)
    if not _is_monotone(connection.left):
        return CheckResult.failed("left adjoint is not monotone")
    if not _is_monotone(connection.right):
        return CheckResult.failed("right adjoint is not monotone")
    for p in connection.source.indices():
        for q in connection.target.indices():
            if (connection.apply_left(p) <= q) != (p <= connection.apply_right(q)):
                logger.debug("Adjunction fails at p=%d q=%d", p, q)
                return CheckResult.failed(f"adjunction fails at p={p}, q={q}")
    return CheckResult.passed()


def _verify_interval_galois(connection: IntervalGaloisConnection) -> CheckResult:
    order = IntervalOrder.PRODUCT
    sources = connection.source.intervals(order)
    targets = connection.target.intervals(order)
    for a in sources:
        for b in sources:
            if leq(order, a, b) and not leq(order, connection.left[a], connection.left[b]):
                return CheckResult.failed(f"induced left adjoint is not monotone at {a}, {b}")
    for a in targets:
        for b in targets:
            if leq(order, a, b) and not leq(order, connection.right[a], connection.right[b]):
                return CheckResult.failed(f"induced right adjoint is not monotone at {a}, {b}")
    for p in sources:
        for q in targets:
            if leq(order, connection.left[p], q) != leq(order, p, connection.right[q]):
                return CheckResult.failed(f"induced adjunction fails at {p}, {q}")
    return CheckResult.passed()


def distortion(connection: GaloisConnection | IntervalGaloisConnection, which: Adjoint = Adjoint.LEFT) -> Extended:
    """max |d(a, b) - d(f a, f b)| over pairs of the chosen adjoint's domain."""

    if isinstance(connection, IntervalGaloisConnection):
        if which is Adjoint.LEFT:
            domain, codomain, mapping = connection.source, connection.target, connection.left
        else:
            domain, codomain, mapping = connection.target, connection.source, connection.right
        elements = domain.intervals(IntervalOrder.PRODUCT)
        return ext_max(
            ext_abs_diff(
                interval_distance(domain, a, b),
                interval_distance(codomain, mapping[a], mapping[b]),
            )
            for a in elements
            for b in elements
        )
    if which is Adjoint.LEFT:
        domain, codomain, apply = connection.source, connection.target, connection.apply_left
    else:
        domain, codomain, apply = connection.target, connection.source, connection.apply_right
    return ext_max(
        ext_abs_diff(domain.distance(a, b), codomain.distance(apply(a), apply(b)))
        for a in domain.indices()
        for b in domain.indices()
    )


def _bar_map(apply: Callable[[int], int], interval: Interval) -> Interval:
    death = INF if interval.is_ray else apply(int(interval.death))
    return Interval(apply(interval.birth), death)


def bar(connection: GaloisConnection) -> IntervalGaloisConnection:
    """Act component-wise on intervals, fixing INF."""

    order = IntervalOrder.PRODUCT
    left = {I: _bar_map(connection.apply_left, I) for I in connection.source.intervals(order)}
    right = {J: _bar_map(connection.apply_right, J) for J in connection.target.intervals(order)}
    return IntervalGaloisConnection(connection.source, connection.target, left, right)


def compose(first: GaloisConnection, second: GaloisConnection) -> GaloisConnection:
    """second ∘ first, for first: P -> Q and second: Q -> R."""

    if first.target != second.source:
        raise ValueError("Galois connections are not composable")
    left = tuple(second.apply_left(first.apply_left(p)) for p in first.source.indices())
    right = tuple(first.apply_right(second.apply_right(r)) for r in second.target.indices())
    return GaloisConnection(first.source, second.target, left, right)


def identity_connection(poset: LinearMetricPoset) -> GaloisConnection:
    identity = tuple(poset.indices())
    return GaloisConnection(poset, poset, identity, identity)


# ---------------------------------------------------------------------------
# Integer-valued functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegerIntervalFunction:
    """An integer on every interval of the order's domain."""

    poset: LinearMetricPoset
    order: IntervalOrder
    values: Mapping[Interval, int] = field(hash=False)

    def __post_init__(self) -> None:
        domain = self.poset.intervals(self.order)
        missing = [I for I in domain if I not in self.values]
        if missing:
            raise ValueError(f"Integer interval function is missing {missing[0]!r}")
        object.__setattr__(self, "values", {I: int(self.values[I]) for I in domain})

    def __getitem__(self, interval: Interval) -> int:
        return self.values[interval]

    def support(self) -> dict[Interval, int]:
        return {I: v for I, v in self.values.items() if v != 0}

    def off_diagonal(self) -> dict[Interval, int]:
        return {I: v for I, v in self.support().items() if not I.is_diagonal}

    @classmethod
    def from_callable(
        cls, poset: LinearMetricPoset, order: IntervalOrder, value: Callable[[Interval], int]
    ) -> "IntegerIntervalFunction":
        return cls(poset, order, {I: value(I) for I in poset.intervals(order)})


def pushforward_int(
    mapping: Mapping[Hashable, Hashable], m: Mapping[Hashable, int], codomain: Iterable[Hashable]
) -> dict[Hashable, int]:
    """f_# m(q) = sum of m over the fiber of q; an empty fiber gives 0."""

    result = {q: 0 for q in codomain}
    for p, value in m.items():
        target = mapping[p]
        if target not in result:
            raise ValueError(f"{target!r} is not in the codomain")
        result[target] += value
    return result


def pullback_int(
    mapping: Mapping[Hashable, Hashable], m: Mapping[Hashable, int], domain: Iterable[Hashable]
) -> dict[Hashable, int]:
    """f^# m(p) = m(f(p))."""

    return {p: m[mapping[p]] for p in domain}


def mobius_invert_points(values: Sequence[int]) -> list[int]:
    """Möbius inversion over a chain: ∂m(p_i) = m(p_i) - m(p_{i-1})."""

    previous = 0
    result = []
    for value in values:
        result.append(value - previous)
        previous = value
    return result


def mobius_terms(order: IntervalOrder, interval: Interval, n: int) -> list[tuple[int, Interval]]:
    """Signed terms of the closed-form Möbius inverse at *interval*.

    Terms whose birth index is 0 are dropped (m[p_0, -] = 0) and death n + 1
    stands for INF.
    """

    i = interval.birth

    def at(birth: int, death: int) -> Interval | None:
        if birth < 1:
            return None
        return Interval(birth, INF if death == n + 1 else death)

    if order is IntervalOrder.PRODUCT:
        if interval.is_diagonal:
            raw = [(1, at(i, i)), (-1, at(i - 1, i))]
        elif interval.is_ray:
            raw = [(1, at(i, n + 1)), (-1, at(i, n)), (1, at(i - 1, n)), (-1, at(i - 1, n + 1))]
        else:
            j = int(interval.death)
            raw = [(1, at(i, j)), (-1, at(i, j - 1)), (1, at(i - 1, j - 1)), (-1, at(i - 1, j))]
    else:
        if interval.is_diagonal:
            raise ValueError("Reverse inclusion order is only defined off the diagonal")
        if interval.is_ray:
            raw = [(1, at(i, n + 1)), (-1, at(i - 1, n + 1))]
        else:
            j = int(interval.death)
            raw = [(1, at(i, j)), (-1, at(i, j + 1)), (1, at(i - 1, j + 1)), (-1, at(i - 1, j))]
    # [p_0, -] terms vanish
    return [(sign, term) for sign, term in raw if term is not None]


def mobius_invert_int(m: IntegerIntervalFunction, order: IntervalOrder | None = None) -> IntegerIntervalFunction:
    """Closed-form Möbius inverse over the product or reverse inclusion order."""

    order = order or m.order
    if order is not m.order:
        raise ValueError(f"Function is defined for the {m.order.value} order, not {order.value}")
    n = m.poset.n
    inverse = {
        I: sum(sign * m.values[term] for sign, term in mobius_terms(order, I, n))
        for I in m.poset.intervals(order)
    }
    return IntegerIntervalFunction(m.poset, order, inverse)


def mobius_invert_by_zeta(
    elements: Sequence[Hashable],
    leq_fn: Callable[[Hashable, Hashable], bool],
    m: Mapping[Hashable, int],
) -> dict[Hashable, int]:
    """Generic inversion through the inverse of the zeta matrix."""

    size = len(elements)
    if size == 0:
        return {}
    zeta = Matrix(size, size, lambda a, b: 1 if leq_fn(elements[a], elements[b]) else 0)
    row = Matrix(1, size, [m[e] for e in elements])
    inverse = row * zeta.inv()
    return {e: int(inverse[0, k]) for k, e in enumerate(elements)}


def down_set_total(m: Mapping[Interval, int], order: IntervalOrder, interval: Interval) -> int:
    return sum(value for I, value in m.items() if leq(order, I, interval))
