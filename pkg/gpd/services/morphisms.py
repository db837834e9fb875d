"""Morphisms of filtrations, space functions, diagrams and integer diagrams.

Each morphism carries a Galois connection between the posets of its source
and target; its cost is the distortion of the left adjoint. Validation is
exhaustive and returns a :class:`CheckResult` naming the first violation.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence, Union

from gpd.models import CheckResult, MorphismDocument
from gpd.services.complex import Filtration, same_final_complex
from gpd.services.invariants import SubspaceIntervalFunction, check_intersection_monotone, zb
from gpd.services.inversion import (
    GrassmannianDiagram,
    dim_diagram,
    mobius_equivalent,
    oi_times,
    pushforward_subspaces,
)
from gpd.services.poset import (
    Adjoint,
    Extended,
    GaloisConnection,
    IntegerIntervalFunction,
    Interval,
    IntervalOrder,
    bar,
    compose,
    distortion,
    ext_add,
    identity_connection,
    pushforward_int,
    verify_galois,
)
from gpd.services.subspace import Subspace, is_transverse, subspace_sum

logger = logging.getLogger(__name__)


class MorphismError(ValueError):
    """Raised for invalid morphisms and non-composable paths."""

    def __init__(self, message: str, detail: str | None = None) -> None:
        super().__init__(message if detail is None else f"{message}: {detail}")
        self.detail = detail


# ---------------------------------------------------------------------------
# Morphism types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FilMorphism:
    source: Filtration
    target: Filtration
    connection: GaloisConnection


@dataclass(frozen=True, eq=False)
class InnMorphism:
    source: SubspaceIntervalFunction
    target: SubspaceIntervalFunction
    connection: GaloisConnection


@dataclass(frozen=True, eq=False)
class GpdMorphism:
    """zeta holds subspaces on diagonal intervals of the target poset only."""

    source: GrassmannianDiagram
    target: GrassmannianDiagram
    connection: GaloisConnection
    zeta: Mapping[Interval, Subspace] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class ChargeMorphism:
    source: IntegerIntervalFunction
    target: IntegerIntervalFunction
    connection: GaloisConnection


Morphism = Union[FilMorphism, InnMorphism, GpdMorphism, ChargeMorphism]


class Direction(str, enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _check_posets(morphism: Morphism) -> CheckResult:
    connection = morphism.connection
    if connection.source != morphism.source.poset or connection.target != morphism.target.poset:
        return CheckResult.failed("Galois connection does not join the two posets")
    return verify_galois(connection)


def _validate_fil(morphism: FilMorphism) -> CheckResult:
    if not same_final_complex(morphism.source, morphism.target):
        return CheckResult.failed("filtrations do not end at the same complex")
    for q in morphism.target.poset.indices():
        p = morphism.connection.apply_right(q)
        if morphism.target.sublevel(q) != morphism.source.sublevel(p):
            return CheckResult.failed(f"G(q_{q}) differs from F(p_{p})")
    return CheckResult.passed()


def _validate_inn(morphism: InnMorphism) -> CheckResult:
    for function, name in ((morphism.source, "source"), (morphism.target, "target")):
        result = check_intersection_monotone(function)
        if not result:
            return CheckResult.failed(f"{name}: {result.detail}")
    right = bar(morphism.connection).right
    for interval in morphism.target.domain():
        if morphism.target[interval] != morphism.source[right[interval]]:
            return CheckResult.failed(f"values differ at {interval!r}")
    return CheckResult.passed()


def _validate_gpd(morphism: GpdMorphism) -> CheckResult:
    off_diagonal = [J for J in morphism.zeta if not J.is_diagonal]
    if off_diagonal:
        return CheckResult.failed(f"zeta is not supported on the diagonal at {off_diagonal[0]!r}")
    for diagram, name in ((morphism.source, "source"), (morphism.target, "target")):
        if not diagram.is_transverse():
            return CheckResult.failed(f"{name} is not a transverse family")
    target = morphism.target
    zeta = [W for W in morphism.zeta.values() if not W.is_zero()]
    if not is_transverse([zeta, list(target.values.values())]):
        return CheckResult.failed("zeta is not transverse to the target diagram")
    domain = target.domain()
    pushed = pushforward_subspaces(bar(morphism.connection).left, morphism.source.values, domain, target.ambient)
    zero = Subspace.zero(target.ambient)
    shifted = {J: subspace_sum(target[J], morphism.zeta.get(J, zero)) for J in domain}
    result = mobius_equivalent(pushed, shifted, IntervalOrder.PRODUCT, domain)
    if not result:
        return CheckResult.failed(f"pushforward is not Möbius equivalent to target + zeta: {result.detail}")
    return CheckResult.passed()


def _validate_charge(morphism: ChargeMorphism) -> CheckResult:
    left = bar(morphism.connection).left
    domain = morphism.target.poset.intervals(morphism.target.order)
    pushed = pushforward_int(left, morphism.source.values, domain)
    for interval in domain:
        if interval.is_diagonal:
            continue
        if pushed[interval] != morphism.target[interval]:
            return CheckResult.failed(
                f"charge at {interval!r} is {morphism.target[interval]}, fiber sum is {pushed[interval]}"
            )
    return CheckResult.passed()


_VALIDATORS = {
    FilMorphism: _validate_fil,
    InnMorphism: _validate_inn,
    GpdMorphism: _validate_gpd,
    ChargeMorphism: _validate_charge,
}


def validate(morphism: Morphism) -> CheckResult:
    result = _check_posets(morphism)
    if not result:
        return result
    return _VALIDATORS[type(morphism)](morphism)


def cost(morphism: Morphism) -> Extended:
    """Distortion of the left adjoint of a valid morphism."""

    result = validate(morphism)
    if not result:
        raise MorphismError(f"Invalid {type(morphism).__name__}", result.detail)
    value = distortion(morphism.connection, Adjoint.LEFT)
    logger.debug("%s cost %s", type(morphism).__name__, value)
    return value


# ---------------------------------------------------------------------------
# Functors
# ---------------------------------------------------------------------------


def _require_valid(morphism: Morphism) -> None:
    result = validate(morphism)
    if not result:
        raise MorphismError(f"Invalid {type(morphism).__name__}", result.detail)


def induce_inn(morphism: FilMorphism, q: int) -> InnMorphism:
    _require_valid(morphism)
    return InnMorphism(zb(morphism.source, q), zb(morphism.target, q), morphism.connection)


def induce_gpd(morphism: InnMorphism) -> GpdMorphism:
    _require_valid(morphism)
    return GpdMorphism(oi_times(morphism.source), oi_times(morphism.target), morphism.connection, {})


def induce_fnc(morphism: GpdMorphism) -> ChargeMorphism:
    _require_valid(morphism)
    return ChargeMorphism(dim_diagram(morphism.source), dim_diagram(morphism.target), morphism.connection)


def compose_gpd(first: GpdMorphism, second: GpdMorphism) -> GpdMorphism:
    """second ∘ first with zeta' = zeta_second + bar(left_second)_# zeta_first."""

    if first.target != second.source:
        raise MorphismError("Diagram morphisms are not composable")
    target = second.target
    diagonal = [J for J in target.domain() if J.is_diagonal]
    pushed = pushforward_subspaces(
        bar(second.connection).left, first.zeta, target.domain(), target.ambient
    )
    zero = Subspace.zero(target.ambient)
    zeta = {J: subspace_sum(second.zeta.get(J, zero), pushed[J]) for J in diagonal}
    zeta = {J: W for J, W in zeta.items() if not W.is_zero()}
    return GpdMorphism(first.source, target, compose(first.connection, second.connection), zeta)


_IDENTITY_TYPES = {
    Filtration: FilMorphism,
    SubspaceIntervalFunction: InnMorphism,
    GrassmannianDiagram: GpdMorphism,
    IntegerIntervalFunction: ChargeMorphism,
}


def identity_morphism(obj: Any) -> Morphism:
    kind = _IDENTITY_TYPES.get(type(obj))
    if kind is None:
        raise TypeError(f"No identity morphism for {type(obj).__name__}")
    return kind(obj, obj, identity_connection(obj.poset))


def fil_morphism_from_connection(filtration: Filtration, connection: GaloisConnection) -> FilMorphism:
    """The morphism F -> F ∘ right; a simplex entering at p enters at left(p)."""

    if connection.source != filtration.poset:
        raise MorphismError("Galois connection does not start at the filtration's poset")
    top = connection.apply_right(connection.target.n) if connection.target.n else 0
    if filtration.sublevel(top) != filtration.complex:
        raise MorphismError("F ∘ right does not reach the final complex")
    entry = {s: connection.apply_left(e) for s, e in filtration.entry.items()}
    return FilMorphism(filtration, filtration.with_poset(connection.target, entry), connection)


# ---------------------------------------------------------------------------
# Paths and serialization
# ---------------------------------------------------------------------------


def _same(a: Any, b: Any) -> bool:
    return a is b or a == b


def path_cost(path: Sequence[tuple[Morphism, Direction]]) -> Extended:
    """Sum of the member costs; an upper bound on the edit distance."""

    total: Extended = Fraction(0)
    current = None
    for k, (morphism, direction) in enumerate(path):
        start, end = (
            (morphism.source, morphism.target)
            if direction is Direction.FORWARD
            else (morphism.target, morphism.source)
        )
        if current is not None and not _same(current, start):
            raise MorphismError(f"Path step {k} does not start where step {k - 1} ends")
        total = ext_add(total, cost(morphism))
        current = end
    return total


def to_document(morphism: Morphism) -> MorphismDocument:
    connection = morphism.connection
    zeta = None
    if isinstance(morphism, GpdMorphism) and morphism.zeta:
        poset = connection.target
        zeta = {str(poset.grade(J.birth)): W.to_record() for J, W in morphism.zeta.items()}
    value = distortion(connection, Adjoint.LEFT)
    return MorphismDocument(
        left=list(connection.left),
        right=list(connection.right),
        zeta=zeta,
        cost=str(value),
    )
