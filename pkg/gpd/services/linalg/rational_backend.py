"""Exact backend: sympy ``DomainMatrix`` over the rational field ``QQ``."""
from __future__ import annotations

from fractions import Fraction
from typing import Any

from sympy import Matrix
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .base import LinearAlgebraBackend, Rows


class RationalBackend(LinearAlgebraBackend):
    name = "rational"
    exact = True

    def __init__(self, tolerance: float | None = None) -> None:
        # exact arithmetic has no use for a tolerance
        super().__init__(None)

    # ------------------------------------------------------------------
    # Scalars
    # ------------------------------------------------------------------

    def scalar(self, value: Any) -> Any:
        if isinstance(value, str):
            value = Fraction(value.strip())
        elif isinstance(value, float):
            value = Fraction(repr(value))
        try:
            return QQ(int(value.numerator), int(value.denominator))
        except AttributeError as exc:
            raise TypeError(f"Cannot read {value!r} as a rational scalar") from exc

    def is_zero(self, value: Any) -> bool:
        return not value

    def to_fraction(self, value: Any) -> Fraction:
        return Fraction(int(value.numerator), int(value.denominator))

    def format_scalar(self, value: Any) -> str:
        return str(self.to_fraction(value))

    # ------------------------------------------------------------------
    # Matrices
    # ------------------------------------------------------------------

    @staticmethod
    def _matrix(rows: Rows, ncols: int) -> DomainMatrix:
        return DomainMatrix([list(row) for row in rows], (len(rows), ncols), QQ)

    def rref(self, rows: Rows, ncols: int) -> list[list[Any]]:
        if not rows or ncols == 0:
            return []
        reduced, pivots = self._matrix(rows, ncols).rref()
        return reduced.to_list()[: len(pivots)]

    def nullspace(self, rows: Rows, ncols: int) -> list[list[Any]]:
        if ncols == 0:
            return []
        if not rows:
            return self._identity(ncols)
        return self._matrix(rows, ncols).nullspace().to_list()

    def matmul(self, left: Rows, right: Rows, inner: int, ncols: int) -> list[list[Any]]:
        if not left:
            return []
        if inner == 0 or ncols == 0:
            return [[QQ.zero] * ncols for _ in left]
        product = self._matrix(left, inner) * self._matrix(right, ncols)
        return product.to_list()

    def inverse(self, rows: Rows) -> list[list[Any]]:
        size = len(rows)
        if size == 0:
            return []
        try:
            return self._matrix(rows, size).inv().to_list()
        except DMNonInvertibleMatrixError as exc:
            raise ValueError("Matrix is singular") from exc

    def same_rows(self, left: Rows, right: Rows) -> bool:
        return [list(r) for r in left] == [list(r) for r in right]

    @staticmethod
    def _identity(size: int) -> list[list[Any]]:
        return [[QQ.one if r == c else QQ.zero for c in range(size)] for r in range(size)]

    def is_positive_definite(self, rows: Rows) -> bool:
        if not rows:
            return True
        return bool(Matrix([[QQ.to_sympy(x) for x in row] for row in rows]).is_positive_definite)
