from __future__ import annotations

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Sequence

Rows = Sequence[Sequence[Any]]


class LinearAlgebraBackend(ABC):
    """Abstract interface for the scalar field and the dense matrix kernels.

    Matrices cross this interface as row-major lists of scalars. Shapes are
    passed explicitly wherever a side may be empty.
    """

    name: str = "abstract"
    exact: bool = True

    def __init__(self, tolerance: float | None = None) -> None:
        self.tolerance = tolerance

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearAlgebraBackend):
            return NotImplemented
        return (self.name, self.tolerance) == (other.name, other.tolerance)

    def __hash__(self) -> int:
        return hash((self.name, self.tolerance))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(tolerance={self.tolerance!r})"

    # ------------------------------------------------------------------
    # Scalars
    # ------------------------------------------------------------------

    @abstractmethod
    def scalar(self, value: Any) -> Any:
        """Coerce an int, Fraction, decimal string or backend scalar."""

    @abstractmethod
    def is_zero(self, value: Any) -> bool:
        """Zero test (exact or within tolerance)."""

    @abstractmethod
    def to_fraction(self, value: Any) -> Fraction:
        """Return the scalar as a Fraction (rounded for inexact backends)."""

    @abstractmethod
    def format_scalar(self, value: Any) -> str:
        """Render a scalar for JSON/TSV output."""

    def zero(self) -> Any:
        return self.scalar(0)

    def one(self) -> Any:
        return self.scalar(1)

    # ------------------------------------------------------------------
    # Matrices
    # ------------------------------------------------------------------

    @abstractmethod
    def rref(self, rows: Rows, ncols: int) -> list[list[Any]]:
        """Nonzero rows of the reduced row-echelon form of *rows*.

        Returns
        -------
        list[list[Any]]
            rank-many rows, pivots normalised to one, zeros above and below
        """

    @abstractmethod
    def nullspace(self, rows: Rows, ncols: int) -> list[list[Any]]:
        """Basis of {x : A x = 0} for the ``len(rows) x ncols`` matrix A.

        Returns
        -------
        list[list[Any]]
            basis vectors, each of length *ncols*
        """

    @abstractmethod
    def matmul(self, left: Rows, right: Rows, inner: int, ncols: int) -> list[list[Any]]:
        """Product of a ``len(left) x inner`` and an ``inner x ncols`` matrix."""

    @abstractmethod
    def inverse(self, rows: Rows) -> list[list[Any]]:
        """Inverse of a square non-singular matrix."""

    @abstractmethod
    def same_rows(self, left: Rows, right: Rows) -> bool:
        """Entry-wise equality of two canonical matrices."""

    @abstractmethod
    def is_positive_definite(self, rows: Rows) -> bool:
        """True iff the symmetric matrix *rows* is positive definite."""
