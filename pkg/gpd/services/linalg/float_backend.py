"""Floating-point backend for performance experiments (numpy/scipy)."""
from __future__ import annotations

from fractions import Fraction
from typing import Any

import numpy as np
from scipy import linalg as sla

from .base import LinearAlgebraBackend, Rows

_DEFAULT_TOLERANCE = 1e-10


class FloatBackend(LinearAlgebraBackend):
    name = "float"
    exact = False

    def __init__(self, tolerance: float | None = None) -> None:
        super().__init__(tolerance or _DEFAULT_TOLERANCE)

    # ------------------------------------------------------------------
    # Scalars
    # ------------------------------------------------------------------

    def scalar(self, value: Any) -> float:
        if isinstance(value, str):
            return float(Fraction(value.strip()))
        return float(value)

    def is_zero(self, value: Any) -> bool:
        return abs(value) <= self.tolerance

    def to_fraction(self, value: Any) -> Fraction:
        return Fraction(value).limit_denominator(int(1 / self.tolerance))

    def format_scalar(self, value: Any) -> str:
        return f"{value:.12g}"

    # ------------------------------------------------------------------
    # Matrices
    # ------------------------------------------------------------------

    def rref(self, rows: Rows, ncols: int) -> list[list[float]]:
        if not rows or ncols == 0:
            return []
        matrix = np.asarray(rows, dtype=float).reshape(len(rows), ncols)
        rowspace = sla.orth(matrix.T, rcond=self.tolerance).T
        rank = rowspace.shape[0]
        if rank == 0:
            return []
        # left-most independent columns are the pivots of the echelon form
        pivots: list[int] = []
        for col in range(ncols):
            trial = pivots + [col]
            if np.linalg.matrix_rank(rowspace[:, trial], tol=self.tolerance * rank) == len(trial):
                pivots = trial
            if len(pivots) == rank:
                break
        reduced = np.linalg.solve(rowspace[:, pivots], rowspace)
        reduced[np.abs(reduced) <= self.tolerance] = 0.0
        return reduced.tolist()

    def nullspace(self, rows: Rows, ncols: int) -> list[list[float]]:
        if ncols == 0:
            return []
        if not rows:
            return np.eye(ncols).tolist()
        matrix = np.asarray(rows, dtype=float).reshape(len(rows), ncols)
        return sla.null_space(matrix, rcond=self.tolerance).T.tolist()

    def matmul(self, left: Rows, right: Rows, inner: int, ncols: int) -> list[list[float]]:
        if not left:
            return []
        if inner == 0 or ncols == 0:
            return np.zeros((len(left), ncols)).tolist()
        lhs = np.asarray(left, dtype=float).reshape(len(left), inner)
        rhs = np.asarray(right, dtype=float).reshape(inner, ncols)
        return (lhs @ rhs).tolist()

    def inverse(self, rows: Rows) -> list[list[float]]:
        if not rows:
            return []
        try:
            return np.linalg.inv(np.asarray(rows, dtype=float)).tolist()
        except np.linalg.LinAlgError as exc:
            raise ValueError("Matrix is singular") from exc

    def same_rows(self, left: Rows, right: Rows) -> bool:
        a, b = np.asarray(left, dtype=float), np.asarray(right, dtype=float)
        if a.shape != b.shape:
            return False
        return bool(np.allclose(a, b, rtol=self.tolerance, atol=self.tolerance))

    def is_positive_definite(self, rows: Rows) -> bool:
        if not rows:
            return True
        try:
            np.linalg.cholesky(np.asarray(rows, dtype=float))
        except np.linalg.LinAlgError:
            return False
        return True
