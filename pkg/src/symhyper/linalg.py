"""Exact linear algebra over the rationals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class SolveResult:
    consistent: bool
    rank: int
    solution: Optional[list[Fraction]]  # None unless consistent and full column rank
    inconsistent_row: Optional[int] = None

    @property
    def unique(self) -> bool:
        return self.solution is not None


def _rref(M: list[list[Fraction]], ncols: int) -> tuple[list[int], list[int]]:
    """Reduce ``M`` in place over its first ``ncols`` columns; returns ``(pivots, origin)``."""
    origin = list(range(len(M)))
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == len(M):
            break
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        origin[r], origin[piv] = origin[piv], origin[r]
        inv = 1 / M[r][col]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    return pivots, origin


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> SolveResult:
    """Solve an (over)determined system ``rows @ x = rhs`` by Gauss-Jordan elimination."""
    if len(rows) != len(rhs):
        raise ValueError("row count and right-hand side length differ")
    ncols = len(rows[0]) if rows else 0
    M = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots, origin = _rref(M, ncols)
    r = len(pivots)
    for i in range(r, len(M)):
        if M[i][ncols] != 0:
            return SolveResult(False, r, None, origin[i])
    if r < ncols:
        return SolveResult(True, r, None)
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = M[i][ncols]
    return SolveResult(True, r, x)


def nullspace(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    ncols = len(rows[0]) if rows else 0
    M = [[Fraction(v) for v in r] for r in rows]
    pivots, _ = _rref(M, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -M[i][free]
        basis.append(v)
    return basis


def det_bareiss(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    # clear denominators so the elimination runs over the integers
    den = 1
    for row in matrix:
        for v in row:
            d = Fraction(v).denominator
            den = den * d // math.gcd(den, d)
    M = [[int(Fraction(v) * den) for v in row] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return Fraction(sign * M[n - 1][n - 1], den**n)

