"""Exact solving of integer linear systems ``A z = b`` over the rationals.

Elimination is fraction-free: rows stay integral (each row is divided by
the gcd of its entries after every update) and rationals only appear during
back substitution. Pivots are the first nonzero entry in fixed row/column
order, so results are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

__all__ = ["echelon", "solve", "rank", "in_column_span"]

Matrix = Sequence[Sequence[int]]


def _normalize(row: list[int]) -> list[int]:
    g = reduce(gcd, row, 0)
    if g > 1:
        return [x // g for x in row]
    return row


def echelon(rows: Matrix) -> tuple[list[list[int]], list[int]]:
    """Row echelon form (integer rows) and the pivot column of each row."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        a = m[r][c]
        for i in range(r + 1, len(m)):
            b = m[i][c]
            if b:
                m[i] = _normalize([a * x - b * y for x, y in zip(m[i], m[r])])
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Matrix) -> int:
    return len(echelon(rows)[1])


def solve(a: Matrix, b: Sequence[int]) -> list[Fraction] | None:
    """One rational solution of ``a z = b`` (free variables set to 0), or None."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if len(b) != nrows:
        raise ValueError("right-hand side length does not match the number of rows")
    aug = [list(a[i]) + [b[i]] for i in range(nrows)]
    ech, pivots = echelon(aug)
    if pivots and pivots[-1] == ncols:
        return None
    z = [Fraction(0)] * ncols
    for row, c in reversed(list(zip(ech, pivots))):
        acc = Fraction(row[ncols])
        for j in range(c + 1, ncols):
            if row[j]:
                acc -= row[j] * z[j]
        z[c] = acc / row[c]
    return z


def in_column_span(a: Matrix, b: Sequence[int]) -> bool:
    return solve(a, b) is not None
