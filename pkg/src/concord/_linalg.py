"""Exact integer/rational matrix routines for small symmetric matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination; exact for integer input."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def symmetric_pivots(m: Sequence[Sequence[int]]) -> List[Fraction]:
    """Pivots of symmetric Gaussian elimination without row exchanges.

    Elimination stops at the first zero pivot, which is returned as the
    last entry; a symmetric matrix is definite exactly when all ``n``
    pivots exist and share a sign.
    """
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    pivots = []
    for k in range(n):
        piv = a[k][k]
        pivots.append(piv)
        if piv == 0:
            break
        for i in range(k + 1, n):
            if a[i][k] == 0:
                continue
            f = a[i][k] / piv
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return pivots


def is_negative_definite(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    piv = symmetric_pivots(m)
    return len(piv) == n and all(p < 0 for p in piv)


def inverse(m: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def adjugate(m: Sequence[Sequence[int]]) -> Tuple[Matrix, int]:
    """Return ``(adj, det)`` with ``m @ adj == det * I``, all integers."""
    det = determinant(m)
    if det == 0:
        raise ZeroDivisionError("matrix is singular")
    inv = inverse(m)
    adj = []
    for row in inv:
        out = []
        for x in row:
            v = x * det
            assert v.denominator == 1
            out.append(int(v))
        adj.append(out)
    return adj, det
