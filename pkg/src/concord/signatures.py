"""Tristram-Levine signatures of torus knots.

The Seifert matrix comes from Seifert's algorithm on the closed positive
braid ``(s_1 s_2 ... s_{a-1})^b``: one disk per strand, one half-twisted
band per crossing. Consecutive bands of the same generator bound a cycle,
giving ``(a-1)(b-1)`` cycles ordered by generator, then by position.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import List, Tuple

import numpy as np

from .knotpoly import TorusKnot


class EigenvalueNearZero(ArithmeticError):
    """The Hermitian form has an eigenvalue too close to 0 to certify its sign."""


@dataclass(frozen=True)
class UnitComplex:
    """The root of unity ``exp(2 pi i j / N)``."""

    j: int
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"order must be positive, got {self.N}")
        if not 0 <= self.j < self.N:
            raise ValueError(f"need 0 <= j < N, got j={self.j}, N={self.N}")

    @property
    def is_one(self) -> bool:
        return self.j == 0

    def conjugate(self) -> "UnitComplex":
        return UnitComplex((-self.j) % self.N, self.N)

    def __complex__(self):
        g = gcd(self.j, self.N)
        return cmath.exp(2j * cmath.pi * (self.j // g) / (self.N // g))


SeifertMatrix = Tuple[Tuple[int, ...], ...]


@lru_cache(maxsize=256)
def seifert_matrix(k: TorusKnot) -> SeifertMatrix:
    """Seifert matrix of ``T(a, b)`` as the closure of ``(s_1 ... s_{a-1})^b``."""
    a, b = k.a, k.b
    word = [i for _ in range(b) for i in range(1, a)]
    pos = {i: [p for p, g in enumerate(word) if g == i] for i in range(1, a)}
    cycles = [(i, c) for i in range(1, a) for c in range(len(pos[i]) - 1)]
    index = {cyc: n for n, cyc in enumerate(cycles)}
    size = len(cycles)
    V = [[0] * size for _ in range(size)]
    for (i, c), r in index.items():
        V[r][r] = -1
        if (i, c + 1) in index:
            V[r][index[(i, c + 1)]] = 1
        if i + 1 == a:
            continue
        lo, hi = pos[i][c], pos[i][c + 1]
        nxt = pos[i + 1]
        for l in range(len(nxt) - 1):
            s = index[(i + 1, l)]
            if lo < nxt[l] < hi < nxt[l + 1]:
                V[s][r] = 1
            elif nxt[l] < lo < nxt[l + 1] < hi:
                V[s][r] = -1
    assert size == (a - 1) * (b - 1)
    return tuple(tuple(row) for row in V)


def _certified_signature(H: np.ndarray) -> int:
    n = H.shape[0]
    if n == 0:
        return 0
    ev = np.linalg.eigvalsh(H)
    # Weyl: backward error of eigvalsh plus rounding in the entries
    margin = 64 * n * np.finfo(float).eps * max(1.0, np.linalg.norm(H, "fro"))
    if np.min(np.abs(ev)) <= margin:
        raise EigenvalueNearZero(f"smallest |eigenvalue| {np.min(np.abs(ev)):.3e} within margin {margin:.3e}")
    return int(np.sum(ev > 0) - np.sum(ev < 0))


def tl_signature_torus(k: TorusKnot, w: UnitComplex) -> int:
    """Signature of ``(1 - w) V + (1 - conj w) V^T``."""
    if w.is_one or k.is_trivial:
        return 0
    V = np.array(seifert_matrix(k), dtype=float)
    z = complex(w)
    H = (1 - z) * V + (1 - z.conjugate()) * V.T
    return _certified_signature(H)


def signature(k: TorusKnot) -> int:
    """Classical (Murasugi) signature, ``w = -1``."""
    return tl_signature_torus(k, UnitComplex(1, 2))


def cover_signature(k: TorusKnot, N: int) -> int:
    """Sum of ``sigma_{w^i}(K)`` over all ``N``-th roots of unity."""
    if N < 1:
        raise ValueError(f"cover order must be positive, got {N}")
    return sum(tl_signature_torus(k, UnitComplex(i, N)) for i in range(N))


def signature_profile(k: TorusKnot, N: int) -> List[int]:
    return [tl_signature_torus(k, UnitComplex(i, N)) for i in range(N)]
