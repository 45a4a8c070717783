"""Prime powers, Fermat/Mersenne exclusions and cover-order factorizations."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import FrozenSet, List, Optional, Tuple

from sympy import factorint, integer_nthroot, isprime

from .knotpoly import TorusKnot

#: guard on ``classify_special``; p^(2^n) beyond this is far past table scale
N_MAX_CAP = 8


@dataclass(frozen=True)
class PrimePower:
    p: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"exponent must be >= 1, got {self.n}")
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def value(self) -> int:
        return self.p ** self.n

    def __str__(self):
        return f"{self.p}^{self.n}"


@dataclass(frozen=True)
class ExclusionSets:
    fermat_set: FrozenSet[int] = field(default_factory=frozenset)
    mersenne_set: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if len(self.mersenne_set) > 1:
            raise ValueError("mersenne_set holds at most one index")

    @property
    def excluded(self) -> FrozenSet[int]:
        return self.fermat_set | self.mersenne_set


def prime_power_decompose(N: int) -> Optional[PrimePower]:
    """Return ``(p, n)`` with ``p**n == N``, or None if ``N`` is not a prime power.

    Tries every root degree up to ``log2 N`` and tests the root for
    primality, so no full factorization of ``N`` is needed.
    """
    if N < 2:
        raise ValueError(f"prime_power_decompose needs N >= 2, got {N}")
    for n in range(N.bit_length(), 0, -1):
        root, exact = integer_nthroot(N, n)
        if exact and root >= 2 and isprime(root):
            return PrimePower(int(root), n)
    return None


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def is_fermat_prime(p: int) -> bool:
    """True if ``p = 2^(2^k) + 1`` is prime."""
    if p < 3 or not isprime(p):
        return False
    m = p - 1
    return is_power_of_two(m) and is_power_of_two(m.bit_length() - 1)


def classify_special(p: int, n_max: int = N_MAX_CAP) -> ExclusionSets:
    """Exclusion sets for the independence family ``{delta_{p^(2^n)}}``.

    ``fermat_set`` collects the ``n`` with ``p^(2^n) - 1`` a prime power,
    ``mersenne_set`` the (at most one) ``n <= n_max`` with ``p^(2^n) + 1`` a
    power of two.
    """
    if p % 2 == 0:
        raise ValueError(f"classify_special needs an odd prime, got {p}")
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if n_max > N_MAX_CAP:
        raise ValueError(f"n_max is capped at {N_MAX_CAP}, got {n_max}")
    if p == 3:
        fermat = frozenset({0, 1})
    elif is_fermat_prime(p):
        fermat = frozenset({0})
    else:
        fermat = frozenset()
    mersenne = frozenset(n for n in range(n_max + 1) if is_power_of_two(p ** (2 ** n) + 1))
    return ExclusionSets(fermat, mersenne)


@dataclass(frozen=True)
class CoverRoute:
    """How ``N`` sits relative to ``ab``: ``N = abm - 1``, ``abm + 1``, or neither."""

    kind: str  # "minus" | "plus" | "neither"
    m: Optional[int] = None

    def __str__(self):
        return self.kind if self.m is None else f"{self.kind}({self.m})"


def find_cover_factorization(k: TorusKnot, N: int) -> CoverRoute:
    ab = k.a * k.b
    if gcd(N, ab) != 1:
        raise ValueError(f"cover order {N} is not coprime to {ab}")
    if (N + 1) % ab == 0 and N + 1 >= ab:
        return CoverRoute("minus", (N + 1) // ab)
    if (N - 1) % ab == 0 and N - 1 >= ab:
        return CoverRoute("plus", (N - 1) // ab)
    return CoverRoute("neither")


def divisors(M: int) -> List[int]:
    divs = [1]
    for prime, exp in sorted(factorint(M).items()):
        divs = [d * prime ** e for d in divs for e in range(exp + 1)]
    return sorted(divs)


def coprime_split(M: int) -> List[Tuple[int, int, int]]:
    """All ``(a, b, k)`` with ``abk = M``, ``gcd(a, b) = 1`` and ``2 <= a < b``."""
    out = []
    divs = divisors(M)
    for a in divs:
        if a < 2:
            continue
        for b in divs:
            if b <= a or (M // a) % b or gcd(a, b) != 1:
                continue
            out.append((a, b, M // (a * b)))
    return sorted(out)
