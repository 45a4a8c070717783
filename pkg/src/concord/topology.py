"""Naming the three-manifolds that arise as surgeries and branched covers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Tuple, Union

from .knotpoly import TorusKnot, TwistKnot


class NotCoprime(ValueError):
    """Cover order shares a factor with the knot parameters."""


@dataclass(frozen=True)
class BrieskornTriple:
    """Pairwise coprime ``a1 < a2 < a3``; ``oriented`` marks the link orientation."""

    a1: int
    a2: int
    a3: int
    oriented: bool = True

    def __post_init__(self):
        vals = sorted((self.a1, self.a2, self.a3))
        if vals[0] < 2:
            raise ValueError(f"Brieskorn entries must be >= 2, got {tuple(vals)}")
        x, y, z = vals
        if gcd(x, y) != 1 or gcd(x, z) != 1 or gcd(y, z) != 1:
            raise ValueError(f"Brieskorn entries must be pairwise coprime, got {tuple(vals)}")
        object.__setattr__(self, "a1", x)
        object.__setattr__(self, "a2", y)
        object.__setattr__(self, "a3", z)

    @property
    def values(self) -> Tuple[int, int, int]:
        return (self.a1, self.a2, self.a3)

    def __str__(self):
        return f"Sigma({self.a1},{self.a2},{self.a3})"


@dataclass(frozen=True)
class SurgeryDescription:
    knot: Union[TorusKnot, TwistKnot]
    framing: Fraction

    def __post_init__(self):
        object.__setattr__(self, "framing", Fraction(self.framing))

    def __str__(self):
        f = self.framing
        fs = f"{f.numerator:+d}" if f.denominator == 1 else f"{f.numerator:+d}/{f.denominator}"
        return f"S3_{{{fs}}}({self.knot})"


# -- manifold identifications -------------------------------------------------


@dataclass(frozen=True)
class S3:
    def __str__(self):
        return "S3"


@dataclass(frozen=True)
class LensSpace:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("use S3 for L(1, q)")
        if not 0 < self.q < self.p or gcd(self.p, self.q) != 1:
            raise ValueError(f"invalid lens space parameters L({self.p},{self.q})")

    def __str__(self):
        return f"L({self.p},{self.q})"


@dataclass(frozen=True)
class ConnectedSumLens:
    a: int
    b: int

    def __str__(self):
        return f"L({self.a},{self.b})#L({self.b},{self.a})"


@dataclass(frozen=True)
class SeifertThreeFiber:
    x1: int
    x2: int
    x3: int

    @property
    def multiplicities(self):
        return tuple(sorted((self.x1, self.x2, self.x3)))

    def __str__(self):
        return f"S({self.x1},{self.x2},{self.x3})"


@dataclass(frozen=True)
class Brieskorn:
    triple: BrieskornTriple
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __str__(self):
        return ("" if self.sign == 1 else "-") + str(self.triple)


ManifoldId = Union[S3, LensSpace, ConnectedSumLens, SeifertThreeFiber, Brieskorn, SurgeryDescription]


def moser_classify(k: TorusKnot, framing) -> ManifoldId:
    """Moser's description of ``p/q`` surgery on ``T(a, b)``."""
    f = Fraction(framing)
    p, q = f.numerator, f.denominator
    a, b = k.a, k.b
    e = abs(a * b * q - p)
    if e == 1:
        if abs(p) == 1:
            return S3()
        return LensSpace(abs(p), (q * b * b) % abs(p))
    if e == 0:
        return ConnectedSumLens(a, b)
    return SeifertThreeFiber(a, b, e)


def identify_branched_cover(k: TorusKnot, N: int) -> BrieskornTriple:
    """The ``N``-fold cyclic branched cover of ``T(a, b)`` is ``Sigma(a, b, N)``."""
    if k.is_trivial:
        raise ValueError("branched covers of the unknot are S3")
    if N < 2:
        raise ValueError(f"cover order must be >= 2, got {N}")
    if gcd(N, k.a * k.b) != 1:
        raise NotCoprime(f"cover order {N} is not coprime to {k.a * k.b}")
    return BrieskornTriple(k.a, k.b, N)


def surgery_to_brieskorn(k: TorusKnot, framing) -> Tuple[BrieskornTriple, int]:
    """``+1/n`` and ``-1/n`` surgery give ``-Sigma(a, b, abn -+ 1)``."""
    f = Fraction(framing)
    if abs(f.numerator) != 1:
        raise ValueError(f"framing must be +-1/n, got {f}")
    n = f.denominator
    third = k.a * k.b * n - f.numerator
    if k.is_trivial or third <= 1:
        raise ValueError(f"degenerate Brieskorn triple ({k.a},{k.b},{third})")
    return BrieskornTriple(k.a, k.b, third), -1


def twist_surgery_description(N: int) -> SurgeryDescription:
    """Surgery picture of the ``2^n``-fold branched cover of the right-handed trefoil."""
    if N < 2 or N & (N - 1):
        raise ValueError(f"expected a power of two >= 2, got {N}")
    n = N.bit_length() - 1
    if n % 2 == 0:
        m, rem = divmod(N - 1, 3)
        framing = -3
    else:
        m, rem = divmod(N - 2, 3)
        framing = 3
    assert rem == 0, f"2^{n} fails the divisibility by 3"
    return SurgeryDescription(TwistKnot(m), Fraction(framing))
