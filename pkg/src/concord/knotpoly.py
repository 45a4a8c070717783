"""Integer Laurent polynomials and the knot polynomials built from them.

Only the two knot families that matter here are covered: torus knots
``T(a, b)`` and the genus-one twist knots ``T_m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, Mapping, Tuple


class LaurentPolynomial:
    """Immutable Laurent polynomial with integer coefficients.

    Coefficients are stored sparsely as ``{exponent: coefficient}`` with
    zeros pruned, so two equal polynomials always compare equal
    structurally.

    >>> t = LaurentPolynomial.monomial(1)
    >>> (t - 1 + t ** -1)[1]
    1
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (coeffs or {}).items():
            if c:
                clean[int(e)] = int(c)
        self._coeffs: Dict[int, int] = clean
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls({0: c})

    @classmethod
    def _coerce(cls, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return cls.constant(other)
        return NotImplemented

    # -- container protocol -------------------------------------------------
    def __getitem__(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def items(self) -> Iterable[Tuple[int, int]]:
        return sorted(self._coeffs.items())

    def exponents(self):
        return sorted(self._coeffs)

    def coefficients(self):
        return [c for _, c in self.items()]

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def min_degree(self) -> int:
        return min(self._coeffs) if self._coeffs else 0

    @property
    def max_degree(self) -> int:
        return max(self._coeffs) if self._coeffs else 0

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._coeffs) != 1:
                raise ValueError("only monomials can be inverted")
            ((e, c),) = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError("monomial is not a unit over the integers")
            return LaurentPolynomial({e * n: c ** -n})
        result = LaurentPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``t**k``."""
        return LaurentPolynomial({e + k: c for e, c in self._coeffs.items()})

    def divmod(self, divisor: "LaurentPolynomial"):
        """Long division treating both operands as ordinary polynomials.

        Both operands must have only nonnegative exponents and the divisor
        must have leading coefficient +1 or -1, so the quotient stays
        integral.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.min_degree < 0 or divisor.min_degree < 0:
            raise ValueError("divmod expects ordinary polynomials")
        lead_e = divisor.max_degree
        lead_c = divisor[lead_e]
        if lead_c not in (1, -1):
            raise ValueError("divisor must be monic up to sign")
        rem = dict(self._coeffs)
        quot: Dict[int, int] = {}
        while rem:
            top = max(rem)
            if top < lead_e:
                break
            c = rem[top] * lead_c
            shift = top - lead_e
            quot[shift] = c
            for e, dc in divisor._coeffs.items():
                v = rem.get(e + shift, 0) - c * dc
                if v:
                    rem[e + shift] = v
                else:
                    rem.pop(e + shift, None)
        return LaurentPolynomial(quot), LaurentPolynomial(rem)

    def __call__(self, x):
        """Evaluate at ``x`` (int, Fraction or complex)."""
        return sum(c * x ** e for e, c in self._coeffs.items())

    def derivative(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e - 1: e * c for e, c in self._coeffs.items() if e})

    def conjugate(self) -> "LaurentPolynomial":
        """Substitute ``t -> 1/t``."""
        return LaurentPolynomial({-e: c for e, c in self._coeffs.items()})

    def is_symmetric(self) -> bool:
        return all(self[-e] == c for e, c in self._coeffs.items())

    # -- misc ---------------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __repr__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for e, c in sorted(self._coeffs.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                power = "t" if e == 1 else f"t^{e}"
                mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, mono))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in terms[1:]:
            out += f" {sign} {mono}"
        return out


# kept short for callers that think of these as "Alexander polynomials"
IntegerLaurentPolynomial = LaurentPolynomial

T = LaurentPolynomial.monomial(1)


@dataclass(frozen=True)
class TorusKnot:
    """The ``(a, b)`` torus knot, stored with ``a <= b``."""

    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if a < 1 or b < 1:
            raise ValueError(f"torus knot parameters must be positive, got ({a}, {b})")
        if gcd(a, b) != 1:
            raise ValueError(f"torus knot parameters must be coprime, got ({a}, {b})")
        if a > b:
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)

    @property
    def is_trivial(self) -> bool:
        return self.a == 1

    @property
    def genus(self) -> int:
        return (self.a - 1) * (self.b - 1) // 2

    def __str__(self):
        return f"T({self.a},{self.b})"


@dataclass(frozen=True)
class TwistKnot:
    """Twist knot with ``m`` half twists; ``m = 0`` is the unknot."""

    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"twist knot needs m >= 0, got {self.m}")

    def __str__(self):
        return f"Twist_{self.m}"


def alexander_torus(k: TorusKnot) -> LaurentPolynomial:
    """Symmetrized Alexander polynomial of a torus knot.

    Computed as ``(t^ab - 1)(t - 1) / ((t^a - 1)(t^b - 1))`` by exact
    integer long division, then shifted by ``t^-g``.
    """
    a, b = k.a, k.b
    if a == 1:
        return LaurentPolynomial.constant(1)
    num = (T ** (a * b) - 1) * (T - 1)
    den = (T ** a - 1) * (T ** b - 1)
    quot, rem = num.divmod(den)
    if not rem.is_zero():
        raise ArithmeticError(f"nonzero remainder dividing out {k}: {rem!r}")
    return quot.shift(-k.genus)


def positive_part(p: LaurentPolynomial) -> LaurentPolynomial:
    """The ``f`` in ``p = a0 + f(t) + f(1/t)``."""
    return LaurentPolynomial({e: c for e, c in p.items() if e > 0})


def torsion_t0(p: LaurentPolynomial) -> int:
    """Zeroth torsion coefficient ``sum_{j>=1} j * a_j``."""
    if not p.is_symmetric():
        raise ValueError(f"torsion coefficient needs a symmetric polynomial, got {p!r}")
    return sum(e * c for e, c in p.items() if e > 0)


def torus_t0(k: TorusKnot) -> int:
    """``t0(T(a, b))`` without expanding the Alexander polynomial.

    Counts the gaps of the numerical semigroup generated by ``a`` and ``b``
    that are at least the genus. Every gap is uniquely ``ab - ia - jb``
    with ``i, j >= 1``, so this is a lattice-point count that runs in
    ``O(a)`` steps; used for knots too large to expand.
    """
    a, b = k.a, k.b
    if a == 1:
        return 0
    limit = a * b - k.genus  # ia + jb <= limit
    count = 0
    j = 1
    while j * b + a <= limit:
        count += (limit - j * b) // a
        j += 1
    return count


def twist_knot_invariants(k: TwistKnot) -> Tuple[LaurentPolynomial, int]:
    """Alexander polynomial and signature of the twist knot ``T_m``."""
    m = k.m
    if m == 0:
        return LaurentPolynomial.constant(1), 0
    if m % 2 == 0:
        h = m // 2
        return LaurentPolynomial({1: h, 0: -(m + 1), -1: h}), 0
    h = (m + 1) // 2
    return LaurentPolynomial({1: h, 0: -m, -1: h}), 2
