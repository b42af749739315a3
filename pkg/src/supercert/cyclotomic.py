"""Exact arithmetic in Z[zeta_r] for an odd prime r.

Elements are stored in the power basis {1, zeta, ..., zeta^(r-2)}, which gives
a canonical representative for every ring element (the relation
zeta^(r-1) = -1 - zeta - ... - zeta^(r-2) is folded in on construction).

The distinguished prime pi = 1 - zeta generates the unique ramified prime
above r; ``pi_valuation`` computes the pi-adic valuation by repeated exact
division.
"""
from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

MAX_R = 100

Rational = Union[int, Fraction]


def _require_odd_prime_r(r: int) -> None:
    if r < 3 or r > MAX_R:
        raise ValueError(f"r={r} unsupported: need an odd prime with 3 <= r <= {MAX_R}")
    if r % 2 == 0 or any(r % q == 0 for q in range(3, int(r**0.5) + 1, 2)):
        raise ValueError(f"r={r} is not an odd prime")


def _canonical(r: int, raw: Sequence[Rational]) -> tuple[Rational, ...]:
    """Reduce a coefficient vector for 1, zeta, ..., zeta^(len-1) mod Phi_r."""
    folded: list[Rational] = [0] * r
    for k, c in enumerate(raw):
        if c:
            folded[k % r] += c
    top = folded[r - 1]
    if top:
        return tuple(folded[k] - top for k in range(r - 1))
    return tuple(folded[: r - 1])


@dataclasses.dataclass(frozen=True)
class CycElt:
    """An element of Q(zeta_r) in the power basis, canonically reduced.

    ``coeffs`` always has length r-1. Integral elements have int coefficients;
    non-integral intermediates (only used in internal field computations) are
    flagged by Fraction coefficients.

    >>> CycElt.from_coeffs(3, [1, -1]) * CycElt.from_coeffs(3, [2, 1])
    CycElt(r=3, coeffs=(3, 0))
    """

    r: int
    coeffs: tuple[Rational, ...]

    @classmethod
    def from_coeffs(cls, r: int, raw: Iterable[Rational]) -> "CycElt":
        _require_odd_prime_r(r)
        raw = list(raw)
        if len(raw) > r:
            raise ValueError(f"coefficient vector longer than r={r}")
        return cls(r, _canonical(r, raw))

    @classmethod
    def integer(cls, r: int, n: Rational) -> "CycElt":
        _require_odd_prime_r(r)
        return cls(r, (n,) + (0,) * (r - 2))

    @classmethod
    def zeta(cls, r: int, power: int = 1) -> "CycElt":
        _require_odd_prime_r(r)
        raw = [0] * r
        raw[power % r] = 1
        return cls(r, _canonical(r, raw))

    @classmethod
    def pi(cls, r: int) -> "CycElt":
        """The ramified uniformizer 1 - zeta."""
        return cls.integer(r, 1) - cls.zeta(r)

    # -- ring structure -----------------------------------------------------

    def _check_same_ring(self, other: "CycElt") -> None:
        if self.r != other.r:
            raise ValueError(f"mismatched rings: r={self.r} vs r={other.r}")

    def __add__(self, other: "CycElt | int") -> "CycElt":
        other = self._coerce(other)
        self._check_same_ring(other)
        return CycElt(self.r, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycElt | int") -> "CycElt":
        return self + (-self._coerce(other))

    def __neg__(self) -> "CycElt":
        return CycElt(self.r, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycElt | int") -> "CycElt":
        if isinstance(other, int):
            return CycElt(self.r, tuple(c * other for c in self.coeffs))
        self._check_same_ring(other)
        n = self.r - 1
        prod: list[Rational] = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycElt(self.r, _canonical(self.r, prod))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other: "CycElt | int") -> "CycElt":
        return self._coerce(other) - self

    def __pow__(self, n: int) -> "CycElt":
        if n < 0:
            raise ValueError("negative powers are not supported; use exact_div")
        result = CycElt.integer(self.r, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other: "CycElt | int") -> "CycElt":
        if isinstance(other, CycElt):
            return other
        return CycElt.integer(self.r, other)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1)
                   for c in self.coeffs)

    def as_integral(self) -> "CycElt":
        if not self.is_integral():
            raise ValueError(f"{self} is not integral")
        return CycElt(self.r, tuple(int(c) for c in self.coeffs))

    def as_rational_integer(self) -> Rational:
        """Return the value as a rational number; error if not in Q."""
        if any(c != 0 for c in self.coeffs[1:]):
            raise ValueError(f"{self} is not a rational number")
        return self.coeffs[0]

    # -- Galois action ------------------------------------------------------

    def conjugate(self, j: int) -> "CycElt":
        """Apply the automorphism zeta -> zeta^j, for gcd(j, r) = 1."""
        if j % self.r == 0:
            raise ValueError(f"j={j} is divisible by r={self.r}")
        raw: list[Rational] = [0] * self.r
        for k, c in enumerate(self.coeffs):
            if c:
                raw[(k * j) % self.r] += c
        return CycElt(self.r, _canonical(self.r, raw))

    def norm(self) -> Rational:
        """Product of all r-1 conjugates; always a rational number."""
        prod = CycElt.integer(self.r, 1)
        for j in range(1, self.r):
            prod = prod * self.conjugate(j)
        return prod.as_rational_integer()

    def cofactor(self) -> "CycElt":
        """Product of the conjugates for j = 2 .. r-1, so a * cofactor = norm."""
        prod = CycElt.integer(self.r, 1)
        for j in range(2, self.r):
            prod = prod * self.conjugate(j)
        return prod

    # -- pi-adic structure --------------------------------------------------

    def divide_by_pi(self) -> "CycElt | None":
        """Return self / pi if pi divides self exactly in Z[zeta_r], else None."""
        # pi * prod_{j=2}^{r-1} (1 - zeta^j) = Phi_r(1) = r, so division by pi
        # is multiplication by that cofactor followed by exact division by r.
        scaled = self * _pi_cofactor(self.r)
        if all(c % self.r == 0 for c in scaled.coeffs):
            return CycElt(self.r, tuple(c // self.r for c in scaled.coeffs))
        return None

    def pi_valuation(self) -> int | float:
        """Largest k with pi^k dividing self; math.inf for zero."""
        if self.is_zero():
            return math.inf
        if not self.is_integral():
            raise ValueError("pi_valuation requires an integral element")
        v = 0
        current = self
        while True:
            quotient = current.divide_by_pi()
            if quotient is None:
                return v
            current = quotient
            v += 1

    def exact_div(self, b: "CycElt") -> "CycElt":
        """Exact division in Z[zeta_r]; raises if b does not divide self."""
        self._check_same_ring(b)
        if b.is_zero():
            raise ZeroDivisionError("division by zero in Z[zeta_r]")
        n = b.norm()
        scaled = self * b.cofactor()
        if all(c % n == 0 for c in scaled.coeffs):
            return CycElt(self.r, tuple(c // n for c in scaled.coeffs))
        raise ValueError(f"{b} does not divide {self} in Z[zeta_r]")

    def __repr__(self) -> str:
        return f"CycElt(r={self.r}, coeffs={self.coeffs})"

    def __str__(self) -> str:
        return str(list(self.coeffs))


_PI_COFACTORS: dict[int, CycElt] = {}


def _pi_cofactor(r: int) -> CycElt:
    got = _PI_COFACTORS.get(r)
    if got is None:
        got = _PI_COFACTORS[r] = CycElt.pi(r).cofactor()
    return got


@dataclasses.dataclass(frozen=True)
class SplitData:
    """How the rational prime ell splits in Q(zeta_r), per Dedekind-Kummer.

    ``i`` is the inertia degree (order of ell mod r); the number of primes
    above ell is (r-1)/i. For odd i the primes come in ``t_pairs``
    complex-conjugate pairs; for even i each of the ``t`` primes is
    self-conjugate.
    """

    ell: int
    i: int
    num_places: int
    t_pairs: int | None
    t: int | None


def splitting_data(r: int, ell: int) -> SplitData:
    _require_odd_prime_r(r)
    if ell == r:
        raise ValueError("ell = r is the ramified prime; use the pi-adic place")
    if ell % r == 0:
        raise ValueError(f"ell={ell} is not coprime to r={r}")
    i = 1
    power = ell % r
    while power != 1:
        power = (power * ell) % r
        i += 1
    num_places = (r - 1) // i
    if i % 2 == 1:
        return SplitData(ell, i, num_places, t_pairs=num_places // 2, t=None)
    return SplitData(ell, i, num_places, t_pairs=None, t=num_places)
