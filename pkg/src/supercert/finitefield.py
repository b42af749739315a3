"""Finite fields F_{p^i} and polynomial arithmetic over them.

Fields are represented explicitly: an element of F_{p^i} is a tuple of i
integers mod p, the coefficients (ascending) of a polynomial residue modulo
a fixed monic irreducible of degree i. Everything here is exact integer
arithmetic; p may be very large (residue fields of places above
multi-hundred-digit primes), so nothing below enumerates the field except
the explicit ``elements`` iterator.
"""
from __future__ import annotations

import dataclasses
import itertools
from typing import Iterable, Sequence


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    end = len(c)
    while end > 0 and c[end - 1] == 0:
        end -= 1
    return tuple(c[:end])


class Fq:
    """The finite field with p^i elements, with a fixed modulus polynomial.

    Elements are tuples of length i (coefficients mod p, ascending). The
    modulus is monic irreducible of degree i over F_p; ``of_order`` picks the
    lexicographically least such modulus so that field construction is
    deterministic.
    """

    def __init__(self, p: int, modulus: Sequence[int]):
        modulus = tuple(c % p for c in modulus[:-1]) + (1,)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.p = p
        self.i = len(modulus) - 1
        self.modulus = modulus
        self.order = p**self.i

    @classmethod
    def prime_field(cls, p: int) -> "Fq":
        return cls(p, (0, 1))

    @classmethod
    def of_order(cls, p: int, i: int) -> "Fq":
        """F_{p^i} with the lexicographically least monic irreducible modulus."""
        if i == 1:
            return cls.prime_field(p)
        for lower in itertools.product(range(p), repeat=i):
            candidate = tuple(lower) + (1,)
            if _is_irreducible_over_fp(p, candidate):
                return cls(p, candidate)
        raise AssertionError("unreachable: irreducibles of every degree exist")

    # -- element constructors ----------------------------------------------

    def elt(self, coeffs: Iterable[int] | int) -> tuple[int, ...]:
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        reduced = self.poly_mod([c % self.p for c in coeffs])
        return tuple(reduced) + (0,) * (self.i - len(reduced))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.i

    def one(self) -> tuple[int, ...]:
        return self.elt(1)

    def gen(self) -> tuple[int, ...]:
        """The residue of x, a root of the modulus."""
        return self.elt([0, 1])

    def elements(self):
        for tup in itertools.product(range(self.p), repeat=self.i):
            yield tup

    # -- element arithmetic -------------------------------------------------

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        prod = [0] * (2 * self.i - 1)
        for m, x in enumerate(a):
            if x:
                for n, y in enumerate(b):
                    if y:
                        prod[m + n] += x * y
        reduced = self.poly_mod([c % self.p for c in prod])
        return tuple(reduced) + (0,) * (self.i - len(reduced))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one(), a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in finite field")
        return self.pow(a, self.order - 2)

    def is_zero(self, a) -> bool:
        return not any(a)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def poly_mod(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        """Reduce an F_p[x] polynomial modulo the field modulus."""
        work = [c % self.p for c in coeffs]
        for k in range(len(work) - 1, self.i - 1, -1):
            lead = work[k]
            if lead:
                work[k] = 0
                for j in range(1, self.i + 1):
                    work[k - j] = (work[k - j] - lead * self.modulus[self.i - j]) % self.p
        return _poly_trim(work[: self.i])


# -- polynomials over Fq ----------------------------------------------------
#
# A polynomial over Fq is a tuple of field elements, ascending, with no
# trailing zeros (the zero polynomial is the empty tuple).


def ptrim(field: Fq, coeffs: Sequence) -> tuple:
    end = len(coeffs)
    while end > 0 and field.is_zero(coeffs[end - 1]):
        end -= 1
    return tuple(coeffs[:end])


def pconst(field: Fq, value) -> tuple:
    return ptrim(field, [value])


def padd(field: Fq, a, b):
    out = [field.zero()] * max(len(a), len(b))
    for k, c in enumerate(a):
        out[k] = c
    for k, c in enumerate(b):
        out[k] = field.add(out[k], c)
    return ptrim(field, out)


def psub(field: Fq, a, b):
    return padd(field, a, tuple(field.neg(c) for c in b))


def pmul(field: Fq, a, b):
    if not a or not b:
        return ()
    out = [field.zero()] * (len(a) + len(b) - 1)
    for m, x in enumerate(a):
        if not field.is_zero(x):
            for n, y in enumerate(b):
                out[m + n] = field.add(out[m + n], field.mul(x, y))
    return ptrim(field, out)


def pscale(field: Fq, a, c):
    return ptrim(field, [field.mul(x, c) for x in a])


def pdivmod(field: Fq, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = field.inv(b[-1])
    rem = list(a)
    quo = [field.zero()] * max(0, len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        factor = field.mul(rem[k + len(b) - 1], inv_lead)
        if not field.is_zero(factor):
            quo[k] = factor
            for j, c in enumerate(b):
                rem[k + j] = field.sub(rem[k + j], field.mul(factor, c))
    return ptrim(field, quo), ptrim(field, rem)


def pmod(field: Fq, a, b):
    return pdivmod(field, a, b)[1]


def pgcd(field: Fq, a, b):
    while b:
        a, b = b, pmod(field, a, b)
    if a:
        a = pscale(field, a, field.inv(a[-1]))
    return a


def ppowmod(field: Fq, base, e: int, modulus):
    result = pconst(field, field.one())
    base = pmod(field, base, modulus)
    while e:
        if e & 1:
            result = pmod(field, pmul(field, result, base), modulus)
        base = pmod(field, pmul(field, base, base), modulus)
        e >>= 1
    return result


def pderiv(field: Fq, a):
    return ptrim(field, [field.mul(c, field.elt(k)) for k, c in enumerate(a)][1:])


def peval(field: Fq, a, x):
    acc = field.zero()
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def pmonic(field: Fq, a):
    return pscale(field, a, field.inv(a[-1])) if a else a


def _is_irreducible_over_fp(p: int, coeffs: tuple[int, ...]) -> bool:
    """Irreducibility of a monic polynomial over F_p (Rabin's test)."""
    field = Fq.prime_field(p)
    n = len(coeffs) - 1
    f = tuple((c % p,) for c in coeffs)
    x = ((0,), (1,))
    # x^(p^n) = x mod f, and x^(p^(n/q)) - x coprime to f for prime q | n.
    power = x
    powers = []
    for _ in range(n):
        power = ppowmod(field, power, p, f)
        powers.append(power)
    if psub(field, powers[-1], pmod(field, x, f)):
        return False
    for q in range(2, n + 1):
        if n % q == 0 and _is_prime_small(q):
            diff = psub(field, powers[n // q - 1], pmod(field, x, f))
            if len(pgcd(field, diff, f)) > 1:
                return False
    return True


def _is_prime_small(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


def proots(field: Fq, a, seed: str = "") -> list:
    """All roots in the field of the polynomial a, found by splitting off
    the linear-factor part with x^q - x and then equal-degree splitting.
    Deterministic: the splitting randomness is seeded from the field and
    the polynomial."""
    import random

    a = ptrim(field, a)
    if len(a) <= 1:
        return []
    a = pmonic(field, a)
    x = (field.zero(), field.one())
    xq = ppowmod(field, x, field.order, a)
    linear = pgcd(field, psub(field, xq, x), a)
    roots = []
    if len(linear) <= 1:
        return roots
    rng = random.Random(f"roots{field.p},{field.i},{seed}")
    stack = [linear]
    while stack:
        cur = stack.pop()
        if len(cur) == 2:
            roots.append(field.neg(cur[0]))
            continue
        while True:
            u = ptrim(field, [tuple(rng.randrange(field.p)
                                    for _ in range(field.i))
                              for _ in range(len(cur) - 1)])
            if len(u) <= 1:
                continue
            if field.p == 2:
                # additive splitting via the trace to F_2
                acc, term = u, u
                for _ in range(field.i - 1):
                    term = pmod(field, pmul(field, term, term), cur)
                    acc = padd(field, acc, term)
                candidate = acc
            else:
                powed = ppowmod(field, u, (field.order - 1) // 2, cur)
                candidate = psub(field, powed, pconst(field, field.one()))
            g = pgcd(field, candidate, cur)
            if 1 < len(g) < len(cur):
                stack.append(g)
                stack.append(ptrim(field, pdivmod(field, cur, g)[0]))
                break
    return sorted(roots)
