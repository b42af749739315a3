"""Primality testing and factorization for discriminant norms.

``is_prime`` is deterministic below 3.3e24 (fixed Miller-Rabin witness set)
and a strong-probable-prime + strong-Lucas combination beyond. ``factor``
runs trial division, verified hint division, then Brent's rho within an
iteration budget; whatever remains unfactored is reported as a composite
cofactor rather than an error, and every prime found records whether it was
found blind or verified from a hint.
"""
from __future__ import annotations

import dataclasses
import math
import random

TRIAL_BOUND = 10**6
DEFAULT_RHO_BUDGET = 5_000_000_000
_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_small_sieve: list[int] | None = None


def _small_primes() -> list[int]:
    global _small_sieve
    if _small_sieve is None:
        flags = bytearray([1]) * TRIAL_BOUND
        flags[0] = flags[1] = 0
        for k in range(2, int(TRIAL_BOUND**0.5) + 1):
            if flags[k]:
                flags[k * k::k] = bytearray(len(flags[k * k::k]))
        _small_sieve = [k for k in range(TRIAL_BOUND) if flags[k]]
    return _small_sieve


def _mr_round(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge's parameter choice."""
    if math.isqrt(n) ** 2 == n:
        return False
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0:
            return n == abs(d)
        d = -(d + 2) if d > 0 else -(d - 2)
    p, q = 1, (1 - d) // 4
    # n + 1 = k * 2^s with k odd.
    k, s = n + 1, 0
    while k % 2 == 0:
        k, s = k // 2, s + 1
    u, v, qk = _lucas_uv(k, p, q, n)
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _lucas_uv(k: int, p: int, q: int, n: int) -> tuple[int, int, int]:
    """(U_k, V_k, Q^k) mod n by binary double-and-add."""
    u, v, qk = 1, p, q % n
    for bit in bin(k)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) % n, ((p * p - 4 * q) * u + p * v) % n
            if u % 2:
                u += n
            if v % 2:
                v += n
            u, v = u // 2 % n, v // 2 % n
            qk = qk * q % n
    return u, v, qk


def is_prime(n: int) -> bool:
    if n < 0:
        raise ValueError("is_prime expects n >= 0")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    if n < _DETERMINISTIC_LIMIT:
        return all(_mr_round(n, a, d, s) for a in _MR_WITNESSES)
    rng = random.Random(n)
    if not all(_mr_round(n, rng.randrange(2, n - 1), d, s) for _ in range(40)):
        return False
    return _strong_lucas(n)


def p_valuation(n: int, p: int) -> int:
    """Exact exponent of the prime p in n != 0."""
    if n == 0:
        raise ValueError("p_valuation of 0 is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclasses.dataclass(frozen=True)
class Factorization:
    """n = sign * cofactor * prod(p^e); cofactor is 1 or a composite."""

    n: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int
    # prime -> "trial" | "hint" | "rho" ("rho" covers the whole blind stage:
    # the p-1 pre-step, Brent rho, and primality-certified cofactors)
    provenance: tuple[tuple[int, str], ...]

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def check(self) -> bool:
        prod = self.cofactor
        for p, e in self.factors:
            prod *= p**e
        return prod == abs(self.n)


def _pollard_pminus1(n: int, budget: int,
                     bound: int = 10**6) -> tuple[int | None, int]:
    """One p-1 stage: finds prime factors p of n with p-1 bound-smooth.
    Returns (factor or None, modular multiplications used)."""
    if n % 2 == 0:
        return 2, 0
    a = 2
    used = 0
    for q in _small_primes():
        if q > bound or used > budget:
            break
        power = q
        while power * q <= bound:
            power *= q
        a = pow(a, power, n)
        used += power.bit_length()
        if q % 1009 == 1:          # periodic gcd check, keeps stage cheap
            g = math.gcd(a - 1, n)
            if 1 < g < n:
                return g, used
            if g == n:
                return None, used
    g = math.gcd(a - 1, n)
    return (g if 1 < g < n else None), used


def _brent_rho(n: int, budget: int, rng: random.Random) -> tuple[int | None, int]:
    """One Brent-rho attempt; returns (factor or None, iterations used)."""
    if n % 2 == 0:
        return 2, 0
    used = 0
    while used < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g, q, r = 1, 1, 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1 and used < budget:
                ys = y
                steps = min(m, r - k, budget - used)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                used += steps
                g = math.gcd(q, n)
                k += steps
            r *= 2
        if g == n:
            # Backtrack one step at a time from the saved point.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, used
        # g == n even after backtracking, or budget ran out: retry/give up.
    return None, used


def factor(n: int, budget: int = DEFAULT_RHO_BUDGET,
           hints: list[int] | None = None) -> Factorization:
    """Factor n (sign ignored) with trial division, hints, then Brent rho."""
    if n == 0:
        raise ValueError("cannot factor 0")
    remaining = abs(n)
    found: dict[int, int] = {}
    provenance: dict[int, str] = {}

    for p in _small_primes():
        if p * p > remaining:
            break
        if remaining % p == 0:
            e = p_valuation(remaining, p)
            found[p], provenance[p] = e, "trial"
            remaining //= p**e
    if 1 < remaining < TRIAL_BOUND**2:
        found[remaining] = found.get(remaining, 0) + 1
        provenance.setdefault(remaining, "trial")
        remaining = 1

    for h in sorted(set(hints or [])):
        if h > 1 and remaining % h == 0 and is_prime(h):
            e = p_valuation(remaining, h)
            found[h] = found.get(h, 0) + e
            provenance[h] = "hint"
            remaining //= h**e

    rng = random.Random(abs(n))
    stack = [remaining] if remaining > 1 else []
    cofactor = 1
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            # Repeated prime factors reach here once per occurrence.
            found[m] = found.get(m, 0) + 1
            provenance.setdefault(m, "rho")
            continue
        g, used = _pollard_pminus1(m, budget // 2)
        budget -= used
        if g is None:
            g, used = _brent_rho(m, budget, rng)
            budget -= used
        if g is None:
            cofactor *= m
            continue
        stack.append(g)
        stack.append(m // g)

    factors = tuple(sorted(found.items()))
    return Factorization(n, factors, cofactor,
                         tuple(sorted(provenance.items())))
