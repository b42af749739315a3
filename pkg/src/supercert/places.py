"""Primes of Q(zeta_r): residue fields, reductions, and valuations.

For an unramified prime p != r, the places above p correspond to the
irreducible factors of Phi_r mod p, all of degree i = ord(p mod r). Factors
are computed by equal-degree splitting with a deterministic seeded generator
and ordered lexicographically, so the name ``p:index`` of a place is stable
across runs. Valuations are computed by evaluating at a Hensel-lifted root of
the chosen factor in Z/p^N (N grows on demand).

For p = r there is a single ramified place, the pi-adic one, whose valuation
is the pi-adic valuation from the cyclotomic module.
"""
from __future__ import annotations

import dataclasses
import math
import random
from typing import Sequence

from .cyclotomic import CycElt, _require_odd_prime_r
from . import finitefield as ff
from .finitefield import Fq

INITIAL_PRECISION = 64


def _phi_r_mod_p(field: Fq, r: int):
    one = field.one()
    return tuple(one for _ in range(r))


def _equal_degree_split(field: Fq, f, degree: int, rng: random.Random):
    """Split a squarefree product of degree-`degree` irreducibles over F_p."""
    n = len(f) - 1
    if n == degree:
        return [ff.pmonic(field, f)]
    p = field.p
    while True:
        a = ff.ptrim(field, [field.elt(rng.randrange(p)) for _ in range(n)])
        if len(a) <= 1:
            continue
        if p == 2:
            # Trace map: sum of a^(2^j) over the degree-i subfield.
            acc, power = (), a
            for _ in range(degree):
                acc = ff.padd(field, acc, power)
                power = ff.pmod(field, ff.pmul(field, power, power), f)
            g = ff.pgcd(field, acc, f)
        else:
            b = ff.ppowmod(field, a, (p**degree - 1) // 2, f)
            g = ff.pgcd(field, ff.psub(field, b, ff.pconst(field, field.one())), f)
        if 0 < len(g) - 1 < n:
            h = ff.pdivmod(field, f, g)[0]
            return (_equal_degree_split(field, g, degree, rng)
                    + _equal_degree_split(field, h, degree, rng))


def factor_cyclotomic_mod_p(r: int, p: int) -> list[tuple[int, ...]]:
    """Monic irreducible factors of Phi_r mod p (p != r), sorted lex.

    Each factor is returned as a tuple of ints mod p, ascending degree.
    """
    field = Fq.prime_field(p)
    i = _order_mod(p, r)
    factors = _equal_degree_split(field, _phi_r_mod_p(field, r), i,
                                  random.Random(f"phi{r}mod{p}"))
    as_ints = [tuple(c[0] for c in poly) for poly in factors]
    return sorted(as_ints)


def _order_mod(p: int, r: int) -> int:
    i, power = 1, p % r
    if power == 0:
        raise ValueError(f"p={p} is not coprime to r={r}")
    while power != 1:
        power = (power * p) % r
        i += 1
    return i


@dataclasses.dataclass(frozen=True)
class Place:
    """A prime of Q(zeta_r), selected by an irreducible factor of Phi_r mod p.

    ``name`` is the stable identifier ``p:index`` used in certificates.
    The ramified place (p = r) has g_poly = x - 1 and index 0.
    """

    r: int
    p: int
    index: int
    i: int
    g_poly: tuple[int, ...]
    is_ramified: bool

    @property
    def name(self) -> str:
        return f"{self.p}:{self.index}"

    @property
    def residue_order(self) -> int:
        return self.p**self.i

    def residue_field(self) -> Fq:
        return Fq(self.p, self.g_poly)

    def __repr__(self) -> str:
        return f"Place({self.name}, r={self.r}, i={self.i})"


def places_above(r: int, p: int) -> list[Place]:
    """All places of Q(zeta_r) above the rational prime p, in stable order."""
    _require_odd_prime_r(r)
    if p == r:
        return [Place(r, p, 0, 1, ((p - 1) % p, 1), True)]
    factors = factor_cyclotomic_mod_p(r, p)
    return [Place(r, p, k, len(g) - 1, g, False) for k, g in enumerate(factors)]


def place_by_name(r: int, name: str) -> Place:
    p_str, _, idx_str = name.partition(":")
    candidates = places_above(r, int(p_str))
    idx = int(idx_str) if idx_str else 0
    if not 0 <= idx < len(candidates):
        raise ValueError(f"no place {name!r} for r={r}")
    return candidates[idx]


# -- Hensel lifting ---------------------------------------------------------
#
# To compute valuations at an unramified place we lift the factorization
# Phi_r = g * h from mod p to mod p^N and work in (Z/p^N)[x]/(g~). In that
# unramified local ring the valuation of an element is the minimum p-adic
# valuation of its coefficients.


def _zpoly_trim(c):
    end = len(c)
    while end > 0 and c[end - 1] == 0:
        end -= 1
    return tuple(c[:end])


def _zpoly_mul(a, b, m):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    return _zpoly_trim(out)


def _zpoly_add(a, b, m):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % m
    return _zpoly_trim(out)


def _zpoly_sub(a, b, m):
    return _zpoly_add(a, tuple(-y % m for y in b), m)


def _zpoly_divmod(a, b, m):
    """Division with remainder mod m; the divisor's lead must be a unit."""
    inv_lead = pow(b[-1], -1, m)
    rem = list(a)
    quo = [0] * max(0, len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        factor = (rem[k + len(b) - 1] * inv_lead) % m
        if factor:
            quo[k] = factor
            for j, c in enumerate(b):
                rem[k + j] = (rem[k + j] - factor * c) % m
    return _zpoly_trim(quo), _zpoly_trim(rem)


def _fp_bezout(p, g, h):
    """s, t over F_p with s*g + t*h = 1, for coprime g, h."""
    field = Fq.prime_field(p)
    gp = ff.ptrim(field, [(c % p,) for c in g])
    hp = ff.ptrim(field, [(c % p,) for c in h])
    r0, r1 = gp, hp
    s0, s1 = ff.pconst(field, field.one()), ()
    t0, t1 = (), ff.pconst(field, field.one())
    while r1:
        q, rem = ff.pdivmod(field, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, ff.psub(field, s0, ff.pmul(field, q, s1))
        t0, t1 = t1, ff.psub(field, t0, ff.pmul(field, q, t1))
    inv = field.inv(r0[0])
    s = ff.pscale(field, s0, inv)
    t = ff.pscale(field, t0, inv)
    return tuple(c[0] for c in s), tuple(c[0] for c in t)


def hensel_lift_factor(r: int, p: int, g_mod_p: Sequence[int], precision: int):
    """Lift the monic factor g of Phi_r from mod p to mod p^precision."""
    f = tuple(1 for _ in range(r))  # Phi_r
    g = tuple(c % p for c in g_mod_p)
    h, rem = _zpoly_divmod(f, g, p)
    assert not rem, "g must divide Phi_r mod p"
    s, t = _fp_bezout(p, g, h)

    m = p
    while m < p**precision:
        m2 = min(m * m, p**precision)
        e = _zpoly_sub(f, _zpoly_mul(g, h, m2), m2)
        q, rr = _zpoly_divmod(_zpoly_mul(s, e, m2), h, m2)
        g = _zpoly_add(g, _zpoly_add(_zpoly_mul(t, e, m2), _zpoly_mul(q, g, m2), m2), m2)
        h = _zpoly_add(h, rr, m2)
        b = _zpoly_sub(_zpoly_add(_zpoly_mul(s, g, m2), _zpoly_mul(t, h, m2), m2), (1,), m2)
        c, d = _zpoly_divmod(_zpoly_mul(s, b, m2), h, m2)
        s = _zpoly_sub(s, d, m2)
        t = _zpoly_sub(t, _zpoly_add(_zpoly_mul(t, b, m2), _zpoly_mul(c, g, m2), m2), m2)
        m = m2
    return g


_LIFT_CACHE: dict[tuple[int, int, int, int], tuple[int, ...]] = {}


def _lifted_factor(place: Place, precision: int) -> tuple[int, ...]:
    key = (place.r, place.p, place.index, precision)
    got = _LIFT_CACHE.get(key)
    if got is None:
        got = _LIFT_CACHE[key] = hensel_lift_factor(place.r, place.p,
                                                    place.g_poly, precision)
    return got


def _embed(a: CycElt, place: Place, precision: int) -> tuple[int, ...]:
    """Image of a in (Z/p^precision)[x]/(lifted g), as a coefficient tuple."""
    m = place.p**precision
    g = _lifted_factor(place, precision)
    # Horner evaluation of sum c_k * x^k modulo (g, m).
    acc: tuple[int, ...] = ()
    for c in reversed(a.coeffs):
        acc = _zpoly_add(_zpoly_divmod(_zpoly_mul(acc, (0, 1), m), g, m)[1],
                         (int(c) % m,), m)
    padded = tuple(acc) + (0,) * (place.i - len(acc))
    return padded


def valuation(a: CycElt, place: Place) -> int | float:
    """v_place(a), normalized so v(p) = 1 (v(pi) = 1 at the ramified place)."""
    if a.r != place.r:
        raise ValueError("element and place have different r")
    if a.is_zero():
        return math.inf
    if place.is_ramified:
        return a.pi_valuation()
    precision = INITIAL_PRECISION
    while True:
        image = _embed(a, place, precision)
        vals = []
        for c in image:
            if c:
                v = 0
                while c % place.p == 0:
                    c //= place.p
                    v += 1
                vals.append(v)
        if vals and min(vals) < precision:
            return min(vals)
        precision *= 2


def reduce_elt(a: CycElt, place: Place):
    """Image of a in the residue field (an Fq element tuple)."""
    field = place.residue_field()
    if place.is_ramified:
        # zeta -> 1 in F_r.
        return field.elt(sum(int(c) for c in a.coeffs))
    return field.elt([int(c) for c in a.coeffs])


def reduce_coeffs(coeffs: Sequence[CycElt], place: Place):
    """Reduce a list of cyclotomic coefficients to the residue field."""
    field = place.residue_field()
    return ff.ptrim(field, [reduce_elt(c, place) for c in coeffs])


reduce = reduce_elt
reduce_poly = reduce_coeffs
