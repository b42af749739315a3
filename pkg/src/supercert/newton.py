"""Newton polygons at a place and the tame inertia data they determine.

For a monic f over Z[zeta_r] and a place v, the lower convex hull of
{(j, v(a_j))} either matches one of two certified shapes or the place is left
unclassified:

* standard: strictly negative slopes through vertices (x_s, h_s) with prime
  segment lengths q_1 < ... < q_t (all != r, p), then a flat separable part;
  the inertia action decomposes into tame character blocks computed here.
* transvection: the first segment has length exactly r; the r-th power of an
  inertia generator acts as a transvection.

Shifts x -> x - a are searched (a = 0 first, then lifts of repeated residue
roots) so that profiles hidden behind a translation are still found.

The module also checks the explicit congruence conditions on the
coefficients under which the curve y^r = f(x) has good reduction at the
ramified prime r.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
from fractions import Fraction
from typing import Optional

from .cyclotomic import CycElt
from .cycpoly import CycPoly
from . import finitefield as ff
from .places import Place, reduce_coeffs, valuation


# -- polygons ---------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of {(j, v(a_j)) : a_j != 0}, vertices left to right."""

    vertices: tuple[tuple[int, int], ...]

    @property
    def segments(self) -> tuple[tuple[int, Fraction], ...]:
        """(length, slope) per hull segment, slopes strictly increasing."""
        out = []
        for (x0, y0), (x1, y1) in itertools.pairwise(self.vertices):
            out.append((x1 - x0, Fraction(y1 - y0, x1 - x0)))
        return tuple(out)


def lower_convex_hull(points: list[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    points = sorted(points)
    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # Keep the middle point only if the path turns strictly left
            # (convex from below); pop it when collinear or turning right.
            if (x1 - x0) * (pt[1] - y0) > (pt[0] - x0) * (y1 - y0):
                break
            hull.pop()
        hull.append(pt)
    return tuple(hull)


def newton_polygon(f: CycPoly, place: Place) -> NewtonPolygon:
    points = []
    for j, c in enumerate(f.coeffs):
        if not c.is_zero():
            v = valuation(c, place)
            points.append((j, int(v)))
    if not points:
        raise ValueError("zero polynomial has no Newton polygon")
    return NewtonPolygon(lower_convex_hull(points))


# -- v-profiles (detected polygon shapes) -----------------------------------


@dataclasses.dataclass(frozen=True)
class VProfile:
    """A certified polygon shape of f at a place.

    ``kind`` is "standard" (prime segment lengths distinct from r and p) or
    "transvection" (first segment length exactly r). The flat separable part
    has degree ``separable_part_degree``; for transvection profiles
    ``r_divides_h`` records whether r divides the height (this switches the
    eigenvalue pattern of the inertia generator).
    """

    kind: str
    shift: CycElt
    qs: tuple[int, ...]
    hs: tuple[int, ...]
    separable_part_degree: int
    place_name: str = ""
    r_divides_h: bool = False

    @property
    def x_values(self) -> tuple[int, ...]:
        xs = [0]
        for q in self.qs:
            xs.append(xs[-1] + q)
        return tuple(xs)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


def _analyze_polygon(f: CycPoly, place: Place, shift: CycElt) -> Optional[VProfile]:
    """Match the polygon of f (already shifted) against the two shapes."""
    r, p = f.r, place.p
    d = f.degree
    if f.coeffs[0].is_zero():
        return None
    poly = newton_polygon(f, place)
    verts = poly.vertices
    if verts[0][0] != 0 or verts[-1] != (d, 0):
        return None
    # Split into the strictly-descending part and the (optional) flat part.
    descending = [verts[0]]
    flat_start = None
    for x, y in verts[1:]:
        if y == 0 and flat_start is None:
            flat_start = x
            descending.append((x, 0))
        elif flat_start is not None:
            if y != 0:
                return None
        else:
            descending.append((x, y))
    if flat_start is None:
        return None
    if descending[0][1] <= 0:
        return None  # no negative part at all
    qs = tuple(x1 - x0 for (x0, _), (x1, _) in itertools.pairwise(descending))
    hs = tuple(y for _, y in descending[:-1])
    x_end = flat_start

    # Flat-part conditions: h separable mod the place with h(0) != 0.
    if x_end < d:
        fbar_flat = reduce_coeffs(f.coeffs[x_end:d + 1], place)
        field = place.residue_field()
        if len(fbar_flat) != d - x_end + 1:
            return None  # leading coefficient vanished (cannot happen: monic)
        if field.is_zero(fbar_flat[0]):
            return None
        if len(ff.pgcd(field, fbar_flat, ff.pderiv(field, fbar_flat))) != 1:
            return None

    if len(qs) == 1 and qs[0] == r:
        # Transvection shape (0, h)-(r, 0)-(d, 0); needs p coprime to r*h.
        h = hs[0]
        if p % r == 0 or h % p == 0:
            return None
        return VProfile("transvection", shift, qs, hs, d - x_end,
                        place.name, r_divides_h=(h % r == 0))

    # Standard shape: increasing primes distinct from r and p, coprime steps,
    # and the flat part empty exactly when r divides the descending length.
    if (x_end % r == 0) != (x_end == d):
        return None
    if any(not _is_prime(q) or q == r or q == p for q in qs):
        return None
    if list(qs) != sorted(set(qs)):
        return None
    heights = list(hs) + [0]
    for s, q in enumerate(qs):
        if math.gcd(heights[s] - heights[s + 1], q) != 1:
            return None
    return VProfile("standard", shift, qs, hs, d - x_end, place.name)


def _shift_candidates(f: CycPoly, place: Place) -> list[CycElt]:
    """a = 0 first, then lifts of repeated residue roots of f at the place."""
    r = f.r
    candidates = [CycElt.integer(r, 0)]
    field = place.residue_field()
    fbar = reduce_coeffs(f.coeffs, place)
    if not fbar:
        return candidates
    gcd = ff.pgcd(field, fbar, ff.pderiv(field, fbar))
    if len(gcd) <= 1:
        return candidates
    for root in ff.proots(field, gcd, seed=place.name):
        lift = _lift_residue_elt(root, place)
        for a in (-lift, _refine_shift(f, place, -lift)):
            if a is not None and not any(a == c for c in candidates):
                candidates.append(a)
    return candidates


def _lift_residue_elt(value, place: Place) -> CycElt:
    """Tautological lift of an F_{p^i} element back to Z[zeta_r]."""
    if place.is_ramified:
        return CycElt.integer(place.r, int(value[0]))
    return CycElt.from_coeffs(place.r, [int(c) for c in value])


def _refine_shift(f: CycPoly, place: Place, a0: CycElt,
                  precision: int = 32) -> Optional[CycElt]:
    """Newton-iterate a0 toward a critical point of f (a root of f').

    Centering the shift on a root of f' deepens the valuations of the low
    coefficients of f(x - a), exposing profiles of height > 1. Only applies
    when f''(-a0) is a unit at the place; returns None otherwise.
    """
    if place.is_ramified:
        return None
    r = f.r
    p, m = place.p, place.p**precision
    f1, f2 = f.derivative(), f.derivative().derivative()
    x = -a0
    for _ in range(precision.bit_length() + 2):
        num, den = f1(x), f2(x)
        if valuation(den, place) != 0:
            return None
        # x <- x - f'(x)/f''(x), with the division done via an approximate
        # local inverse of f''(x) pulled back to the ring.
        inv = _approximate_inverse(den, place, precision)
        if inv is None:
            return None
        step = num * inv
        x = CycElt.from_coeffs(r, [_centered(int(c) % m, m) for c in (x - step).coeffs])
        if valuation(f1(x), place) >= precision // 2:
            break
    return -x


def _centered(c: int, m: int) -> int:
    return c - m if c > m // 2 else c


def _approximate_inverse(u: CycElt, place: Place,
                         precision: int) -> Optional[CycElt]:
    """An element w with u*w = 1 mod p^precision at the place, or None.

    Works with the rational inverse: w = cofactor(u) * (norm(u) inverted
    mod p^precision), reduced to centered representatives.
    """
    n = int(u.norm())
    p, m = place.p, place.p**precision
    if n % p == 0:
        # The norm can vanish mod p at *other* places above p even when u is
        # a unit at this one; strip the p-part and invert what remains only
        # if u itself is a unit here and the p-part is explained elsewhere.
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        # Multiply the cofactor by p^-v is impossible over the ring; fall
        # back to inverting in the local quotient via Hensel from F_q.
        return _local_inverse(u, place, precision)
    inv_n = pow(n % m, -1, m)
    w = u.cofactor() * inv_n
    return CycElt.from_coeffs(u.r, [_centered(int(c) % m, m) for c in w.coeffs])


def _local_inverse(u: CycElt, place: Place,
                   precision: int) -> Optional[CycElt]:
    from .places import _embed, _lifted_factor, _zpoly_divmod, _zpoly_mul, _zpoly_sub

    p, m = place.p, place.p**precision
    g = _lifted_factor(place, precision)
    img = _embed(u, place, precision)
    field = place.residue_field()
    u0 = field.elt([c % p for c in img])
    if field.is_zero(u0):
        return None
    z = tuple(int(c) for c in field.inv(u0))
    k = 1
    while k < precision:
        k *= 2
        uz = _zpoly_divmod(_zpoly_mul(img, z, m), g, m)[1]
        correction = _zpoly_sub((2,), uz, m)
        z = _zpoly_divmod(_zpoly_mul(z, correction, m), g, m)[1]
    coeffs = list(z) + [0] * (place.i - len(z))
    return CycElt.from_coeffs(u.r, [_centered(c % m, m) for c in coeffs])


def detect_v_profile(f: CycPoly, place: Place) -> Optional[VProfile]:
    """First valid profile of f at the place under the deterministic search."""
    if not f.is_monic():
        raise ValueError("profile detection requires monic f")
    for a in _shift_candidates(f, place):
        shifted = f if a.is_zero() else f.compose_shift(a)
        profile = _analyze_polygon(shifted, place, a)
        if profile is not None:
            return profile
    return None


def transvection_shape_check(f: CycPoly, place: Place, r: int) -> bool:
    profile = detect_v_profile(f, place)
    return profile is not None and profile.kind == "transvection"


# -- inertia decomposition (standard profiles) ------------------------------


@dataclasses.dataclass(frozen=True)
class InertiaDecomp:
    """Tame character blocks of inertia acting on the Tate module.

    Each ab_block (q, D, delta) stands for the q-1 characters with q-part
    exponent j*D (j = 1..q-1), each twisted by an order-r character iff
    delta = 1. extra_r_blocks are pure order-r character packets with a
    (possibly negative, i.e. virtual) multiplicity; toric_blocks contribute
    with multiplicity two to the dimension count.
    """

    r: int
    qs: tuple[int, ...]
    hs: tuple[int, ...]
    Ds: tuple[int, ...]
    gammas: tuple[int, ...]      # gamma_1 .. gamma_{t+1}
    deltas: tuple[int, ...]
    ab_blocks: tuple[tuple[int, int, int], ...]      # (q, D, delta)
    extra_r_blocks: tuple[tuple[int, int], ...]       # (delta, multiplicity)
    toric_blocks: tuple[tuple[int, int], ...]         # (h_s, multiplicity)
    genus: int

    @property
    def ab_dimension(self) -> int:
        dim = sum((q - 1) * (self.r - 1) for q, _, _ in self.ab_blocks)
        dim += sum((self.r - 1) * mult for _, mult in self.extra_r_blocks)
        return dim

    @property
    def toric_dimension(self) -> int:
        return sum((self.r - 1) * mult for _, mult in self.toric_blocks)

    def dimension_identity_holds(self) -> bool:
        x_total = sum(self.qs)
        expected = (self.r - 1) * (x_total - 2 + self.gammas[-1])
        return (self.ab_dimension + 2 * self.toric_dimension == expected
                and expected == 2 * self.genus)

    def lambda_blocks(self) -> list[tuple[int, int, int]]:
        """Per-prime-above-ell characters: (q, q-part exponent, delta)."""
        out = []
        for q, D, delta in self.ab_blocks:
            for j in range(1, q):
                out.append((q, (j * D) % q, delta))
        return out

    def trivial_multiplicity(self) -> int:
        """Trivial characters inside the abelian part, per lambda."""
        return sum(mult for delta, mult in self.extra_r_blocks if delta == 0)


def inertia_decomposition(profile: VProfile, r: int) -> InertiaDecomp:
    if profile.kind != "standard":
        raise ValueError("inertia decomposition requires a standard profile")
    qs, hs = profile.qs, profile.hs
    t = len(qs)
    heights = list(hs) + [0]
    Ds = tuple(heights[s] - heights[s + 1] for s in range(t))
    xs = profile.x_values  # x_1 .. x_{t+1}
    gammas = tuple(0 if x % r == 0 else 1 for x in xs)
    deltas = tuple(0 if (qs[s] * heights[s] + Ds[s] * xs[s]) % r == 0 else 1
                   for s in range(t))
    ab_blocks = tuple((qs[s], Ds[s], deltas[s]) for s in range(t))
    extra = tuple((deltas[s], gammas[s] + gammas[s + 1] - 1) for s in range(t))
    toric = tuple((heights[s], 1 - gammas[s]) for s in range(1, t))
    genus2 = (r - 1) * (xs[-1] - 2 + gammas[-1])
    decomp = InertiaDecomp(r, qs, hs, Ds, gammas, deltas,
                           ab_blocks, extra, toric, genus2 // 2)
    assert decomp.dimension_identity_holds()
    return decomp


# -- good reduction at the ramified prime -----------------------------------


@dataclasses.dataclass(frozen=True)
class GoodReductionReport:
    ok: bool
    conditions: tuple[tuple[str, bool], ...]

    def failing(self) -> list[str]:
        return [name for name, passed in self.conditions if not passed]


def good_reduction_at_r_report(f: CycPoly, r: int) -> GoodReductionReport:
    """Coefficient congruences forcing good reduction at r (scaled model).

    With d = r*s: a_0 = b*pi^(r(s-1)) mod pi^(rs) for some b = 1 mod pi^r;
    a_(d-1) = u*pi mod pi^2 with u a pi-unit; a_j = 0 mod pi^(d-j) for
    1 <= j <= d-2.
    """
    d = f.degree
    if d % r != 0:
        raise ValueError(f"degree {d} is not divisible by r={r}")
    if not f.is_monic():
        raise ValueError("good-reduction check requires monic f")
    s = d // r
    conditions = []

    a0 = f.coeffs[0]
    pi_pow = CycElt.pi(r) ** (r * (s - 1))
    try:
        b = a0.exact_div(pi_pow)
        cond_a0 = (b - 1).pi_valuation() >= r
    except (ValueError, ZeroDivisionError):
        cond_a0 = False
    conditions.append(("a0_congruence", cond_a0))

    conditions.append(("a_dminus1_uniformizer",
                       f.coeff(d - 1).pi_valuation() == 1))

    middle_ok = all(f.coeff(j).pi_valuation() >= d - j for j in range(1, d - 1))
    conditions.append(("middle_coefficients", middle_ok))

    return GoodReductionReport(all(p for _, p in conditions), tuple(conditions))


def good_reduction_at_r_check(f: CycPoly, r: int) -> bool:
    return good_reduction_at_r_report(f, r).ok


def good_reduction_shape_i_check(f: CycPoly, r: int) -> bool:
    """The companion unscaled normal form: a_0 - pi^(-r) integral, a_(d-1) unit.

    Accepts polynomials whose constant term carries the pi^(-r) pole; all
    coefficients here are required integral except that pole, so the check is
    phrased on pi^r * a_0.
    """
    d = f.degree
    if d % r != 0 or not f.is_monic():
        return False
    scaled = f.coeffs[0] * CycElt.pi(r) ** r - 1
    if not scaled.is_integral():
        return False
    if scaled.as_integral().pi_valuation() < r:
        return False
    if f.coeff(d - 1).pi_valuation() != 0:
        return False
    return all(f.coeff(j).is_integral() for j in range(1, d - 1))
