"""End-to-end certification for y^r = f(x) over Q(zeta_r).

The pipeline checks good reduction at the ramified prime, factors the norm
of disc(f), classifies every bad place by its local polygon shape, builds a
hypothesis route from the witness profiles, and emits a deterministic JSON
certificate: the excluded prime set together with, for every congruence
class of ell mod r, a descriptor of the guaranteed mod-ell image.
"""
from __future__ import annotations

import dataclasses
import json
import math
from typing import Optional

from .conditions import HypothesisRoute, RouteFailure, build_route
from .cyclotomic import CycElt
from .cycpoly import CycPoly, discriminant
from .endochar import du_congruence_classes, m_exponents
from .factorint import DEFAULT_RHO_BUDGET, Factorization, factor, is_prime
from .newton import VProfile, detect_v_profile, good_reduction_at_r_report
from .places import Place, places_above, valuation

DEFAULT_WITNESS_BOUND = 100


class CertifyError(Exception):
    """Unusable input (as opposed to a well-formed but invalid curve)."""


@dataclasses.dataclass(frozen=True)
class BadPlaceReport:
    place: Place
    disc_valuation: int
    classification: str   # pi_place | prime_v_degree | goldbach_v_degree
    #                     | unclassified
    profile: Optional[VProfile]

    def to_dict(self) -> dict:
        out = {
            "place": self.place.name,
            "residue_characteristic": str(self.place.p),
            "disc_valuation": self.disc_valuation,
            "classification": self.classification,
        }
        if self.profile is not None:
            out["v_degree"] = list(self.profile.qs)
            out["height"] = list(self.profile.hs)
            out["kind"] = self.profile.kind
        return out


@dataclasses.dataclass(frozen=True)
class Certificate:
    r: int
    d: int
    coeffs: tuple[tuple[int, ...], ...]
    valid: bool
    failure: Optional[str]
    genus: int
    n: int
    good_reduction_at_r: bool
    disc_norm: Optional[int]
    factorization: Optional[Factorization]
    bad_places: tuple[BadPlaceReport, ...]
    route: Optional[HypothesisRoute]
    excluded_primes: tuple[int, ...]
    image_by_class: tuple[dict, ...]
    du_classes: tuple[tuple[int, tuple[int, ...]], ...]
    det_exponent_pair: Optional[tuple[int, int]]
    discrepancy_notes: tuple[str, ...]
    grh_flag: bool

    def bad_residue_characteristics(self) -> frozenset[int]:
        return frozenset(rep.place.p for rep in self.bad_places)

    def to_dict(self) -> dict:
        route_dict = None
        if self.route is not None:
            route_dict = {
                "route": self.route.route,
                "q_values": {k: v for k, v in self.route.q_values},
                "witnesses": {k: v for k, v in self.route.witnesses},
                "s_irr": [str(x) for x in sorted(self.route.s_irr)],
                "s_prim": [str(x) for x in sorted(self.route.s_prim)],
                "p3": str(self.route.p3),
                "p4": str(self.route.p4),
            }
        fact_list = []
        if self.factorization is not None:
            prov = dict(self.factorization.provenance)
            fact_list = [{"prime": str(p), "exponent": e,
                          "provenance": "hinted"
                          if prov.get(p) == "hint" else "blind"}
                         for p, e in sorted(self.factorization.factors)]
        return {
            "input": {"r": self.r, "d": self.d,
                      "coeffs": [list(c) for c in self.coeffs]},
            "valid": self.valid,
            "failure": self.failure,
            "genus": self.genus,
            "n": self.n,
            "good_reduction_at_r": self.good_reduction_at_r,
            "discriminant_norm": None if self.disc_norm is None
            else str(self.disc_norm),
            "discriminant_norm_factorization": fact_list,
            "bad_places": [rep.to_dict() for rep in self.bad_places],
            "route": route_dict,
            "excluded_primes": {
                "lower_bound": f"ell > {self.n}/2",
                "primes": [str(p) for p in self.excluded_primes],
            },
            "image_by_class": list(self.image_by_class),
            "du_classes": [{"modulus": m, "residues": list(res)}
                           for m, res in self.du_classes],
            "det_exponent_pair": None if self.det_exponent_pair is None
            else list(self.det_exponent_pair),
            "discrepancy_notes": list(self.discrepancy_notes),
            "grh_flag": self.grh_flag,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _poly_from_int_lists(r: int, coeffs) -> CycPoly:
    return CycPoly.from_int_lists(r, coeffs)


def _order_mod(a: int, r: int) -> int:
    i = 1
    while pow(a, i, r) != 1:
        i += 1
    return i


def _image_by_class(r: int, n: int, genus: int,
                    du: list) -> tuple[list[dict], Optional[tuple[int, int]]]:
    """Per congruence class of ell mod r, what the image provably contains
    (or equals, for the classes with exact results)."""
    out = []
    det_pair = None
    if r == 3:
        det_pair = (-(-genus // 3), 6)
    for c in range(1, r):
        i = _order_mod(c, r)
        entry: dict = {"residue_mod_r": c, "level": i}
        if i % 2:
            entry["family"] = "GL"
            entry["contains"] = {"derived": "SL", "n": n, "field_level": i}
        else:
            entry["family"] = "GU"
            entry["contains"] = {"derived": "SU", "n": n,
                                 "field_level": i // 2}
        if c == 1:
            entry["exact"] = {"family": "GL", "n": n, "field_level": 1,
                              "full_determinant": True}
        if r == 3:
            entry["exact"] = {
                "family": "GL" if i % 2 else "GU", "n": n,
                "field_level": max(i // 2, 1),
                "det_exponent_pair": list(det_pair),
            }
        if c == r - 1 and du:
            entry["du_refinement"] = [{"modulus": m, "residues": list(res)}
                                      for m, res in du]
        out.append(entry)
    return out, det_pair


def _classify_place(f: CycPoly, place: Place, r: int, d: int,
                    disc_val: int) -> BadPlaceReport:
    if place.is_ramified:
        return BadPlaceReport(place, disc_val, "pi_place", None)
    profile = detect_v_profile(f, place)
    if profile is None:
        return BadPlaceReport(place, disc_val, "unclassified", None)
    if profile.kind == "transvection":
        return BadPlaceReport(place, disc_val, "prime_v_degree", profile)
    if len(profile.qs) == 1:
        return BadPlaceReport(place, disc_val, "prime_v_degree", profile)
    if len(profile.qs) == 2 and sum(profile.qs) == d:
        return BadPlaceReport(place, disc_val, "goldbach_v_degree", profile)
    return BadPlaceReport(place, disc_val, "unclassified", None)


def _small_primes_upto(bound: int) -> list[int]:
    return [p for p in range(2, bound + 1) if is_prime(p)]


def certify(r: int, coeffs, hints: Optional[list[int]] = None,
            budget: int = DEFAULT_RHO_BUDGET,
            witness_bound: int = DEFAULT_WITNESS_BOUND) -> Certificate:
    f = _poly_from_int_lists(r, coeffs)
    d = f.degree
    if not f.is_monic():
        raise CertifyError("f must be monic")
    if d % (2 * r):
        raise CertifyError(f"2r = {2 * r} must divide d = deg f = {d}")
    if d < 12:
        raise CertifyError(f"deg f = {d} < 12")
    genus = (r - 1) * (d - 2) // 2
    n = d - 2
    echo = tuple(tuple(int(x) for x in c.coeffs) for c in f.coeffs)

    def fail(reason: str, good_r: bool = False, disc_norm=None,
             factorization=None, bad=()):
        return Certificate(r, d, echo, False, reason, genus, n, good_r,
                           disc_norm, factorization, tuple(bad), None, (),
                           (), (), None, (), False)

    report = good_reduction_at_r_report(f, r)
    if not report.ok:
        return fail("good reduction at r: failing condition "
                    + ", ".join(report.failing()))

    disc = discriminant(f)
    if disc.is_zero():
        return fail("discriminant vanishes", good_r=True)
    norm = abs(disc.norm())
    fact = factor(int(norm), budget=budget, hints=hints)
    if not fact.complete:
        raise CertifyError(
            f"discriminant norm has an unresolved composite cofactor "
            f"({fact.cofactor}); supply hint primes")

    bad: list[BadPlaceReport] = []
    profiles: dict[Place, VProfile] = {}
    for p in sorted(fact.primes()):
        for place in places_above(r, p):
            v = valuation(disc, place)
            if v <= 0:
                continue
            rep = _classify_place(f, place, r, d, int(v))
            bad.append(rep)
            if rep.profile is not None:
                profiles[place] = rep.profile

    unclassified = [rep for rep in bad if rep.classification == "unclassified"]
    if unclassified:
        return fail("unclassified bad place "
                    + ", ".join(rep.place.name for rep in unclassified),
                    good_r=True, disc_norm=int(norm), factorization=fact,
                    bad=bad)

    # Witness pool: bad-place profiles plus profiles at small good places.
    bad_ps = {rep.place.p for rep in bad}
    for p in _small_primes_upto(witness_bound):
        if p == r or p in bad_ps:
            continue
        for place in places_above(r, p):
            prof = detect_v_profile(f, place)
            if prof is not None:
                profiles[place] = prof

    try:
        route = build_route(r, d, profiles)
    except RouteFailure as exc:
        return fail(f"no hypothesis route: {exc}", good_r=True,
                    disc_norm=int(norm), factorization=fact, bad=bad)

    du = du_congruence_classes(r, d)
    image, det_pair = _image_by_class(r, n, genus, du)
    excluded = set(_small_primes_upto(n // 2))
    excluded |= route.excluded_primes()
    excluded |= {rep.place.p for rep in bad}
    return Certificate(
        r, d, echo, True, None, genus, n, True, int(norm), fact,
        tuple(bad), route, tuple(sorted(excluded)), tuple(image),
        tuple(du), det_pair, route.discrepancy_notes, route.grh_assumed)


def certificate_from_json(text: str) -> dict:
    return json.loads(text)


def recertify(cert_dict: dict, hints: Optional[list[int]] = None,
              budget: int = DEFAULT_RHO_BUDGET) -> Certificate:
    """Re-run the pipeline on a certificate's input echo."""
    inp = cert_dict["input"]
    return certify(inp["r"], inp["coeffs"], hints=hints, budget=budget)


def search_template(r: int, d: int, prime_pool) -> list[CycPoly]:
    """Candidate polynomials x^d + pi x^{d-1} + c pi^e x^3 + 2c pi^{e+1} x^2
    + c' pi^e with e = d - r, c a pool prime and c' a squarefree pool
    product with c' = 1 mod r^2, filtered by the reduction congruences."""
    if d % (2 * r):
        raise ValueError(f"2r = {2 * r} must divide d = {d}")
    pool = sorted(set(prime_pool))
    if not pool:
        return []
    e = d - r
    pi = CycElt.pi(r)
    subset_products = []
    for mask in range(1, 1 << len(pool)):
        prod = 1
        for k, p in enumerate(pool):
            if mask >> k & 1:
                prod *= p
        if prod % (r * r) == 1:
            subset_products.append(prod)
    out = []
    for c in pool:
        for cp in sorted(set(subset_products)):
            coeffs = [CycElt.integer(r, 0)] * (d + 1)
            coeffs[0] = cp * pi**e
            coeffs[2] = 2 * c * pi**(e + 1)
            coeffs[3] = c * pi**e
            coeffs[d - 1] = pi
            coeffs[d] = CycElt.integer(r, 1)
            f = CycPoly.from_coeffs(r, coeffs)
            if good_reduction_at_r_report(f, r).ok:
                out.append(f)
    return out
