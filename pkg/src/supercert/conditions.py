"""Arithmetic hypotheses for the large-image certificate.

Two irreducibility conditions and two primitivity conditions are assembled
into certified routes:

* route "A": a Goldbach split q1 + q2 = d plus a third prime q3 < d, with
  witness places whose residue field sizes are primitive roots;
* route "B-PrimI": d - 1 prime, with the small-field primitivity argument
  (needs an extra witness prime q_r when r is 23 or 31, and GRH when r=31);
* route "B-PrimII": d - 1 prime plus odd class number and a Goldbach pair.

Every route additionally carries the two structural witnesses the
certificate requires: a place where f has v-degree 2 (order-2r inertia) and one
where it has v-degree r (transvection), with residue characteristics outside
the route's excluded sets.
"""
from __future__ import annotations

import dataclasses
from typing import Optional

from .factorint import is_prime
from .newton import VProfile
from .places import Place

# Class numbers h(Q(zeta_r)) for odd primes r <= 97, from the standard
# published tables (h = h- * h+ with h+ = 1 throughout this range).
CLASS_NUMBERS: dict[int, int] = {
    3: 1, 5: 1, 7: 1, 11: 1, 13: 1, 17: 1, 19: 1,
    23: 3, 29: 8, 31: 9, 37: 37, 41: 121, 43: 211, 47: 695,
    53: 4889, 59: 41241, 61: 76301, 67: 853513, 71: 3882809,
    73: 11957417, 79: 100146415, 83: 838216959, 89: 13379363737,
    97: 411322824001,
}


def class_number(r: int) -> int:
    if r not in CLASS_NUMBERS:
        raise ValueError(f"class number of the {r}-th cyclotomic field is "
                         f"not in the embedded table (odd primes <= 97 only)")
    return CLASS_NUMBERS[r]


def class_number_odd(r: int) -> bool:
    return class_number(r) % 2 == 1


def goldbach_pairs(d: int) -> list[tuple[int, int]]:
    """All prime pairs q1 < q2 with q1 + q2 = d."""
    if d % 2 or d < 6:
        raise ValueError("goldbach_pairs expects even d >= 6")
    return [(q, d - q) for q in range(3, d // 2)
            if is_prime(q) and is_prime(d - q)]


def find_prim1_prime(d: int) -> Optional[int]:
    """Least prime q with d/2 < q < d and q = 2 mod 3."""
    for q in range(d // 2 + 1, d):
        if q % 3 == 2 and is_prime(q):
            return q
    return None


def is_primitive_root(m: int, q: int) -> bool:
    """Whether m generates (Z/q)^* for prime q."""
    if m % q == 0:
        raise ValueError(f"{m} is divisible by {q}")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    order_target = q - 1
    n = order_target
    factors = set()
    for p in range(2, int(n**0.5) + 1):
        while n % p == 0:
            factors.add(p)
            n //= p
    if n > 1:
        factors.add(n)
    return all(pow(m, order_target // p, q) != 1 for p in factors)


class RouteFailure(Exception):
    """No hypothesis route could be assembled; lists the first failing
    sub-condition of each attempted route."""

    def __init__(self, reasons: dict[str, str]):
        self.reasons = reasons
        detail = "; ".join(f"{route}: {why}" for route, why in reasons.items())
        super().__init__(f"no valid hypothesis route ({detail})")


@dataclasses.dataclass(frozen=True)
class HypothesisRoute:
    """A fully-witnessed combination of irreducibility and primitivity
    hypotheses, together with the structural degree-2 and degree-r
    witnesses."""

    route: str                       # "A" | "B-PrimI" | "B-PrimII"
    r: int
    d: int
    q_values: tuple[tuple[str, int], ...]       # role -> prime (q, q1, ...)
    witnesses: tuple[tuple[str, str], ...]      # role -> place name
    s_irr: frozenset[int]
    s_prim: frozenset[int]
    p3: int
    p4: int
    q_r: Optional[int] = None
    grh_assumed: bool = False
    discrepancy_notes: tuple[str, ...] = ()

    def excluded_primes(self) -> frozenset[int]:
        return frozenset(self.s_irr | self.s_prim | {self.p3, self.p4, self.r})


def _residue_primitive_root(place: Place, q: int) -> tuple[bool, bool]:
    """(strict, rational): whether |k_place| resp. the rational prime below
    is a primitive root modulo q."""
    if place.residue_order % q == 0:
        return False, False
    strict = is_primitive_root(place.residue_order, q)
    rational = place.p % q != 0 and is_primitive_root(place.p, q)
    return strict, rational


def _single_degree_witnesses(profiles: dict[Place, VProfile],
                             q: int) -> list[Place]:
    out = [pl for pl, prof in profiles.items()
           if prof.kind == "standard" and prof.qs == (q,)]
    return sorted(out, key=lambda pl: (pl.p, pl.index))


def _pair_degree_witnesses(profiles: dict[Place, VProfile],
                           q1: int, q2: int) -> list[Place]:
    out = [pl for pl, prof in profiles.items()
           if prof.kind == "standard" and prof.qs == (q1, q2)]
    return sorted(out, key=lambda pl: (pl.p, pl.index))


def _transvection_witnesses(profiles: dict[Place, VProfile]) -> list[Place]:
    out = [pl for pl, prof in profiles.items() if prof.kind == "transvection"]
    return sorted(out, key=lambda pl: (pl.p, pl.index))


def _pick_prim_root_witness(candidates: list[Place],
                            qs: list[int]) -> tuple[Optional[Place], list[str]]:
    """First candidate whose residue size is a primitive root mod every q in
    qs; falls back to the rational-prime check, reporting the relaxation."""
    for pl in candidates:
        if all(_residue_primitive_root(pl, q)[0] for q in qs):
            return pl, []
    for pl in candidates:
        checks = [_residue_primitive_root(pl, q) for q in qs]
        if all(rational for _, rational in checks):
            notes = [f"place {pl.name}: residue field size {pl.residue_order} "
                     f"is not a primitive root modulo {q}, but the rational "
                     f"prime {pl.p} below it is; hypothesis verified for the "
                     f"rational prime only"
                     for (strict, _), q in zip(checks, qs) if not strict]
            return pl, notes
    return None, []


def _prim_i(r: int, d: int, profiles: dict[Place, VProfile],
            exclude: frozenset[int]):
    """(Prim I) data: (s_prim, q_r, p_r place, grh, notes) or a failure str."""
    if not (3 <= r <= 23 or r == 31):
        return f"(Prim I) needs 3 <= r <= 23 or r = 31, got r={r}"
    if r not in (23, 31):
        return frozenset(), None, None, False, []
    for q_r in range(d // 2 + 1, d):
        if q_r % 3 != 2 or not is_prime(q_r) or q_r in exclude:
            continue
        witness, notes = _pick_prim_root_witness(
            _single_degree_witnesses(profiles, q_r), [q_r])
        if witness is not None:
            return (frozenset({q_r, witness.p}), q_r, witness, r == 31, notes)
    return f"(Prim I) found no witnessed prime d/2 < q_r < d, q_r = 2 mod 3"


def _structural_witnesses(r: int, profiles: dict[Place, VProfile],
                          banned: frozenset[int]):
    """The v-degree-2 and v-degree-r witnesses with p3 != p4, both outside
    the route's prime sets. Returns (p3 place, p4 place) or a failure str."""
    deg2 = [pl for pl in _single_degree_witnesses(profiles, 2)
            if pl.p not in banned]
    trans = [pl for pl in _transvection_witnesses(profiles)
             if pl.p not in banned]
    for pl3 in deg2:
        for pl4 in trans:
            if pl3.p != pl4.p:
                return pl3, pl4
    if not deg2:
        return "no v-degree-2 witness outside the excluded primes"
    if not trans:
        return "no v-degree-r (transvection) witness outside the excluded primes"
    return "v-degree-2 and v-degree-r witnesses share a residue characteristic"


def build_route(r: int, d: int,
                profiles: dict[Place, VProfile]) -> HypothesisRoute:
    """Assemble a hypothesis route from detected profiles, preferring B."""
    if d % (2 * r) != 0:
        raise RouteFailure({"precondition": f"2r = {2*r} does not divide d = {d}"})
    if d < 12:
        raise RouteFailure({"precondition": f"d = {d} < 12"})

    failures: dict[str, str] = {}

    # ---- route B (Irred II) -------------------------------------------
    q = d - 1
    irred2 = None
    if not is_prime(q):
        failures["B"] = f"(Irred II) d-1 = {q} is not prime"
    else:
        witness, notes = _pick_prim_root_witness(
            _single_degree_witnesses(profiles, q), [q])
        if witness is None:
            failures["B"] = (f"(Irred II) no witnessed place with v-degree "
                             f"({q},) whose residue size is a primitive root")
        else:
            irred2 = (q, witness, notes)

    if irred2 is not None:
        q, p_place, irr_notes = irred2
        s_irr = frozenset({q, p_place.p})

        # B with (Prim I)
        prim = _prim_i(r, d, profiles, frozenset())
        if isinstance(prim, str):
            failures["B-PrimI"] = prim
        else:
            s_prim, q_r, pr_place, grh, prim_notes = prim
            ok = (not (s_irr & s_prim)) or (
                q_r == q and pr_place is not None and pr_place.p == p_place.p)
            if not ok:
                failures["B-PrimI"] = ("(B) set condition: S_irr and S_prim "
                                       "overlap without q = q_r, p = p_r")
            else:
                struct = _structural_witnesses(r, profiles, s_irr | s_prim)
                if isinstance(struct, str):
                    failures["B-PrimI"] = struct
                else:
                    pl3, pl4 = struct
                    witnesses = [("p", p_place.name), ("p3", pl3.name),
                                 ("p4", pl4.name)]
                    qv = [("q", q)]
                    if q_r is not None:
                        witnesses.append(("p_r", pr_place.name))
                        qv.append(("q_r", q_r))
                    return HypothesisRoute(
                        "B-PrimI", r, d, tuple(qv), tuple(witnesses),
                        s_irr, s_prim, pl3.p, pl4.p, q_r, grh,
                        tuple(irr_notes + prim_notes))

        # B with (Prim II)
        try:
            odd_h = class_number_odd(r)
        except ValueError as exc:
            odd_h = False
            failures["B-PrimII"] = str(exc)
        if odd_h:
            found = None
            for q1, q2 in goldbach_pairs(d):
                witness2, notes2 = _pick_prim_root_witness(
                    _pair_degree_witnesses(profiles, q1, q2), [q1, q2])
                if witness2 is None:
                    continue
                s_prim = frozenset({q1, q2, witness2.p})
                if s_irr & s_prim:
                    continue
                found = (q1, q2, witness2, notes2, s_prim)
                break
            if found is None:
                failures.setdefault(
                    "B-PrimII", "(Prim II) no witnessed disjoint prime pair "
                    f"q1 + q2 = {d}")
            else:
                q1, q2, witness2, notes2, s_prim = found
                struct = _structural_witnesses(r, profiles, s_irr | s_prim)
                if isinstance(struct, str):
                    failures["B-PrimII"] = struct
                else:
                    pl3, pl4 = struct
                    return HypothesisRoute(
                        "B-PrimII", r, d,
                        (("q", q), ("q1", q1), ("q2", q2)),
                        (("p", p_place.name), ("p1", witness2.name),
                         ("p3", pl3.name), ("p4", pl4.name)),
                        s_irr, s_prim, pl3.p, pl4.p, None, False,
                        tuple(irr_notes + notes2))
        elif "B-PrimII" not in failures:
            failures["B-PrimII"] = f"(Prim II) class number of r={r} is even"

    # ---- route A (Irred I) --------------------------------------------
    route_a_failure = "(Irred I) no witnessed configuration found"
    for q1, q2 in goldbach_pairs(d):
        witness1, notes1 = _pick_prim_root_witness(
            _pair_degree_witnesses(profiles, q1, q2), [q1, q2])
        if witness1 is None:
            route_a_failure = (f"(Irred I) no place with v-degree ({q1},{q2}) "
                               "and primitive-root residue size")
            continue
        for q3 in range(3, d):
            if not is_prime(q3) or q3 in (q1, q2):
                continue
            witness3, notes3 = _pick_prim_root_witness(
                _single_degree_witnesses(profiles, q3), [q3])
            if witness3 is None:
                continue
            s_irr = frozenset({q1, q2, q3, witness1.p, witness3.p})
            if len({q1, q2, q3, witness1.p, witness3.p}) != 5:
                route_a_failure = "(Irred I) S_irr has cardinality < 5"
                continue
            prim = _prim_i(r, d, profiles, frozenset())
            if isinstance(prim, str):
                route_a_failure = prim
                continue
            s_prim, q_r, pr_place, grh, prim_notes = prim
            inter = s_irr & s_prim
            allowed = ({q_r, pr_place.p} if pr_place is not None else set())
            if not inter <= allowed:
                route_a_failure = ("(A) S_irr and S_prim intersect outside "
                                   "{q_r, p_r}")
                continue
            if inter and not (q_r == q3 and pr_place.p == witness3.p):
                route_a_failure = ("(A) nontrivial intersection without "
                                   "q_r = q3 and p_r = p2")
                continue
            struct = _structural_witnesses(r, profiles, s_irr | s_prim)
            if isinstance(struct, str):
                route_a_failure = struct
                continue
            pl3, pl4 = struct
            witnesses = [("p1", witness1.name), ("p2", witness3.name),
                         ("p3", pl3.name), ("p4", pl4.name)]
            qv = [("q1", q1), ("q2", q2), ("q3", q3)]
            if q_r is not None:
                witnesses.append(("p_r", pr_place.name))
                qv.append(("q_r", q_r))
            return HypothesisRoute(
                "A", r, d, tuple(qv), tuple(witnesses), s_irr, s_prim,
                pl3.p, pl4.p, q_r, grh,
                tuple(notes1 + notes3 + prim_notes))
    failures["A"] = route_a_failure

    raise RouteFailure(failures)
