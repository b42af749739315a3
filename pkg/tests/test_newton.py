"""Tests for Newton polygons, profile detection, and inertia blocks.

Frozen expected polygons for the worked curves were derived by hand from the
coefficient valuations and double-checked with the valuation oracle.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from supercert.cyclotomic import CycElt
from supercert.cycpoly import CycPoly
from supercert.newton import (InertiaDecomp, VProfile, detect_v_profile,
                              good_reduction_at_r_check,
                              good_reduction_at_r_report,
                              good_reduction_shape_i_check,
                              inertia_decomposition, newton_polygon,
                              transvection_shape_check)
from supercert.places import place_by_name, places_above, valuation


def curve_r3_d12() -> CycPoly:
    """x^12 + pi x^11 + 7 pi^9 x^3 + 14 pi^10 x^2 + 406 pi^9 over Z[zeta_3]."""
    pi = CycElt.pi(3)
    coeffs = {12: CycElt.integer(3, 1), 11: pi, 3: 7 * pi**9,
              2: 14 * pi**10, 0: 406 * pi**9}
    return CycPoly.from_coeffs(3, [coeffs.get(k, 0) for k in range(13)])


def curve_r7_d14() -> CycPoly:
    """x^14 + pi x^13 + 2 pi^7 x^7 + 6 pi^12 x^2 + 246 pi^7 over Z[zeta_7]."""
    pi = CycElt.pi(7)
    coeffs = {14: CycElt.integer(7, 1), 13: pi, 7: 2 * pi**7,
              2: 6 * pi**12, 0: 246 * pi**7}
    return CycPoly.from_coeffs(7, [coeffs.get(k, 0) for k in range(15)])


class TestNewtonPolygon:
    def test_first_curve_at_29(self):
        poly = newton_polygon(curve_r3_d12(), place_by_name(3, "29:0"))
        assert poly.vertices == ((0, 1), (2, 0), (12, 0))

    def test_first_curve_at_2(self):
        poly = newton_polygon(curve_r3_d12(), place_by_name(3, "2:0"))
        assert poly.vertices == ((0, 1), (3, 0), (12, 0))

    def test_first_curve_at_7_both_places(self):
        for pl in places_above(3, 7):
            poly = newton_polygon(curve_r3_d12(), pl)
            assert poly.vertices == ((0, 1), (11, 0), (12, 0))

    def test_seventh_curve_at_2(self):
        poly = newton_polygon(curve_r7_d14(), place_by_name(7, "2:0"))
        assert poly.vertices == ((0, 1), (13, 0), (14, 0))

    def test_seventh_curve_at_3(self):
        poly = newton_polygon(curve_r7_d14(), place_by_name(7, "3:0"))
        assert poly.vertices == ((0, 1), (7, 0), (14, 0))

    def test_seventh_curve_at_41(self):
        poly = newton_polygon(curve_r7_d14(), place_by_name(7, "41:0"))
        assert poly.vertices == ((0, 1), (2, 0), (14, 0))

    def test_slopes_increase(self):
        rng = random.Random(0)
        pl = place_by_name(3, "5:0")
        for _ in range(30):
            coeffs = [CycElt.integer(3, rng.choice([0, 1, 5, 25, 125, 7]))
                      for _ in range(8)] + [CycElt.integer(3, 1)]
            f = CycPoly.from_coeffs(3, coeffs)
            if f.coeffs[0].is_zero():
                continue
            slopes = [s for _, s in newton_polygon(f, pl).segments]
            assert slopes == sorted(slopes)
            assert len(set(slopes)) == len(slopes)


class TestDetectVProfile:
    def test_first_curve_degree_2_witness(self):
        prof = detect_v_profile(curve_r3_d12(), place_by_name(3, "29:0"))
        assert prof is not None and prof.kind == "standard"
        assert (prof.qs, prof.hs) == ((2,), (1,))
        assert prof.shift.is_zero()

    def test_first_curve_transvection_witness(self):
        prof = detect_v_profile(curve_r3_d12(), place_by_name(3, "2:0"))
        assert prof is not None and prof.kind == "transvection"
        assert prof.hs == (1,) and not prof.r_divides_h

    def test_first_curve_degree_11_witness(self):
        prof = detect_v_profile(curve_r3_d12(), place_by_name(3, "7:0"))
        assert prof is not None and prof.kind == "standard"
        assert (prof.qs, prof.hs) == ((11,), (1,))

    def test_seventh_curve_witnesses(self):
        f = curve_r7_d14()
        prof2 = detect_v_profile(f, place_by_name(7, "2:0"))
        assert prof2 is not None and (prof2.qs, prof2.hs) == ((13,), (1,))
        prof3 = detect_v_profile(f, place_by_name(7, "3:0"))
        assert prof3 is not None and prof3.kind == "transvection"
        prof41 = detect_v_profile(f, place_by_name(7, "41:0"))
        assert prof41 is not None and (prof41.qs, prof41.hs) == ((2,), (1,))

    def test_example_pure_power_shape(self):
        # x^r - p has the transvection polygon (0,1)-(r,0).
        f = CycPoly.from_coeffs(3, [-5, 0, 0, 1])
        pl = place_by_name(3, "5:0")
        assert transvection_shape_check(f, pl, 3)

    def test_transvection_false_at_degree_2_witness(self):
        assert not transvection_shape_check(curve_r3_d12(),
                                            place_by_name(3, "29:0"), 3)

    def test_shift_search_moves_cluster_to_origin(self):
        # ((x-1)^2 - 29)(x^3 + 2): after the shift a = -1 the polygon at 29
        # is (0,1)-(2,0)-(5,0).
        g = CycPoly.from_coeffs(3, [1 - 29, -2, 1])
        h = CycPoly.from_coeffs(3, [2, 0, 0, 1])
        prof = detect_v_profile(g * h, place_by_name(3, "29:0"))
        assert prof is not None and (prof.qs, prof.hs) == ((2,), (1,))
        assert prof.shift == CycElt.integer(3, -1)

    def test_shift_refinement_finds_deep_center(self):
        # ((x-8)^2 - 7^3)(x+3) at p=7: the first-order shift gives an
        # irregular (0,2)-(2,0) polygon; Newton-refining toward the critical
        # point exposes the regular height-3 profile.
        g = CycPoly.from_coeffs(3, [64 - 343, -16, 1])
        h = CycPoly.from_coeffs(3, [3, 1])
        prof = detect_v_profile(g * h, place_by_name(3, "7:0"))
        assert prof is not None and (prof.qs, prof.hs) == ((2,), (3,))
        assert valuation(prof.shift + 1, place_by_name(3, "7:0")) >= 1

    def test_unclassifiable_place_returns_none(self):
        # x^6 - 25 at p=5: polygon (0,2)-(6,0) has q=6 composite.
        f = CycPoly.from_coeffs(3, [-25, 0, 0, 0, 0, 0, 1])
        assert detect_v_profile(f, place_by_name(3, "5:0")) is None

    def test_goldbach_flat_part_rule(self):
        # (x^5-11)(x^7-11) over r=3: v-degree (5,7), 5+7 = 12 divisible by 3,
        # so the flat part must be empty -- and it is (degree 12 total).
        g = CycPoly.from_coeffs(3, [-11, 0, 0, 0, 0, 1])
        h = CycPoly.from_coeffs(3, [-11, 0, 0, 0, 0, 0, 0, 1])
        prof = detect_v_profile(g * h, place_by_name(3, "11:0"))
        assert prof is not None and prof.qs == (5, 7) and prof.hs == (2, 1)
        assert prof.separable_part_degree == 0


class TestInertiaDecomposition:
    def example_profile(self, qs, hs, kind="standard") -> VProfile:
        return VProfile(kind, CycElt.integer(3, 0), tuple(qs), tuple(hs), 0)

    def test_order_2r_shape(self):
        # v-degree 2, height 1: one chi_2 x chi_r block per lambda; globally
        # r-1 nontrivial characters, all of order 2r.
        for r in (3, 5, 7, 11):
            decomp = inertia_decomposition(self.example_profile([2], [1]), r)
            assert decomp.ab_blocks == ((2, 1, 1),)
            assert decomp.lambda_blocks() == [(2, 1, 1)]
            assert decomp.ab_dimension == r - 1
            assert decomp.toric_dimension == 0
            assert decomp.trivial_multiplicity() == 0

    def test_two_prime_shape_heights_3_1(self):
        # v-degree (q1, q2) height (3,1) with q1+q2 not divisible by r:
        # q1-part exponents 2j, both twists nontrivial (for r not dividing
        # 3*q1), matching the displayed chi_{q1}^{2j} (x) chi_j^3 blocks.
        r, q1, q2 = 5, 3, 7  # 3+7=10 = 2*5... pick q2=11 instead
        r, q1, q2 = 5, 3, 11
        decomp = inertia_decomposition(self.example_profile([q1, q2], [3, 1]), r)
        assert decomp.Ds == (2, 1)
        assert decomp.ab_blocks == ((q1, 2, 1), (q2, 1, 1))
        got_q1 = [(q, e) for q, e, _ in decomp.lambda_blocks() if q == q1]
        assert got_q1 == [(q1, (2 * j) % q1) for j in range(1, q1)]
        assert decomp.deltas == (1, 1)
        assert decomp.dimension_identity_holds()

    def test_two_prime_shape_delta_vanishes_for_r3(self):
        # Same shape with r=3: q1*h1 = 3*q1 is divisible by 3, so the first
        # twist is trivial (the displayed cube of an order-3 character).
        decomp = inertia_decomposition(self.example_profile([5, 7], [3, 1]), 3)
        assert decomp.deltas[0] == 0

    def test_goldbach_shape(self):
        # v-degree (q1,q2), heights (2,1), r | q1+q2: first block twisted,
        # second untwisted; no toric part, no trivial part.
        r, q1, q2 = 3, 5, 7
        decomp = inertia_decomposition(self.example_profile([q1, q2], [2, 1]), r)
        assert decomp.ab_blocks == ((q1, 1, 1), (q2, 1, 0))
        assert decomp.gammas == (0, 1, 0)
        assert decomp.toric_dimension == 0
        assert decomp.trivial_multiplicity() == 0
        assert decomp.ab_dimension == (r - 1) * (q1 + q2 - 2)

    def test_toric_blocks_appear_iff_r_divides_interior_x(self):
        # qs = (3, 7) over r=3: x_2 = 3 is divisible by r, so gamma_2 = 0
        # and a toric block of height h_2 appears.
        decomp = inertia_decomposition(self.example_profile([3, 7], [3, 1]), 5)
        assert decomp.toric_blocks == ((1, 0),)
        decomp2 = inertia_decomposition(self.example_profile([3, 7], [3, 1]), 3)
        assert decomp2.toric_blocks == ((1, 1),)
        assert decomp2.dimension_identity_holds()

    def test_transvection_profile_rejected(self):
        with pytest.raises(ValueError):
            inertia_decomposition(self.example_profile([3], [1], "transvection"), 3)

    def test_dimension_identity_random_profiles(self):
        rng = random.Random(42)
        primes = [2, 5, 7, 11, 13, 17, 19, 23]
        for _ in range(100):
            r = rng.choice([3, 7, 31])
            qs = sorted(rng.sample([q for q in primes if q != r],
                                   rng.randint(1, 4)))
            hs = sorted(rng.sample(range(1, 40), len(qs)), reverse=True)
            heights = hs + [0]
            if any(math.gcd(heights[s] - heights[s + 1], q) != 1
                   for s, q in enumerate(qs)):
                continue
            prof = self.example_profile(qs, hs)
            decomp = inertia_decomposition(prof, r)
            assert decomp.dimension_identity_holds()


class TestGoodReductionAtR:
    def test_first_curve_passes(self):
        assert good_reduction_at_r_check(curve_r3_d12(), 3)

    def test_seventh_curve_passes(self):
        assert good_reduction_at_r_check(curve_r7_d14(), 7)

    def test_x12_plus_x_plus_1_fails_on_a0(self):
        f = CycPoly.from_coeffs(3, [1, 1] + [0] * 10 + [1])
        report = good_reduction_at_r_report(f, 3)
        assert not report.ok and "a0_congruence" in report.failing()

    def test_wrong_degree_rejected(self):
        with pytest.raises(ValueError):
            good_reduction_at_r_check(CycPoly.from_coeffs(3, [1] * 14), 3)

    def test_unit_congruence_is_checked(self):
        # Same shape as the first worked curve but with 407 pi^9 as constant
        # term: 406 = 1 mod pi^3 holds while 407 = 2 mod pi does not.
        pi = CycElt.pi(3)
        coeffs = {12: CycElt.integer(3, 1), 11: pi, 0: 407 * pi**9}
        f = CycPoly.from_coeffs(3, [coeffs.get(k, 0) for k in range(13)])
        report = good_reduction_at_r_report(f, 3)
        assert "a0_congruence" in report.failing()

    def test_shape_i_companion(self):
        from fractions import Fraction
        # x^6 + 5 x^5 + (pi^-3 + 1): scale the pole into Fraction coeffs.
        r = 3
        pi = CycElt.pi(r)
        pole = CycElt(r, tuple(Fraction(c, 3) for c in (pi.cofactor()).coeffs))
        a0 = pole * pole * pole + 1  # (1/pi)^3 + 1 since pi * cofactor = 3
        f = CycPoly.from_coeffs(r, [a0, 0, 0, 0, 0, CycElt.integer(r, 5),
                                    CycElt.integer(r, 1)])
        assert good_reduction_shape_i_check(f, r)
        g = CycPoly.from_coeffs(r, [CycElt.integer(r, 1)] * 7)
        assert not good_reduction_shape_i_check(g, r)
