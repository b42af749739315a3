"""End-to-end certifier tests on the d=12 worked example."""
from __future__ import annotations

import pytest

from supercert.certifier import (CertifyError, certificate_from_json,
                                 certify, recertify, search_template)
from supercert.cyclotomic import CycElt
from supercert.cycpoly import CycPoly, discriminant
from supercert.factorint import factor

P21 = 751887821191463868553
P36 = 188189419441256467739625500157072019


def d12_coeffs():
    pi = CycElt.pi(3)
    c = {0: 406 * pi**9, 2: 14 * pi**10, 3: 7 * pi**9, 11: pi,
         12: CycElt.integer(3, 1)}
    zero = CycElt.integer(3, 0)
    return [list(map(int, c.get(k, zero).coeffs)) for k in range(13)]


@pytest.fixture(scope="module")
def d12_cert():
    return certify(3, d12_coeffs(), hints=[P21, P36])


class TestD12Certificate:
    def test_valid(self, d12_cert):
        assert d12_cert.valid and d12_cert.failure is None

    def test_bad_residue_characteristics(self, d12_cert):
        assert d12_cert.bad_residue_characteristics() == \
            {2, 3, 7, 29, 31, 1549, P21, P36}

    def test_excluded_primes(self, d12_cert):
        assert d12_cert.excluded_primes == \
            (2, 3, 5, 7, 11, 29, 31, 1549, P21, P36)

    def test_route_witnesses(self, d12_cert):
        route = d12_cert.route
        assert route.route == "B-PrimI"
        assert dict(route.q_values) == {"q": 11}
        assert dict(route.witnesses)["p"].startswith("7:")
        assert route.p3 == 29 and route.p4 == 2

    def test_witness_degrees(self, d12_cert):
        by_place = {rep.place.name: rep for rep in d12_cert.bad_places}
        p3_place = dict(d12_cert.route.witnesses)["p3"]
        p4_place = dict(d12_cert.route.witnesses)["p4"]
        assert by_place[p3_place].profile.qs == (2,)
        assert by_place[p4_place].profile.qs == (3,)
        assert by_place[p4_place].profile.kind == "transvection"

    def test_du_and_det(self, d12_cert):
        assert d12_cert.du_classes == ((36, (5, 29)),)
        assert d12_cert.det_exponent_pair == (4, 6)

    def test_image_by_class(self, d12_cert):
        classes = {e["residue_mod_r"]: e for e in d12_cert.image_by_class}
        assert classes[1]["family"] == "GL"
        assert classes[1]["exact"]["det_exponent_pair"] == [4, 6]
        assert classes[2]["family"] == "GU"
        assert classes[2]["du_refinement"] == [
            {"modulus": 36, "residues": [5, 29]}]

    def test_pi_place_classified(self, d12_cert):
        pi_reports = [rep for rep in d12_cert.bad_places
                      if rep.classification == "pi_place"]
        assert [rep.place.p for rep in pi_reports] == [3]

    def test_factorization_provenance(self, d12_cert):
        prov = dict(d12_cert.factorization.provenance)
        assert prov[P21] == "hint" and prov[P36] == "hint"
        assert prov[31] == "trial"


class TestDeterminismAndRoundTrip:
    def test_byte_identical_reruns(self, d12_cert):
        again = certify(3, d12_coeffs(), hints=[P21, P36])
        assert d12_cert.to_json() == again.to_json()

    def test_round_trip_revalidate(self, d12_cert):
        parsed = certificate_from_json(d12_cert.to_json())
        redone = recertify(parsed, hints=[P21, P36])
        assert redone.valid == d12_cert.valid
        assert redone.excluded_primes == d12_cert.excluded_primes

    def test_hint_monotonicity(self, d12_cert):
        more = certify(3, d12_coeffs(), hints=[P21, P36, 1000003])
        assert more.valid == d12_cert.valid
        assert more.excluded_primes == d12_cert.excluded_primes

    def test_independent_bad_set_rederivation(self, d12_cert):
        f = CycPoly.from_int_lists(3, d12_coeffs())
        fact = factor(abs(int(discriminant(f).norm())), hints=[P21, P36])
        assert fact.complete
        assert set(fact.primes()) == d12_cert.bad_residue_characteristics()


class TestFailures:
    def test_bad_a0_congruence(self):
        coeffs = [[1]] + [[1]] + [[0]] * 10 + [[1]]   # x^12 + x + 1
        cert = certify(3, coeffs)
        assert not cert.valid
        assert "a0_congruence" in cert.failure

    def test_non_monic_rejected(self):
        coeffs = [[1]] * 12 + [[2]]
        with pytest.raises(CertifyError):
            certify(3, coeffs)

    def test_degree_divisibility(self):
        with pytest.raises(CertifyError):
            certify(3, [[0]] * 14 + [[1]])

    def test_unresolved_cofactor_without_hints(self):
        with pytest.raises(CertifyError, match="cofactor"):
            certify(3, d12_coeffs(), budget=10**4)


class TestSearchTemplate:
    def test_regenerates_d12_curve(self):
        target = CycPoly.from_int_lists(3, d12_coeffs())
        candidates = search_template(3, 12, [2, 7, 29])
        assert any(f.coeffs == target.coeffs for f in candidates)

    def test_all_candidates_pass_reduction_checks(self):
        from supercert.newton import good_reduction_at_r_check
        for f in search_template(3, 12, [2, 7, 29]):
            assert good_reduction_at_r_check(f, 3)

    def test_empty_pool(self):
        assert search_template(3, 12, []) == []
