"""Certification of large mod-ell Galois images for y^r = f(x).

Exact arithmetic over Z[zeta_r], local Newton-polygon analysis at every bad
place, hypothesis-route assembly, and a deterministic JSON certificate of
the excluded prime set plus per-congruence-class image descriptors.
"""
from .certifier import (BadPlaceReport, Certificate, CertifyError, certify,
                        recertify, search_template)
from .conditions import (HypothesisRoute, RouteFailure, build_route,
                         class_number, class_number_odd, find_prim1_prime,
                         goldbach_pairs, is_primitive_root)
from .cyclotomic import CycElt, SplitData, splitting_data
from .cycpoly import CycPoly, discriminant, resultant
from .endochar import (DetSubgroup, det_subgroup_r3, du_condition_holds,
                       du_congruence_classes, gl_surjectivity_gcd,
                       inertia_exponent, m_exponent, m_exponents)
from .factorint import Factorization, factor, is_prime
from .newton import (InertiaDecomp, NewtonPolygon, VProfile,
                     detect_v_profile, good_reduction_at_r_check,
                     inertia_decomposition, newton_polygon)
from .places import Place, place_by_name, places_above

__all__ = [
    "BadPlaceReport", "Certificate", "CertifyError", "CycElt", "CycPoly",
    "DetSubgroup", "Factorization", "HypothesisRoute", "InertiaDecomp",
    "NewtonPolygon", "Place", "RouteFailure", "SplitData", "VProfile",
    "build_route", "certify", "class_number", "class_number_odd",
    "det_subgroup_r3", "detect_v_profile", "discriminant",
    "du_condition_holds", "du_congruence_classes", "factor",
    "find_prim1_prime", "gl_surjectivity_gcd", "goldbach_pairs",
    "good_reduction_at_r_check", "inertia_decomposition",
    "inertia_exponent", "is_prime", "is_primitive_root", "m_exponent",
    "m_exponents", "newton_polygon", "place_by_name", "places_above",
    "recertify", "resultant", "search_template", "splitting_data",
]
