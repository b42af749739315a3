"""Tests for the finite similitude-group oracle.

Characteristic polynomials are cross-checked against sympy's charpoly over
the integers reduced mod ell; the small centralizer is cross-checked by
brute force over all of SL_2(5).
"""
from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
import sympy

from supercert.groups import (as_similitude, build_zeta_element,
                              centralizer_order, charpoly_mod,
                              charpoly_functional_equation_check, det_mod,
                              gl_order, gu_order, nu, nullspace_mod,
                              random_similitude, random_symplectic,
                              rref_mod, similitude_multiplier,
                              standard_symplectic_form, transvection)


class TestLinearAlgebra:
    def test_charpoly_against_sympy(self):
        rng = random.Random(0)
        for _ in range(25):
            n = rng.randint(1, 6)
            ell = rng.choice([2, 3, 5, 7, 13])
            m = np.array([[rng.randrange(ell) for _ in range(n)]
                          for _ in range(n)], dtype=np.int64)
            got = charpoly_mod(m, ell)
            expect = [int(c) % ell for c in
                      sympy.Matrix(m.tolist()).charpoly().all_coeffs()]
            assert got == expect

    def test_det_against_sympy(self):
        rng = random.Random(1)
        for _ in range(25):
            n = rng.randint(1, 5)
            ell = rng.choice([3, 5, 11])
            m = np.array([[rng.randrange(ell) for _ in range(n)]
                          for _ in range(n)], dtype=np.int64)
            assert det_mod(m, ell) == int(sympy.Matrix(m.tolist()).det()) % ell

    def test_nullspace(self):
        m = np.array([[1, 2, 3], [2, 4, 6]], dtype=np.int64)
        basis = nullspace_mod(m, 7)
        assert len(basis) == 2
        for v in basis:
            assert not ((m @ v) % 7).any()


class TestFunctionalEquation:
    def test_identity(self):
        b = standard_symplectic_form(2, 7)
        elt = as_similitude(np.eye(4, dtype=np.int64), b, 7)
        assert elt.multiplier == 1
        assert charpoly_functional_equation_check(elt)

    def test_multiplier_diagonal(self):
        for mu in range(1, 7):
            b = standard_symplectic_form(2, 7)
            m = np.diag([mu, mu, 1, 1]).astype(np.int64)
            elt = as_similitude(m, b, 7)
            assert elt.multiplier == mu
            assert charpoly_functional_equation_check(elt)

    def test_random_symplectic_samples(self):
        rng = random.Random(2)
        for _ in range(100):
            elt = random_symplectic(2, 7, rng)
            assert elt.multiplier == 1
            assert charpoly_functional_equation_check(elt)

    def test_random_similitude_samples(self):
        rng = random.Random(3)
        for _ in range(100):
            elt = random_similitude(2, 7, rng)
            assert charpoly_functional_equation_check(elt)

    def test_det_is_multiplier_power_g(self):
        rng = random.Random(4)
        for _ in range(50):
            elt = random_similitude(2, 11, rng)
            assert det_mod(elt.m, 11) == pow(elt.multiplier, 2, 11)

    def test_non_similitude_rejected(self):
        b = standard_symplectic_form(1, 5)
        with pytest.raises(ValueError):
            as_similitude(np.array([[1, 1], [1, 1]], dtype=np.int64), b, 5)


class TestZetaElement:
    def test_order_and_charpoly(self):
        for r, n, ell in [(3, 1, 7), (3, 2, 5), (5, 1, 7), (7, 1, 3)]:
            elt = build_zeta_element(r, n, ell)
            size = n * (r - 1)
            power = np.eye(size, dtype=np.int64)
            for _ in range(r):
                power = (power @ elt.m) % ell
            assert np.array_equal(power, np.eye(size, dtype=np.int64))
            assert elt.multiplier == 1
            phi = [1] * r  # 1 + x + ... + x^{r-1}, descending
            expect = [1]
            for _ in range(n):
                out = [0] * (len(expect) + r - 1)
                for i, a in enumerate(expect):
                    for j, b in enumerate(phi):
                        out[i + j] = (out[i + j] + a * b) % ell
                expect = out
            assert charpoly_mod(elt.m, ell) == expect

    def test_form_is_alternating(self):
        elt = build_zeta_element(3, 2, 5)
        b = elt.b
        assert np.array_equal(b.T % 5, (-b) % 5)
        assert det_mod(b, 5) != 0

    def test_size_bound(self):
        with pytest.raises(ValueError):
            build_zeta_element(3, 7, 5)

    def test_ell_equal_r_rejected(self):
        with pytest.raises(ValueError):
            build_zeta_element(3, 1, 3)


class TestCentralizer:
    def test_split_case_sp2_7(self):
        # 7 = 1 mod 3: centralizer is GL_1(7), order 6
        elt = build_zeta_element(3, 1, 7)
        assert centralizer_order(elt, "Sp") == 6 == gl_order(1, 7)
        assert centralizer_order(elt, "GSp") == 6 * (7 - 1)

    def test_nonsplit_case_sp2_5(self):
        # 5 = 2 mod 3: centralizer is GU_1(5), order 6
        elt = build_zeta_element(3, 1, 5)
        assert centralizer_order(elt, "Sp") == 6 == gu_order(1, 5)
        assert centralizer_order(elt, "GSp") == 6 * (5 - 1)

    def test_nonsplit_case_sp4_5(self):
        elt = build_zeta_element(3, 2, 5)
        assert centralizer_order(elt, "Sp") == 720 == gu_order(2, 5)
        assert centralizer_order(elt, "GSp") == 720 * (5 - 1)

    def test_brute_force_sl2_5(self):
        elt = build_zeta_element(3, 1, 5)
        z, b = elt.m, elt.b
        count = 0
        for entries in itertools.product(range(5), repeat=4):
            m = np.array(entries, dtype=np.int64).reshape(2, 2)
            if det_mod(m, 5) != 1:
                continue
            if similitude_multiplier(m, b, 5) != 1:
                continue
            if np.array_equal((m @ z) % 5, (z @ m) % 5):
                count += 1
        assert count == centralizer_order(elt, "Sp") == 6

    def test_invalid_group_name(self):
        elt = build_zeta_element(3, 1, 5)
        with pytest.raises(ValueError):
            centralizer_order(elt, "GL")


class TestNu:
    def test_identity_and_transvection(self):
        b = standard_symplectic_form(2, 7)
        assert nu(np.eye(4, dtype=np.int64), 7) == 0
        t = transvection(np.array([1, 0, 0, 0], dtype=np.int64), 1, b, 7)
        assert nu(t, 7) == 1

    def test_single_sixth_root_block(self):
        # 3 has order 6 in F_7^*: one nontrivial eigenvalue, rest trivial
        m = np.diag([3, 1, 1, 1]).astype(np.int64)
        assert nu(m, 7) == 1

    def test_requires_split_charpoly(self):
        m = np.array([[0, -1], [1, -1]], dtype=np.int64) % 5  # order 3, 5=2 mod 3
        with pytest.raises(ValueError):
            nu(m, 5)
