"""Desk-scale verification of the similitude-group structure theory.

Provides exact prime-field matrix arithmetic (numpy integer arrays reduced
mod ell), the characteristic-polynomial functional equation for symplectic
similitudes, construction of an order-r element with characteristic
polynomial Phi_r(x)^n preserving an explicit alternating form, and
commutant-based centralizer enumeration checked against the closed-form
orders of GL_n(q) and GU_n(q).
"""
from __future__ import annotations

import dataclasses
import itertools
import math
import random
from typing import Optional

import numpy as np

MAX_ENUMERATION = 2**28


# ---------------------------------------------------------------------------
# prime-field linear algebra

def mat(rows, ell: int) -> np.ndarray:
    return np.array(rows, dtype=np.int64) % ell


def mat_mul(a: np.ndarray, b: np.ndarray, ell: int) -> np.ndarray:
    return (a @ b) % ell


def mat_eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def _inv_mod(a: int, ell: int) -> int:
    return pow(int(a) % ell, -1, ell)


def rref_mod(m: np.ndarray, ell: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduce over F_ell; returns (reduced matrix, pivot columns)."""
    a = m.copy() % ell
    rows, cols = a.shape
    pivots: list[int] = []
    rank = 0
    for col in range(cols):
        pivot = next((i for i in range(rank, rows) if a[i, col] % ell), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        a[rank] = (a[rank] * _inv_mod(a[rank, col], ell)) % ell
        for i in range(rows):
            if i != rank and a[i, col]:
                a[i] = (a[i] - a[i, col] * a[rank]) % ell
        pivots.append(col)
        rank += 1
        if rank == rows:
            break
    return a, pivots


def nullspace_mod(m: np.ndarray, ell: int) -> list[np.ndarray]:
    """Basis of the right nullspace of m over F_ell."""
    a, pivots = rref_mod(m, ell)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for row, piv in enumerate(pivots):
            v[piv] = (-a[row, f]) % ell
        basis.append(v)
    return basis


def det_mod(m: np.ndarray, ell: int) -> int:
    a = m.copy() % ell
    n = a.shape[0]
    det = 1
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i, col] % ell), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            det = -det
        det = (det * int(a[col, col])) % ell
        inv = _inv_mod(a[col, col], ell)
        for i in range(col + 1, n):
            if a[i, col]:
                a[i] = (a[i] - a[i, col] * inv * a[col]) % ell
    return det % ell


def charpoly_mod(m: np.ndarray, ell: int) -> list[int]:
    """Coefficients of det(xI - m) over F_ell, descending, via the
    division-free Berkowitz recursion."""
    n = m.shape[0]
    a = m % ell
    vec = [1]
    for i in range(n):
        diag = int(a[i, i])
        row = a[i, :i]
        col = a[:i, i].copy()
        sub = a[:i, :i]
        entries = [1, (-diag) % ell]
        v = col
        for _ in range(i):
            entries.append(int(-(row @ v)) % ell)
            v = (sub @ v) % ell
        new = [0] * (i + 2)
        for pos in range(i + 2):
            s = 0
            for k in range(len(vec)):
                if 0 <= pos - k < len(entries):
                    s += entries[pos - k] * vec[k]
            new[pos] = s % ell
        vec = new
    return vec


# ---------------------------------------------------------------------------
# similitudes

@dataclasses.dataclass(frozen=True)
class SimilitudeGroupElt:
    """A matrix M with Mᵀ B M = χ(M)·B for an alternating Gram matrix B."""

    matrix: tuple[tuple[int, ...], ...]
    form: tuple[tuple[int, ...], ...]
    ell: int
    multiplier: int

    @property
    def m(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    @property
    def b(self) -> np.ndarray:
        return np.array(self.form, dtype=np.int64)


def similitude_multiplier(m: np.ndarray, b: np.ndarray,
                          ell: int) -> Optional[int]:
    """χ with mᵀ b m = χ b, or None if m is not a similitude of b."""
    s = (m.T @ b @ m) % ell
    i, j = next((i, j) for i in range(b.shape[0]) for j in range(b.shape[1])
                if b[i, j] % ell)
    chi = (int(s[i, j]) * _inv_mod(b[i, j], ell)) % ell
    if chi == 0 or not np.array_equal(s, (chi * b) % ell):
        return None
    return chi


def as_similitude(m: np.ndarray, b: np.ndarray, ell: int) -> SimilitudeGroupElt:
    chi = similitude_multiplier(m, b, ell)
    if chi is None:
        raise ValueError("matrix does not preserve the form up to scalar")
    freeze = lambda x: tuple(tuple(int(v) for v in row) for row in x % ell)
    return SimilitudeGroupElt(freeze(m), freeze(b), ell, chi)


def standard_symplectic_form(g: int, ell: int) -> np.ndarray:
    b = np.zeros((2 * g, 2 * g), dtype=np.int64)
    b[:g, g:] = np.eye(g, dtype=np.int64)
    b[g:, :g] = (-np.eye(g, dtype=np.int64)) % ell
    return b


def charpoly_functional_equation_check(elt: SimilitudeGroupElt) -> bool:
    """phi(x) = x^{2g} / chi^g * phi(chi / x), checked coefficientwise:
    c_j = c_{2g-j} * chi^{g-j} for the characteristic polynomial."""
    ell = elt.ell
    n = elt.m.shape[0]
    if n % 2:
        raise ValueError("similitudes of an alternating form have even size")
    g = n // 2
    coeffs = charpoly_mod(elt.m, ell)        # descending, c[0] = 1
    chi = elt.multiplier
    for j in range(n + 1):
        lhs = coeffs[n - j]                  # coefficient of x^j
        rhs = (coeffs[j] * pow(chi, (g - j) % (ell - 1), ell)) % ell \
            if j <= g else \
            (coeffs[j] * _inv_mod(pow(chi, j - g, ell), ell)) % ell
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# the order-r element and its centralizer

def _companion_cyclotomic(r: int, ell: int) -> np.ndarray:
    """Companion matrix of 1 + x + ... + x^{r-1} over F_ell."""
    n = r - 1
    c = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        c[i, i - 1] = 1
    c[:, n - 1] = (ell - 1) % ell
    return c


def _invariant_alternating_form(z: np.ndarray, ell: int) -> np.ndarray:
    """A nondegenerate alternating B with zᵀ B z = B."""
    n = z.shape[0]
    idx = lambda i, j: i * n + j
    rows = []
    # zᵀ B z - B = 0, entrywise linear in B
    for i in range(n):
        for j in range(n):
            row = np.zeros(n * n, dtype=np.int64)
            for k in range(n):
                for l in range(n):
                    row[idx(k, l)] += int(z[k, i]) * int(z[l, j])
            row[idx(i, j)] -= 1
            rows.append(row % ell)
    # antisymmetry
    for i in range(n):
        for j in range(i, n):
            row = np.zeros(n * n, dtype=np.int64)
            row[idx(i, j)] += 1
            row[idx(j, i)] += 1
            rows.append(row % ell)
    basis = nullspace_mod(np.array(rows), ell)
    if not basis:
        raise ValueError("no invariant alternating form exists")
    for v in basis:
        b = v.reshape(n, n)
        if det_mod(b, ell):
            return b
    rng = random.Random(f"form{n},{ell}")
    for _ in range(200):
        coeffs = [rng.randrange(ell) for _ in basis]
        b = sum(c * v for c, v in zip(coeffs, basis)).reshape(n, n) % ell
        if det_mod(b, ell):
            return b
    raise ValueError("no nondegenerate invariant alternating form found")


def build_zeta_element(r: int, n: int, ell: int) -> SimilitudeGroupElt:
    """Order-r element of Sp_{n(r-1)}(ell) with char poly Phi_r(x)^n."""
    if ell == r:
        raise ValueError("ell must differ from r")
    size = n * (r - 1)
    if size > 12:
        raise ValueError("size bound exceeded (n(r-1) <= 12)")
    block = _companion_cyclotomic(r, ell)
    z = np.zeros((size, size), dtype=np.int64)
    for k in range(n):
        s = k * (r - 1)
        z[s:s + r - 1, s:s + r - 1] = block
    b = _invariant_alternating_form(z, ell)
    return as_similitude(z, b, ell)


def gl_order(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for k in range(1, n + 1):
        out *= q**k - 1
    return out


def gu_order(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for k in range(1, n + 1):
        out *= q**k - (-1) ** k
    return out


def centralizer_order(elt: SimilitudeGroupElt, group: str = "Sp") -> int:
    """Order of the centralizer of elt in Sp or GSp of its form, by
    enumerating the commutant algebra and filtering."""
    if group not in ("Sp", "GSp"):
        raise ValueError("group must be 'Sp' or 'GSp'")
    ell, z, b = elt.ell, elt.m, elt.b
    n = z.shape[0]
    eye = np.eye(n, dtype=np.int64)
    system = (np.kron(z.T, eye) - np.kron(eye, z)) % ell
    basis = nullspace_mod(system, ell)
    dim = len(basis)
    total = ell ** dim
    if total > MAX_ENUMERATION:
        raise ValueError(f"commutant too large to enumerate ({ell}^{dim})")
    tensors = np.stack([v.reshape(n, n) for v in basis])
    count = 0
    i0, j0 = next((i, j) for i in range(n) for j in range(n) if b[i, j] % ell)
    b_inv_entry = _inv_mod(b[i0, j0], ell)
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idxs = np.arange(start, min(start + chunk, total))
        coeffs = np.empty((len(idxs), dim), dtype=np.int64)
        rem = idxs.copy()
        for k in range(dim):
            rem, coeffs[:, k] = np.divmod(rem, ell)
        xs = np.tensordot(coeffs, tensors, axes=(1, 0)) % ell
        s = np.einsum("nji,jk,nkl->nil", xs, b, xs) % ell
        chi = (s[:, i0, j0] * b_inv_entry) % ell
        ok = np.all(s == (chi[:, None, None] * b) % ell, axis=(1, 2))
        if group == "Sp":
            ok &= chi == 1
        else:
            ok &= chi != 0
        count += int(np.count_nonzero(ok))
    return count


# ---------------------------------------------------------------------------
# eigenspace codimension and random sampling

def nu(m: np.ndarray, ell: int) -> int:
    """Codimension of the largest eigenspace; the characteristic polynomial
    must split into linear factors over F_ell."""
    n = m.shape[0]
    coeffs = charpoly_mod(m, ell)
    remaining = coeffs[:]
    total_mult = 0
    roots = []
    for lam in range(ell):
        while len(remaining) > 1:
            # synthetic division by (x - lam)
            out, acc = [], 0
            for c in remaining:
                acc = (acc * lam + c) % ell
                out.append(acc)
            if out[-1] != 0:
                break
            remaining = out[:-1]
            if lam not in roots:
                roots.append(lam)
            total_mult += 1
    if total_mult != n:
        raise ValueError("characteristic polynomial does not split over "
                         f"F_{ell}; extend the field first")
    best = 0
    for lam in roots:
        shifted = (m - lam * np.eye(n, dtype=np.int64)) % ell
        _, pivots = rref_mod(shifted, ell)
        best = max(best, n - len(pivots))
    return n - best


def transvection(v: np.ndarray, scale: int, b: np.ndarray,
                 ell: int) -> np.ndarray:
    """x -> x + scale * <x, v> v for the alternating form b."""
    n = b.shape[0]
    return (np.eye(n, dtype=np.int64)
            + scale * np.outer(v, v) @ b.T) % ell


def random_symplectic(g: int, ell: int, rng: random.Random,
                      steps: int = 20) -> SimilitudeGroupElt:
    """Random product of symplectic transvections for the standard form."""
    b = standard_symplectic_form(g, ell)
    m = np.eye(2 * g, dtype=np.int64)
    for _ in range(steps):
        v = np.array([rng.randrange(ell) for _ in range(2 * g)],
                     dtype=np.int64)
        if not v.any():
            continue
        m = (transvection(v, rng.randrange(1, ell), b, ell) @ m) % ell
    return as_similitude(m, b, ell)


def random_similitude(g: int, ell: int, rng: random.Random) -> SimilitudeGroupElt:
    """Random GSp element: symplectic part times a multiplier diagonal."""
    base = random_symplectic(g, ell, rng)
    mu = rng.randrange(1, ell)
    scale = np.diag([mu] * g + [1] * g).astype(np.int64)
    return as_similitude((scale @ base.m) % ell, base.b, ell)
