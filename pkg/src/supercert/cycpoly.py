"""Univariate polynomials over Z[zeta_r]: discriminants, shifts, reductions.

The discriminant is computed as (-1)^(d(d-1)/2) * Res(f, f') with the
resultant obtained by fraction-free (Bareiss) elimination of the Sylvester
matrix over the exact ring — no modular reconstruction, no floating point.
"""
from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence

from .cyclotomic import CycElt
from . import finitefield as ff
from .places import Place, reduce_coeffs


@dataclasses.dataclass(frozen=True)
class CycPoly:
    """A polynomial over Z[zeta_r]; coeffs ascending, leading coeff nonzero."""

    r: int
    coeffs: tuple[CycElt, ...]

    @classmethod
    def from_coeffs(cls, r: int, coeffs: Iterable[CycElt | int]) -> "CycPoly":
        elts = [c if isinstance(c, CycElt) else CycElt.integer(r, c) for c in coeffs]
        while elts and elts[-1].is_zero():
            elts.pop()
        return cls(r, tuple(elts))

    @classmethod
    def from_int_lists(cls, r: int, lists: Sequence[Sequence[int]]) -> "CycPoly":
        return cls.from_coeffs(r, [CycElt.from_coeffs(r, c) for c in lists])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == CycElt.integer(self.r, 1)

    def coeff(self, k: int) -> CycElt:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return CycElt.integer(self.r, 0)

    def __call__(self, x: CycElt | int) -> CycElt:
        if isinstance(x, int):
            x = CycElt.integer(self.r, x)
        acc = CycElt.integer(self.r, 0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "CycPoly") -> "CycPoly":
        if self.is_zero() or other.is_zero():
            return CycPoly.from_coeffs(self.r, [])
        zero = CycElt.integer(self.r, 0)
        out = [zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return CycPoly.from_coeffs(self.r, out)

    def derivative(self) -> "CycPoly":
        return CycPoly.from_coeffs(
            self.r, [c * k for k, c in enumerate(self.coeffs)][1:])

    def compose_shift(self, a: CycElt | int) -> "CycPoly":
        """f(x - a), computed exactly by synthetic substitution."""
        if isinstance(a, int):
            a = CycElt.integer(self.r, a)
        out = [CycElt.integer(self.r, 0)]
        for c in reversed(self.coeffs):
            # out <- out * (x - a) + c
            shifted = [CycElt.integer(self.r, 0)] + out
            for k in range(len(out)):
                shifted[k] = shifted[k] - out[k] * a
            shifted[0] = shifted[0] + c
            out = shifted
        return CycPoly.from_coeffs(self.r, out)


def _bareiss_det(rows: list[list[CycElt]], r: int) -> CycElt:
    """Determinant by fraction-free elimination with exact divisions."""
    n = len(rows)
    one = CycElt.integer(r, 1)
    sign = 1
    prev = one
    m = [row[:] for row in rows]
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot_row is None:
                return CycElt.integer(r, 0)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = CycElt.integer(r, 0)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f: CycPoly, g: CycPoly) -> CycElt:
    """Res(f, g) over Z[zeta_r] via the Sylvester matrix."""
    if f.is_zero() or g.is_zero():
        return CycElt.integer(f.r, 0)
    n, m = f.degree, g.degree
    if n == 0:
        return f.coeffs[0] ** m
    if m == 0:
        return g.coeffs[0] ** n
    zero = CycElt.integer(f.r, 0)
    size = n + m
    rows = []
    for shift in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(f.coeffs)):
            row[shift + k] = c
        rows.append(row)
    for shift in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(g.coeffs)):
            row[shift + k] = c
        rows.append(row)
    return _bareiss_det(rows, f.r)


def discriminant(f: CycPoly) -> CycElt:
    """disc(f) for monic f of degree >= 2."""
    d = f.degree
    if d < 2:
        raise ValueError("discriminant needs degree >= 2")
    if not f.is_monic():
        raise ValueError("discriminant is implemented for monic polynomials")
    res = resultant(f, f.derivative())
    return res if (d * (d - 1) // 2) % 2 == 0 else -res


def repeated_part(f: CycPoly, place: Place):
    """gcd of the reduction of f at the place with its derivative (monic)."""
    field = place.residue_field()
    fbar = reduce_coeffs(f.coeffs, place)
    if not fbar:
        raise ValueError("f reduces to zero at this place")
    return ff.pgcd(field, fbar, ff.pderiv(field, fbar))


def squarefree_over_residue(f: CycPoly, place: Place) -> bool:
    return len(repeated_part(f, place)) == 1
