"""Determinant-line data for the mod-ell representations.

The determinant of the mod-ell image is controlled by the exponents
m_j = greatest integer strictly below (r-j)d/r.  This module computes those
exponents, the inertia exponents of the reduced endomorphism character, the
exact determinant subgroup for r = 3, the gcd identity underlying
GL-surjectivity for ell = 1 mod r, and the congruence classes of ell for
which the image is the full preserver DU_n(ell) of a degenerate unitary
form.
"""
from __future__ import annotations

import dataclasses
import math


def m_exponent(r: int, d: int, j: int) -> int:
    """Greatest integer strictly less than (r - j) * d / r."""
    if not 1 <= j <= r - 1:
        raise ValueError(f"j = {j} out of range 1..{r - 1}")
    return ((r - j) * d - 1) // r


def m_exponents(r: int, d: int) -> tuple[int, ...]:
    return tuple(m_exponent(r, d, j) for j in range(1, r))


def inertia_exponent(r: int, d: int, ell: int, j0: int) -> int:
    """Exponent of the level-i fundamental character cutting out the
    determinant character on inertia at a place above ell, for the orbit of
    the index j0 under multiplication by ell mod r.  Reduced mod ell^i - 1
    with i = ord(ell mod r)."""
    if ell % r == 0:
        raise ValueError("ell must be distinct from r")
    if j0 % r == 0:
        raise ValueError("j0 must be nonzero mod r")
    i = 1
    while pow(ell, i, r) != 1:
        i += 1
    exponent = 0
    j = j0 % r
    for k in range(i):
        exponent += pow(ell, k) * m_exponent(r, d, j)
        j = (j * ell) % r
    return exponent % (ell**i - 1)


@dataclasses.dataclass(frozen=True)
class DetSubgroup:
    """The determinant subgroup <a^{s*}> of F_ell^* (split) or of the
    norm-one subgroup of order ell + 1 (nonsplit), in canonical single-
    generator form."""

    context: str          # "split" | "nonsplit"
    generator_exponent: int
    ell: int

    def __post_init__(self):
        ambient = self.ell - 1 if self.context == "split" else self.ell + 1
        if ambient % self.generator_exponent:
            raise ValueError("generator exponent must divide the ambient order")

    @property
    def index(self) -> int:
        return self.generator_exponent


def det_subgroup_r3(ell: int, g: int) -> DetSubgroup:
    """Exact determinant subgroup <a^{ceil(g/3)}, b> for r = 3, collapsed to
    a single canonical generator exponent."""
    if ell == 3 or ell < 2:
        raise ValueError("ell must be a prime distinct from 3")
    u = -(-g // 3)
    if ell % 3 == 1:
        return DetSubgroup("split", math.gcd(u, (ell - 1) // 6), ell)
    return DetSubgroup("nonsplit", math.gcd(u, (ell + 1) // 6), ell)


def gl_surjectivity_gcd(r: int, d: int) -> bool:
    """The coprimality gcd(m_{(r-1)/2}, m_{(r+1)/2}) = 1 which forces the
    determinant of the mod-ell image to be everything when ell = 1 mod r."""
    if d % (2 * r):
        raise ValueError(f"2r = {2 * r} must divide d = {d}")
    return math.gcd(m_exponent(r, d, (r - 1) // 2),
                    m_exponent(r, d, (r + 1) // 2)) == 1


def _radical(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            out *= p
            while n % p == 0:
                n //= p
        p += 1
    return out * (n if n > 1 else 1)


def du_condition_holds(r: int, d: int, ell: int) -> bool:
    """Pointwise test that ell = -1 mod r and the divisor delta = 2r of 2r
    satisfies gcd(d/r, (ell+1)/delta) = gcd(delta, (ell+1)/delta) = 1."""
    if d % (2 * r):
        raise ValueError(f"2r = {2 * r} must divide d = {d}")
    if (ell + 1) % (2 * r):
        return False
    cofactor = (ell + 1) // (2 * r)
    return (math.gcd(d // r, cofactor) == 1
            and math.gcd(2 * r, cofactor) == 1)


def du_congruence_classes(r: int, d: int) -> list[tuple[int, tuple[int, ...]]]:
    """Congruence classes of ell (minimal modulus) for which the degenerate
    unitary image is guaranteed; returned as [(modulus, residues)]."""
    if d % (2 * r):
        raise ValueError(f"2r = {2 * r} must divide d = {d}")
    modulus = math.lcm(4 * r * r, _radical(d // r))
    residues = [x for x in range(modulus)
                if math.gcd(x, modulus) == 1 and du_condition_holds(r, d, x)]
    # Collapse to the smallest divisor of the modulus on which the residue
    # set is actually periodic.
    for m in sorted(x for x in range(1, modulus + 1) if modulus % x == 0):
        projected = sorted({x % m for x in residues})
        lifted = [x for x in range(modulus)
                  if math.gcd(x, modulus) == 1 and x % m in projected]
        if lifted == residues:
            return [(m, tuple(projected))]
    return [(modulus, tuple(residues))]
