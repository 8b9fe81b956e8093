"""Certified real enclosures with exact rational endpoints.

Everything here is directed: sqrt via integer square roots, arctan via
argument halving plus an alternating series whose truncation error is
bounded by the first omitted term, pi via Machin's formula.  No floating
point anywhere, so enclosures are proofs, not estimates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

F = Fraction


@dataclass(frozen=True)
class CertifiedReal:
    """Closed interval [mid - rad, mid + rad], both endpoints rational."""

    mid: Fraction
    rad: Fraction

    def __post_init__(self):
        if self.rad < 0:
            raise ValueError("negative radius")

    @classmethod
    def exact(cls, x):
        return cls(F(x), F(0))

    @classmethod
    def from_endpoints(cls, lo, hi):
        lo, hi = F(lo), F(hi)
        if hi < lo:
            raise ValueError("empty interval")
        return cls((lo + hi) / 2, (hi - lo) / 2)

    @property
    def lo(self):
        return self.mid - self.rad

    @property
    def hi(self):
        return self.mid + self.rad

    def __add__(self, other):
        if isinstance(other, CertifiedReal):
            return CertifiedReal(self.mid + other.mid, self.rad + other.rad)
        return CertifiedReal(self.mid + F(other), self.rad)

    __radd__ = __add__

    def __neg__(self):
        return CertifiedReal(-self.mid, self.rad)

    def __sub__(self, other):
        return self + (-other if isinstance(other, CertifiedReal)
                       else CertifiedReal.exact(-F(other)))

    def scale(self, c):
        c = F(c)
        return CertifiedReal(self.mid * c, self.rad * abs(c))

    def contains(self, x):
        return self.lo <= F(x) <= self.hi

    @property
    def excludes_zero(self):
        return self.lo > 0 or self.hi < 0

    @property
    def is_exact_zero(self):
        return self.mid == 0 and self.rad == 0

    def __repr__(self):
        return f"CertifiedReal(mid={self.mid}, rad={self.rad})"


def sqrt_bounds(q: Fraction, bits: int):
    """(lo, hi) rationals with lo^2 <= q <= hi^2 and hi - lo <= 2^-bits."""
    q = F(q)
    if q < 0:
        raise ValueError("sqrt of negative rational")
    if q == 0:
        return F(0), F(0)
    # sqrt(q) = sqrt(num * den) / den; integer sqrt at 2^-(bits+1) resolution
    m = q.numerator * q.denominator
    k = bits + 1
    r = isqrt(m << (2 * k))
    den = q.denominator << k
    return F(r, den), F(r + 1, den)


def _atan_series(y: Fraction, bits: int):
    """Enclosure of atan(y) for |y| <= 1/2 via the alternating series.

    Term magnitudes decrease strictly, so the limit is bracketed by any
    two consecutive partial sums.
    """
    y = F(y)
    target = F(1, 1 << (bits + 2))
    term = y
    acc = F(0)
    k = 0
    y2 = y * y
    while True:
        nxt = acc + term / (2 * k + 1)
        if abs(term) / (2 * k + 1) <= target:
            lo, hi = sorted((acc, nxt))
            return lo, hi
        acc = nxt
        term = -term * y2
        k += 1


def atan_bounds(x: Fraction, bits: int):
    """Two-sided enclosure of atan(x) for any rational x."""
    x = F(x)
    if x < 0:
        lo, hi = atan_bounds(-x, bits)
        return -hi, -lo
    # argument halving: atan(x) = 2 atan(x / (1 + sqrt(1 + x^2)))
    lo_x, hi_x = x, x
    doublings = 0
    while hi_x > F(1, 2):
        _, su = sqrt_bounds(1 + lo_x * lo_x, bits + 8)
        sl2, _ = sqrt_bounds(1 + hi_x * hi_x, bits + 8)
        lo_x = lo_x / (1 + su)       # larger denominator bound -> lower result
        hi_x = hi_x / (1 + sl2)
        doublings += 1
        if doublings > 80:
            raise ArithmeticError("atan argument reduction failed to converge")
    lo1, _ = _atan_series(lo_x, bits + doublings + 2)
    _, hi1 = _atan_series(hi_x, bits + doublings + 2)
    m = 1 << doublings
    return m * lo1, m * hi1


def pi_bounds(bits: int):
    """Machin: pi = 16 atan(1/5) - 4 atan(1/239)."""
    a_lo, a_hi = atan_bounds(F(1, 5), bits + 6)
    b_lo, b_hi = atan_bounds(F(1, 239), bits + 6)
    return 16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo


def acos_bounds(y: Fraction, bits: int):
    """Enclosure of arccos(y) for rational y in [-1, 1]."""
    y = F(y)
    if not -1 <= y <= 1:
        raise ValueError("arccos argument out of [-1, 1]")
    if y == 1:
        return F(0), F(0)
    if y == -1:
        return pi_bounds(bits)
    # arccos(y) = 2 atan(sqrt((1 - y)/(1 + y)))
    q = (1 - y) / (1 + y)
    sl, su = sqrt_bounds(q, bits + 8)
    lo1, _ = atan_bounds(sl, bits + 2)
    _, hi1 = atan_bounds(su, bits + 2)
    return 2 * lo1, 2 * hi1


def acos_over_pi(lo: Fraction, hi: Fraction, bits: int):
    """Enclosure of arccos(c)/pi over all c in [lo, hi] subset of [-1, 1].

    arccos is decreasing, so the upper endpoint comes from lo.
    """
    t_lo, _ = acos_bounds(F(hi), bits)
    _, t_hi = acos_bounds(F(lo), bits)
    pi_lo, pi_hi = pi_bounds(bits)
    return t_lo / pi_hi, t_hi / pi_lo
