"""Dense univariate polynomials over exact rationals.

A polynomial is a list of Fractions, index = degree, with no trailing
zeros; the zero polynomial is the empty list.  This module carries the
shared exact kernel: arithmetic, Euclidean division, gcd, squarefree
decomposition, Sturm chains, real root isolation and resultants.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

F = Fraction

Poly = list  # list[Fraction], ascending degree


def trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p):
    """Degree; -1 for the zero polynomial."""
    return len(p) - 1


def is_zero(p):
    return not p


def const(c) -> Poly:
    c = F(c)
    return [c] if c != 0 else []


def add(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]
    return trim(out)


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def scale(p, c):
    c = F(c)
    if c == 0:
        return []
    return [c * a for a in p]


def mul(p, q):
    if not p or not q:
        return []
    out = [F(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def mul_xk(p, k):
    if not p:
        return []
    return [F(0)] * k + list(p)


def divmod_poly(a, b):
    """Quotient and remainder in Q[x]; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [F(0)] * max(0, len(a) - len(b) + 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for i in range(len(b)):
            a[k + i] -= c * b[i]
        trim(a)
    return trim(q), a


def rem(a, b):
    return divmod_poly(a, b)[1]


def exact_div(a, b):
    q, r = divmod_poly(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(p):
    if not p:
        return []
    lc = p[-1]
    return [c / lc for c in p]


def gcd_monic(a, b):
    """Monic gcd in Q[x]; gcd(0, 0) = 0."""
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def diff(p):
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p, x):
    acc = F(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def primitive_positive(p):
    """Scale by a positive rational so coefficients are coprime integers.

    Positive scaling only: safe inside Sturm chains.
    """
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // _igcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for v in ints:
        g = _igcd(g, abs(v))
    return [F(v, g) for v in ints]


def yun(p):
    """Squarefree decomposition: list of (factor, multiplicity).

    Product of factor**multiplicity equals p up to a rational constant;
    factors are monic, squarefree and pairwise coprime.
    """
    if not p or deg(p) == 0:
        return []
    p = monic(p)
    dp = diff(p)
    g = gcd_monic(p, dp)
    out = []
    c = exact_div(p, g)
    d = sub(exact_div(dp, g), diff(c))
    m = 1
    while deg(c) > 0:
        a = gcd_monic(c, d)
        if deg(a) > 0:
            out.append((a, m))
        c = exact_div(c, a)
        d = sub(exact_div(d, a), diff(c))
        m += 1
    return out


def squarefree_part(p):
    if not p or deg(p) == 0:
        return monic(p)
    return monic(exact_div(p, gcd_monic(p, diff(p))))


def sturm_chain(p):
    chain = [primitive_positive(p), primitive_positive(diff(p))]
    while chain[-1] and deg(chain[-1]) > 0:
        r = rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(primitive_positive(neg(r)))
    return [c for c in chain if c]


def sign_variations(values):
    n = 0
    prev = 0
    for v in values:
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            n += 1
        prev = s
    return n


def sturm_count(chain, a, b):
    """Number of distinct roots in (a, b); endpoints must not be roots."""
    va = sign_variations([evaluate(c, a) for c in chain])
    vb = sign_variations([evaluate(c, b) for c in chain])
    return va - vb


def isolate_real_roots(p, a, b):
    """Isolating intervals for the distinct roots of squarefree p in (a, b).

    Returns a sorted list of (lo, hi) with lo == hi for roots hit exactly;
    otherwise p changes sign on [lo, hi].  Requires p(a) != 0 != p(b).
    """
    if evaluate(p, a) == 0 or evaluate(p, b) == 0:
        raise ValueError("isolation endpoints must avoid roots")
    if deg(p) <= 0:
        return []
    chain = sturm_chain(p)
    out = []

    def go(lo, hi, count):
        if count == 0:
            return
        if count == 1 and evaluate(p, lo) * evaluate(p, hi) < 0:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        if evaluate(p, mid) == 0:
            w = (hi - lo) / 4
            while evaluate(p, mid - w) == 0 or evaluate(p, mid + w) == 0 or \
                    sturm_count(chain, mid - w, mid + w) != 1:
                w /= 2
            out.append((mid, mid))
            go(lo, mid - w, sturm_count(chain, lo, mid - w))
            go(mid + w, hi, sturm_count(chain, mid + w, hi))
        else:
            cl = sturm_count(chain, lo, mid)
            go(lo, mid, cl)
            go(mid, hi, count - cl)

    go(a, b, sturm_count(chain, a, b))
    out.sort()
    return out


def refine_root(p, lo, hi, width):
    """Shrink a sign-change interval of p strictly below the given width."""
    if lo == hi:
        return lo, hi
    flo = evaluate(p, lo)
    while hi - lo >= width:
        mid = (lo + hi) / 2
        fm = evaluate(p, mid)
        if fm == 0:
            return mid, mid
        if (flo > 0) != (fm > 0):
            hi = mid
        else:
            lo, flo = mid, fm
    return lo, hi


def resultant(p, q):
    """Resultant via Gaussian elimination on the Sylvester matrix."""
    m, n = deg(p), deg(q)
    if m < 0 or n < 0:
        return F(0)
    if m == 0:
        return p[0] ** n
    if n == 0:
        return q[0] ** m
    size = m + n
    rows = []
    pc = list(reversed(p))
    qc = list(reversed(q))
    for i in range(n):
        rows.append([F(0)] * i + pc + [F(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([F(0)] * i + qc + [F(0)] * (size - n - 1 - i))
    det = F(1)
    for col in range(size):
        piv = None
        for r in range(col, size):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            return F(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col] != 0:
                f = rows[r][col] * inv
                for c2 in range(col, size):
                    rows[r][c2] -= f * rows[col][c2]
    return det
