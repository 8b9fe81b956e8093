"""Seifert matrices, family constructors and the exact signature engine.

The unit circle is parametrized by a rational Cayley parameter
s -> (1 + is)/(1 - is), which keeps every Hermitian matrix we meet
inside the Gaussian rationals: signatures come out of exact
characteristic-polynomial sign counts, never from floating point.
The averaged signature (rho0) is a certified step-function integral:
jump locations are Sturm-isolated roots of the symmetrized Alexander
polynomial in x = t + 1/t, arc lengths are certified arccos enclosures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _igcd

from . import certified, intlinalg, polys
from .certified import CertifiedReal
from .laurent import LaurentPoly, normalize

F = Fraction


class NotAKnot(ValueError):
    """Torus parameters do not describe a knot."""


# ---------------------------------------------------------------------------
# Seifert matrices
# ---------------------------------------------------------------------------

def _block_form_ok(j):
    """V - V^T must be block diagonal with 2x2 blocks [[0, +-1], [-+1, 0]]."""
    n = len(j)
    if n % 2:
        return False
    for a in range(n):
        for b in range(n):
            v = j[a][b]
            if a // 2 == b // 2:
                if a == b and v != 0:
                    return False
                if a != b and v not in (1, -1):
                    return False
            elif v != 0:
                return False
    return True


@dataclass(frozen=True)
class SeifertMatrix:
    """2g x 2g integer Seifert matrix with symplectic V - V^T."""

    entries: tuple  # tuple of tuples of int

    def __post_init__(self):
        n = len(self.entries)
        if any(len(r) != n for r in self.entries):
            raise ValueError("Seifert matrix must be square")
        if any(not isinstance(x, int) for r in self.entries for x in r):
            raise ValueError("Seifert matrix entries must be integers")
        j = [[self.entries[a][b] - self.entries[b][a] for b in range(n)]
             for a in range(n)]
        if not _block_form_ok(j):
            raise ValueError("V - V^T is not in block-symplectic form")

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def size(self):
        return len(self.entries)

    @property
    def genus(self):
        return len(self.entries) // 2

    def __getitem__(self, idx):
        return self.entries[idx]

    def transpose(self):
        return SeifertMatrix(tuple(zip(*self.entries)))

    def form(self, u, v):
        """Seifert form u^T V v on integer vectors."""
        n = self.size
        return sum(u[a] * self.entries[a][b] * v[b]
                   for a in range(n) for b in range(n))

    def intersection(self, u, v):
        """u^T (V - V^T) v, the surface intersection pairing."""
        return self.form(u, v) - self.form(v, u)


EMPTY = SeifertMatrix(())


def unknot() -> SeifertMatrix:
    return EMPTY


def twist_knot(tw: int) -> SeifertMatrix:
    """Genus-one twist knot surface: tw full twists in one band."""
    return SeifertMatrix.from_rows([[tw, 1], [0, -1]])


def genus_one(l: int, tw: int) -> SeifertMatrix:
    """Generic genus-one algebraically slice shape [[0, l], [l+1, tw]]."""
    return SeifertMatrix.from_rows([[0, l], [l + 1, tw]])


def connected_sum(a: SeifertMatrix, b: SeifertMatrix) -> SeifertMatrix:
    na, nb = a.size, b.size
    rows = []
    for i in range(na):
        rows.append(list(a.entries[i]) + [0] * nb)
    for i in range(nb):
        rows.append([0] * na + list(b.entries[i]))
    return SeifertMatrix.from_rows(rows)


def mirror(a: SeifertMatrix) -> SeifertMatrix:
    """Mirror image: -V^T (the symplectic form is unchanged)."""
    n = a.size
    return SeifertMatrix.from_rows(
        [[-a.entries[j][i] for j in range(n)] for i in range(n)])


def stabilize(a: SeifertMatrix, xi, x: int) -> SeifertMatrix:
    """One S-equivalence enlargement by a standard row/column pair."""
    n = a.size
    if len(xi) != n:
        raise ValueError("stabilization column has wrong length")
    rows = []
    for i in range(n):
        rows.append(list(a.entries[i]) + [int(xi[i]), 0])
    rows.append([int(v) for v in xi] + [int(x), 1])
    rows.append([0] * (n + 2))
    return SeifertMatrix.from_rows(rows)


def _tensor_bidiagonal(p: int, q: int):
    """-(E_p tensor E_q) with E_n upper bidiagonal (1 diag, -1 super)."""
    def e(n):
        return [[1 if i == j else (-1 if j == i + 1 else 0)
                 for j in range(n - 1)] for i in range(n - 1)]

    ep, eq = e(p), e(q)
    rows = []
    for i1 in range(p - 1):
        for i2 in range(q - 1):
            row = []
            for j1 in range(p - 1):
                for j2 in range(q - 1):
                    row.append(-ep[i1][j1] * eq[i2][j2])
            rows.append(row)
    return rows


def torus_knot(p: int, q: int) -> SeifertMatrix:
    """Seifert matrix of the (p, q) torus knot on its fiber surface.

    Orientation is anchored by lt_signature(torus_knot(2, 3), -1) == -2.
    """
    if p == 0 or q == 0 or _igcd(abs(p), abs(q)) != 1:
        raise NotAKnot(f"({p}, {q}) does not describe a torus knot")
    if abs(p) == 1 or abs(q) == 1:
        return EMPTY
    rows = _tensor_bidiagonal(abs(p), abs(q))
    if p * q < 0:
        n = len(rows)
        rows = [[-rows[j][i] for j in range(n)] for i in range(n)]
    # re-base so V - V^T is in interleaved symplectic block form
    n = len(rows)
    j = [[rows[a][b] - rows[b][a] for b in range(n)] for a in range(n)]
    cols = intlinalg.symplectic_basis(j)
    rebased = [[sum(cols[a][i] * rows[i][k] * cols[b][k]
                    for i in range(n) for k in range(n))
                for b in range(n)] for a in range(n)]
    return SeifertMatrix.from_rows(rebased)


# ---------------------------------------------------------------------------
# Alexander polynomial
# ---------------------------------------------------------------------------

def _det_poly_matrix(m):
    """Fraction-free Bareiss determinant of a matrix of dense polynomials."""
    n = len(m)
    if n == 0:
        return [F(1)]
    m = [[list(x) for x in row] for row in m]
    sign = 1
    prev = [F(1)]
    for k in range(n - 1):
        if polys.is_zero(m[k][k]):
            piv = next((i for i in range(k + 1, n)
                        if not polys.is_zero(m[i][k])), None)
            if piv is None:
                return []
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for jj in range(k + 1, n):
                num = polys.sub(polys.mul(m[i][jj], m[k][k]),
                                polys.mul(m[i][k], m[k][jj]))
                m[i][jj] = polys.exact_div(num, prev)
            m[i][k] = []
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return polys.neg(d) if sign < 0 else d


def alexander_poly(v: SeifertMatrix) -> LaurentPoly:
    """normalize(det(tV - V^T)); equals 1 for the empty matrix."""
    n = v.size
    if n == 0:
        return LaurentPoly.one()
    m = [[polys.trim([F(-v.entries[b][a]), F(v.entries[a][b])])
          for b in range(n)] for a in range(n)]
    det = _det_poly_matrix(m)
    if polys.is_zero(det):
        raise ArithmeticError("degenerate Seifert matrix: det(tV - V^T) = 0")
    return normalize(LaurentPoly.from_dense(det))


# ---------------------------------------------------------------------------
# Unit circle points and exact signatures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitCirclePoint:
    """omega = (1 + is)/(1 - is) for rational s, or the point omega = -1."""

    cayley: Fraction | None  # None encodes omega = -1

    @classmethod
    def from_cayley(cls, s):
        return cls(F(s))

    @classmethod
    def minus_one(cls):
        return cls(None)

    @property
    def is_minus_one(self):
        return self.cayley is None

    def x_coordinate(self):
        """omega + conj(omega) = 2(1 - s^2)/(1 + s^2)."""
        if self.cayley is None:
            return F(-2)
        s = self.cayley
        return 2 * (1 - s * s) / (1 + s * s)


OMEGA_ONE = UnitCirclePoint.from_cayley(0)
OMEGA_MINUS_ONE = UnitCirclePoint.minus_one()


def _qi_charpoly(mat):
    """Characteristic polynomial of a Gaussian-rational matrix by
    Faddeev-LeVerrier; returns rational coefficients ascending.

    For Hermitian input the coefficients are real; asserted exactly.
    """
    n = len(mat)
    if n == 0:
        return [F(1)]
    ident = [[(F(1), F(0)) if i == j else (F(0), F(0)) for j in range(n)]
             for i in range(n)]
    m = [row[:] for row in ident]
    cs = [F(1)]  # c_0 for lambda^n
    for k in range(1, n + 1):
        # am = mat @ m
        am = [[(F(0), F(0))] * n for _ in range(n)]
        for i in range(n):
            for l in range(n):
                a_re, a_im = mat[i][l]
                if a_re == 0 and a_im == 0:
                    continue
                row_m = m[l]
                row_out = am[i]
                for jj in range(n):
                    b_re, b_im = row_m[jj]
                    if b_re == 0 and b_im == 0:
                        continue
                    o_re, o_im = row_out[jj]
                    row_out[jj] = (o_re + a_re * b_re - a_im * b_im,
                                   o_im + a_re * b_im + a_im * b_re)
        tr_re = sum(am[i][i][0] for i in range(n))
        tr_im = sum(am[i][i][1] for i in range(n))
        if tr_im != 0:
            raise ArithmeticError("non-Hermitian input: complex trace")
        ck = -tr_re / k
        cs.append(ck)
        m = [[(am[i][jj][0] + (ck if i == jj else 0), am[i][jj][1])
              for jj in range(n)] for i in range(n)]
    # p(lambda) = lambda^n + c_1 lambda^(n-1) + ... + c_n, ascending:
    return list(reversed(cs))


def _signature_from_charpoly(coeffs):
    """Signature of a Hermitian matrix from its characteristic polynomial.

    All roots are real, so Descartes' sign-variation count is exact for
    the positive and negative root counts (with multiplicity).
    """
    pos = polys.sign_variations(coeffs)
    neg = polys.sign_variations(
        [c if k % 2 == 0 else -c for k, c in enumerate(coeffs)])
    return pos - neg


def lt_signature(v: SeifertMatrix, omega: UnitCirclePoint) -> int:
    """Signature of (1 - omega) V + (1 - conj(omega)) V^T, exactly."""
    n = v.size
    if n == 0:
        return 0
    e = v.entries
    if omega.is_minus_one:
        mat = [[(F(e[a][b] + e[b][a]), F(0)) for b in range(n)]
               for a in range(n)]
        return _signature_from_charpoly(_qi_charpoly(mat))
    s = omega.cayley
    if s == 0:
        return 0
    # (1+s^2) H = 2s [ s(V + V^T) + i (V^T - V) ]; positive scalars drop out
    mat = [[(s * (e[a][b] + e[b][a]), F(e[b][a] - e[a][b]))
            for b in range(n)] for a in range(n)]
    sig = _signature_from_charpoly(_qi_charpoly(mat))
    return sig if s > 0 else -sig


# ---------------------------------------------------------------------------
# Jump sets: unit-circle roots of the Alexander polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JumpPoint:
    """Isolating rational interval in x = omega + conj(omega) for one root
    of the symmetrized Alexander polynomial; exact roots have x_lo == x_hi."""

    x_lo: Fraction
    x_hi: Fraction
    multiplicity: int

    @property
    def is_exact(self):
        return self.x_lo == self.x_hi


@dataclass(frozen=True)
class JumpSet:
    points: tuple  # tuple[JumpPoint], ascending in x

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def symmetrized_x_poly(v: SeifertMatrix):
    """G with Delta(t) = t^d * G(t + 1/t) for the canonical Delta."""
    delta = alexander_poly(v)
    dense, _ = delta.to_dense()
    d2 = polys.deg(dense)
    if d2 % 2:
        raise ArithmeticError("Alexander polynomial of odd degree")
    if any(dense[k] != dense[d2 - k] for k in range(d2 + 1)):
        raise ArithmeticError("Alexander polynomial is not palindromic")
    d = d2 // 2
    # t^k + t^-k = C_k(x):  C_0 = 2, C_1 = x, C_{k+1} = x C_k - C_{k-1}
    g = [dense[d]]
    ck_prev, ck = [F(2)], [F(0), F(1)]
    for k in range(1, d + 1):
        g = polys.add(g, polys.scale(ck, dense[d + k]))
        ck_prev, ck = ck, polys.sub(polys.mul([F(0), F(1)], ck), ck_prev)
    return polys.trim(g)


def _isolated_x_roots(v: SeifertMatrix, width: Fraction):
    """Roots of the symmetrized polynomial in [-2, 2), isolated and
    refined below the requested width.  Returns list of JumpPoint asc."""
    g = symmetrized_x_poly(v)
    if polys.deg(g) <= 0:
        return []
    points = []
    # x = -2 (omega = -1) can be an exact boundary root
    boundary_mult = 0
    while polys.evaluate(g, F(-2)) == 0:
        g = polys.exact_div(g, [F(2), F(1)])
        boundary_mult += 1
    if boundary_mult:
        points.append(JumpPoint(F(-2), F(-2), boundary_mult))
    if polys.evaluate(g, F(2)) == 0:
        raise ArithmeticError("x = 2 root contradicts Delta(1) != 0")
    sqf = polys.squarefree_part(g)
    if polys.deg(sqf) >= 1:
        pieces = polys.yun(g)
        intervals = [polys.refine_root(sqf, lo, hi, width)
                     for lo, hi in polys.isolate_real_roots(sqf, F(-2), F(2))]
        intervals = _separate(sqf, intervals, width)
        for lo, hi in intervals:
            mult = None
            for piece, m in pieces:
                if lo == hi:
                    if polys.evaluate(piece, lo) == 0:
                        mult = m
                        break
                elif polys.evaluate(piece, lo) * polys.evaluate(piece, hi) < 0:
                    mult = m
                    break
            if mult is None:
                raise ArithmeticError("failed to attribute root multiplicity")
            points.append(JumpPoint(lo, hi, mult))
    points.sort(key=lambda p: (p.x_lo, p.x_hi))
    return points


def _separate(sqf, intervals, width):
    """Refine until intervals are pairwise strictly separated and stay
    strictly inside (-2, 2), so every open arc between them is sampleable."""
    intervals = sorted(intervals)
    w = width
    for _ in range(200):
        bad = set()
        if intervals and intervals[0][0] <= F(-2):
            bad.add(0)
        if intervals and intervals[-1][1] >= F(2):
            bad.add(len(intervals) - 1)
        for i in range(len(intervals) - 1):
            if intervals[i][1] >= intervals[i + 1][0]:
                bad.add(i)
                bad.add(i + 1)
        if not bad:
            return intervals
        w /= 2
        intervals = [polys.refine_root(sqf, lo, hi, w) if i in bad else (lo, hi)
                     for i, (lo, hi) in enumerate(intervals)]
    raise ArithmeticError("root separation failed")


def jump_set(v: SeifertMatrix) -> JumpSet:
    """Certified isolating intervals for all jump locations, width < 2^-32."""
    return JumpSet(tuple(_isolated_x_roots(v, F(1, 1 << 32))))


# ---------------------------------------------------------------------------
# rho0: the averaged Levine-Tristram signature
# ---------------------------------------------------------------------------

def _cayley_x(s: Fraction) -> Fraction:
    return 2 * (1 - s * s) / (1 + s * s)


def _sample_parameter(a: Fraction, b: Fraction) -> Fraction:
    """Rational s >= 0 with a < x(s) < b; x is decreasing in s."""
    if a >= b:
        raise ValueError("empty arc")
    if a <= F(-2):
        s = F(1)
        while _cayley_x(s) >= b:
            s *= 2
        return s
    lo, hi = F(0), F(1)
    while _cayley_x(hi) > a:
        hi *= 2
    while True:
        mid = (lo + hi) / 2
        x = _cayley_x(mid)
        if x >= b:
            lo = mid
        elif x <= a:
            hi = mid
        else:
            return mid


def _arc_signatures(v: SeifertMatrix, roots):
    """Constant signature value on each open arc, theta ascending.

    roots: interior JumpPoints, sorted by x ascending; arcs are delimited
    in x by the isolating intervals, traversed from x = 2 down to -2.
    """
    desc = [r for r in reversed(roots) if not (r.is_exact and r.x_lo == -2)]
    sigmas = []
    upper = F(2)
    for r in desc:
        s = _sample_parameter(r.x_hi, upper)
        sigmas.append(lt_signature(v, UnitCirclePoint.from_cayley(s)))
        upper = r.x_lo
    s = _sample_parameter(F(-2), upper)
    sigmas.append(lt_signature(v, UnitCirclePoint.from_cayley(s)))
    if sigmas[0] != 0:
        raise ArithmeticError("signature near omega = 1 must vanish")
    return sigmas, desc


def rho0(v: SeifertMatrix, target_radius=F(1, 10 ** 9)) -> CertifiedReal:
    """Certified enclosure of the circle average of the signature function.

    The integrand is a step function; by conjugation symmetry the average
    equals (1/pi) * integral over [0, pi].  With no interior jumps the
    value is exactly 0.
    """
    target_radius = F(target_radius)
    if target_radius <= 0:
        raise ValueError("target_radius must be positive")
    if v.size == 0:
        return CertifiedReal.exact(0)
    width = F(1, 1 << 34)
    bits = 48
    for _ in range(20):
        roots = _isolated_x_roots(v, width)
        sigmas, desc = _arc_signatures(v, roots)
        if not desc:
            return CertifiedReal.exact(0)
        lo_acc, hi_acc = F(0), F(0)
        # integral/pi = sum_j sigma_j (phi_{j+1} - phi_j)
        #            = sum_j (sigma_{j-1} - sigma_j) phi_j + sigma_last
        for j, r in enumerate(desc, start=1):
            coeff = sigmas[j - 1] - sigmas[j]
            if coeff == 0:
                continue
            phi_lo, phi_hi = certified.acos_over_pi(
                r.x_lo / 2, r.x_hi / 2, bits)
            if coeff > 0:
                lo_acc += coeff * phi_lo
                hi_acc += coeff * phi_hi
            else:
                lo_acc += coeff * phi_hi
                hi_acc += coeff * phi_lo
        lo_acc += sigmas[-1]
        hi_acc += sigmas[-1]
        if (hi_acc - lo_acc) / 2 <= target_radius / 2:
            # round outward to a dyadic grid so endpoints stay small
            m = 2
            while F(1, 1 << m) > target_radius / 8:
                m += 1
            grid = 1 << m
            lo_r = F((lo_acc * grid).__floor__(), grid)
            hi_r = F(-((-hi_acc * grid).__floor__()), grid)
            return CertifiedReal.from_endpoints(lo_r, hi_r)
        bits *= 2
        width = width * width
    raise ArithmeticError("rho0 failed to reach the requested radius")


# ---------------------------------------------------------------------------
# Signature function report (CSV) and matrix text format
# ---------------------------------------------------------------------------

def signature_arcs(v: SeifertMatrix, bits: int = 64):
    """[(phi_lo, phi_hi, sigma)] with phi = theta/pi enclosures per arc."""
    if v.size == 0:
        return [(F(0), F(1), 0)]
    roots = _isolated_x_roots(v, F(1, 1 << 34))
    sigmas, desc = _arc_signatures(v, roots)
    bounds = [(F(0), F(0))]
    for r in desc:
        bounds.append(certified.acos_over_pi(r.x_lo / 2, r.x_hi / 2, bits))
    bounds.append((F(1), F(1)))
    return [(bounds[j][0], bounds[j + 1][1], sigmas[j])
            for j in range(len(sigmas))]


def _decimal(x: Fraction, places: int = 12) -> str:
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = int(x * 10 ** places + F(1, 2))
    whole, frac = divmod(scaled, 10 ** places)
    return f"{sign}{whole}.{frac:0{places}d}"


def signature_function_csv(v: SeifertMatrix) -> str:
    """CSV: constancy arcs in theta plus the jump-point table in x."""
    pi_lo, pi_hi = certified.pi_bounds(64)
    lines = ["theta_lo,theta_hi,sigma"]
    for phi_lo, phi_hi, sig in signature_arcs(v):
        lines.append(f"{_decimal(phi_lo * pi_lo)},{_decimal(phi_hi * pi_hi)},{sig}")
    lines.append("x_lo,x_hi,multiplicity")
    for p in jump_set(v):
        lines.append(f"{p.x_lo},{p.x_hi},{p.multiplicity}")
    return "\n".join(lines) + "\n"


def matrix_to_text(v: SeifertMatrix) -> str:
    """Leading genus line, then row-major whitespace-separated entries."""
    lines = [str(v.genus)]
    for row in v.entries:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> SeifertMatrix:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty matrix text")
    g = int(tokens[0])
    n = 2 * g
    vals = [int(t) for t in tokens[1:]]
    if len(vals) != n * n:
        raise ValueError(f"expected {n * n} entries for genus {g}")
    return SeifertMatrix.from_rows(
        [vals[i * n:(i + 1) * n] for i in range(n)])
