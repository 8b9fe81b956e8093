"""Shared random generators and independent oracles for the test suite."""

from fractions import Fraction

from concord.seifert import SeifertMatrix

F = Fraction


def random_seifert(rng, genus, bound=5):
    """Random valid Seifert matrix in interleaved block convention."""
    n = 2 * genus
    m = [[0] * n for _ in range(n)]
    for i in range(genus):
        a, d = rng.randint(-bound, bound), rng.randint(-bound, bound)
        c = rng.randint(-bound, bound)
        b = c + rng.choice((1, -1))
        m[2 * i][2 * i], m[2 * i][2 * i + 1] = a, b
        m[2 * i + 1][2 * i], m[2 * i + 1][2 * i + 1] = c, d
    for i in range(genus):
        for j in range(i + 1, genus):
            blk = [[rng.randint(-bound, bound) for _ in range(2)]
                   for _ in range(2)]
            for r in range(2):
                for c2 in range(2):
                    m[2 * i + r][2 * j + c2] = blk[r][c2]
                    m[2 * j + c2][2 * i + r] = blk[r][c2]
    return SeifertMatrix.from_rows(m)


def _identity(g):
    return [[1 if i == j else 0 for j in range(g)] for i in range(g)]


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


def _random_unimodular(rng, g, steps=4):
    u = _identity(g)
    uinv = _identity(g)
    for _ in range(steps):
        i, j = rng.randrange(g), rng.randrange(g)
        if i == j:
            continue
        k = rng.randint(-2, 2)
        e = _identity(g)
        e[i][j] = k
        einv = _identity(g)
        einv[i][j] = -k
        u = _matmul(u, e)
        uinv = _matmul(einv, uinv)
    return u, uinv


def _random_symmetric(rng, g, bound=2):
    s = [[0] * g for _ in range(g)]
    for i in range(g):
        for j in range(i, g):
            s[i][j] = s[j][i] = rng.randint(-bound, bound)
    return s


def random_metabolic(rng, genus, bound=3, conjugations=3):
    """Random metabolic Seifert matrix plus a verified integral
    metabolizer, built by conjugating a block-zero form by a random
    integer symplectic matrix."""
    g = genus
    n = 2 * g
    l = [[rng.randint(-bound, bound) for _ in range(g)] for _ in range(g)]
    m_blk = [[l[j][i] + (1 if i == j else 0) for j in range(g)]
             for i in range(g)]
    nn = _random_symmetric(rng, g, bound)
    v_std = [[0] * n for _ in range(n)]
    for i in range(g):
        for j in range(g):
            v_std[i][g + j] = l[i][j]
            v_std[g + i][j] = m_blk[i][j]
            v_std[g + i][g + j] = nn[i][j]
    p = _identity(n)
    pinv = _identity(n)
    for _ in range(conjugations):
        kind = rng.randrange(3)
        if kind == 0:
            s = _random_symmetric(rng, g, 1)
            blk = _identity(n)
            inv = _identity(n)
            for i in range(g):
                for j in range(g):
                    blk[i][g + j] = s[i][j]
                    inv[i][g + j] = -s[i][j]
        elif kind == 1:
            s = _random_symmetric(rng, g, 1)
            blk = _identity(n)
            inv = _identity(n)
            for i in range(g):
                for j in range(g):
                    blk[g + i][j] = s[i][j]
                    inv[g + i][j] = -s[i][j]
        else:
            u, uinv = _random_unimodular(rng, g)
            blk = [[0] * n for _ in range(n)]
            inv = [[0] * n for _ in range(n)]
            for i in range(g):
                for j in range(g):
                    blk[i][j] = u[i][j]
                    blk[g + i][g + j] = uinv[j][i]     # U^{-T}
                    inv[i][j] = uinv[i][j]
                    inv[g + i][g + j] = u[j][i]        # U^T
        p = _matmul(p, blk)
        pinv = _matmul(inv, pinv)
    vp = _matmul(_matmul([[p[j][i] for j in range(n)] for i in range(n)],
                         v_std), p)
    # permute a-then-b coordinates into interleaved pairs
    sigma = []
    for i in range(g):
        sigma.extend([i, g + i])
    v_int = [[vp[sigma[x]][sigma[y]] for y in range(n)] for x in range(n)]
    # columns of pinv are the metabolizer basis in the new coordinates
    basis = []
    for i in range(g):
        vec_std = [pinv[x][i] for x in range(n)]
        basis.append(tuple(vec_std[sigma[x]] for x in range(n)))
    return SeifertMatrix.from_rows(v_int), tuple(basis)


def random_cayley(rng, span=20):
    num = rng.randint(-span, span)
    den = rng.randint(1, span)
    return F(num, den)


def exact_rank_hermitian(v, s):
    """Rank of s(V + V^T) + i(V^T - V) over the Gaussian rationals,
    by plain Gaussian elimination (independent of the charpoly path)."""
    n = v.size
    e = v.entries
    a = [[(F(s * (e[i][j] + e[j][i])), F(e[j][i] - e[i][j]))
          for j in range(n)] for i in range(n)]
    rank = 0
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, n):
            if a[r][col] != (0, 0):
                piv = r
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        pr, pi = a[row][col]
        d = pr * pr + pi * pi
        for r in range(row + 1, n):
            br, bi = a[r][col]
            if (br, bi) == (0, 0):
                continue
            # factor = b / p
            fr = (br * pr + bi * pi) / d
            fi = (bi * pr - br * pi) / d
            a[r] = [(xr - (fr * yr - fi * yi), xi - (fr * yi + fi * yr))
                    for (xr, xi), (yr, yi) in zip(a[r], a[row])]
        row += 1
        rank += 1
    return rank


def oracle_lt_signature(v, s):
    """Certified floating eigenvalue oracle for the signature of
    (1 - w)V + (1 - w~)V^T at the Cayley point s.

    Uses an exact rank computation for the zero eigenvalue count and
    escalates mpmath precision until the remaining eigenvalues are
    certified away from zero.
    """
    from mpmath import mp

    n = v.size
    if n == 0 or s == 0:
        return 0
    zeros = n - exact_rank_hermitian(v, s)
    e = v.entries
    for dps in (30, 60, 120, 240):
        with mp.workdps(dps):
            a = mp.matrix(n, n)
            maxabs = mp.mpf(0)
            for i in range(n):
                for j in range(n):
                    re = mp.mpf(int((s * (e[i][j] + e[j][i])).numerator)) / \
                        int((s * (e[i][j] + e[j][i])).denominator)
                    im = mp.mpf(e[j][i] - e[i][j])
                    a[i, j] = mp.mpc(re, im)
                    maxabs = max(maxabs, abs(a[i, j]))
            ev = mp.eighe(a, eigvals_only=True)
            bound = (maxabs + 1) * n * mp.mpf(10) ** (-(dps - 5))
            vals = sorted([ev[i] for i in range(n)], key=abs)
            small, big = vals[:zeros], vals[zeros:]
            if all(abs(x) <= bound for x in small) and \
                    all(abs(x) > bound for x in big):
                sig = sum(1 if x > 0 else -1 for x in big)
                return sig if s > 0 else -sig
    raise ArithmeticError("oracle failed to certify eigenvalues")
