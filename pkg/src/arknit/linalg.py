"""Dense exact linear algebra on list-of-lists matrices.

Everything takes the Field explicitly. Rows are lists; a matrix with zero
rows or zero columns is legal and handled (shape must then be passed where
it cannot be inferred). Column-vector convention throughout: solve(A, b)
solves A x = b, kernel_basis returns columns.
"""

from __future__ import annotations

from fractions import Fraction


def zeros(r, c, F):
    return [[F.zero] * c for _ in range(r)]


def identity(n, F):
    m = zeros(n, n, F)
    for i in range(n):
        m[i][i] = F.one
    return m


def copy_mat(a):
    return [row[:] for row in a]


def shape(a, ncols=None):
    r = len(a)
    c = len(a[0]) if r else (0 if ncols is None else ncols)
    return r, c


def transpose(a, ncols=None):
    r, c = shape(a, ncols)
    return [[a[i][j] for i in range(r)] for j in range(c)]


def mat_mul(a, b, F, inner=None, bcols=None):
    # inner and bcols disambiguate shapes when a or b has no rows
    r = len(a)
    k = len(a[0]) if r else (len(b) if inner is None else inner)
    c = len(b[0]) if b else (0 if bcols is None else bcols)
    out = zeros(r, c, F)
    for i in range(r):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if F.is_zero(x):
                continue
            bt = b[t]
            for j in range(c):
                if not F.is_zero(bt[j]):
                    oi[j] = F.add(oi[j], F.mul(x, bt[j]))
    return out


def mat_add(a, b, F):
    return [[F.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b, F):
    return [[F.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a, F):
    return [[F.mul(c, x) for x in row] for row in a]


def mat_vec(a, v, F):
    return [
        _dot(row, v, F)
        for row in a
    ]


def _dot(row, v, F):
    s = F.zero
    for x, y in zip(row, v):
        if not (F.is_zero(x) or F.is_zero(y)):
            s = F.add(s, F.mul(x, y))
    return s


def is_zero_mat(a, F):
    return all(F.is_zero(x) for row in a for x in row)


def hstack(a, b):
    if not a:
        return copy_mat(b)
    if not b:
        return copy_mat(a)
    return [ra + rb for ra, rb in zip(a, b)]


def vstack(a, b):
    return copy_mat(a) + copy_mat(b)


def rref(a, F, ncols=None):
    """Reduced row echelon form. Returns (matrix, pivot column list)."""
    m = copy_mat(a)
    rows, cols = shape(m, ncols)
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not F.is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and not F.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a, F, ncols=None):
    rows, cols = shape(a, ncols)
    if rows == 0 or cols == 0:
        return 0
    if F.p == 0:
        r = _rank_bareiss(a)
        if r is not None:
            return r
    return len(rref(a, F, ncols)[1])


def _rank_bareiss(a):
    # fraction-free elimination; clears denominators first so the hot loop
    # stays in plain ints. Returns None on an inexact division (then the
    # caller falls back to the generic echelon path).
    m = []
    for row in a:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // _gcd(den, x.denominator)
        m.append([int(x * den) if isinstance(x, Fraction) else int(x) * den for x in row])
    rows = len(m)
    cols = len(m[0])
    r = 0
    prev = 1
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        mr = m[r]
        pc = mr[c]
        for i in range(r + 1, rows):
            mi = m[i]
            ic = mi[c]
            for j in range(c + 1, cols):
                num = pc * mi[j] - ic * mr[j]
                q, rem = divmod(num, prev)
                if rem:
                    return None
                mi[j] = q
            mi[c] = 0
        prev = pc
        r += 1
        if r == rows:
            break
    return r


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def kernel_basis(a, F, ncols=None):
    """Basis of the right null space, as a list of column vectors."""
    rows, cols = shape(a, ncols)
    if cols == 0:
        return []
    if rows == 0:
        return [_unit(cols, j, F) for j in range(cols)]
    m, pivots = rref(a, F, ncols)
    pivset = set(pivots)
    free = [j for j in range(cols) if j not in pivset]
    basis = []
    for j in free:
        v = [F.zero] * cols
        v[j] = F.one
        for r, c in enumerate(pivots):
            v[c] = F.neg(m[r][j])
        basis.append(v)
    return basis


def _unit(n, j, F):
    v = [F.zero] * n
    v[j] = F.one
    return v


def solve(a, b, F, ncols=None):
    """One solution of A x = b, or None if inconsistent."""
    rows, cols = shape(a, ncols)
    aug = [row[:] + [b[i]] for i, row in enumerate(a)] if rows else []
    if rows == 0:
        return [F.zero] * cols
    m, pivots = rref(aug, F, cols + 1)
    if cols in pivots:
        return None
    x = [F.zero] * cols
    for r, c in enumerate(pivots):
        x[c] = m[r][cols]
    return x


def inverse(a, F):
    """Inverse of a square matrix, or None if singular."""
    n = len(a)
    if n == 0:
        return []
    aug = hstack(a, identity(n, F))
    m, pivots = rref(aug, F, 2 * n)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in m]


def min_poly(a, F):
    """Minimal polynomial of a square matrix, low-degree coefficients first, monic."""
    n = len(a)
    if n == 0:
        return [F.one]
    # stack vectorized powers I, A, A^2, ... until dependent
    vecs = []
    power = identity(n, F)
    while True:
        vecs.append([x for row in power for x in row])
        # look for c_0 v_0 + ... + c_{d-1} v_{d-1} + v_d = 0
        d = len(vecs) - 1
        if d >= 1:
            cols = [vecs[i] for i in range(d)]
            rhs = [F.neg(x) for x in vecs[d]]
            sol = solve(transpose(cols, ncols=n * n), rhs, F, ncols=d)
            if sol is not None:
                return sol + [F.one]
        power = mat_mul(power, a, F)


def poly_eval_mat(coeffs, a, F):
    """Evaluate a polynomial (low-first coefficients) at a square matrix."""
    n = len(a)
    out = zeros(n, n, F)
    power = identity(n, F)
    for i, c in enumerate(coeffs):
        if not F.is_zero(c):
            out = mat_add(out, mat_scale(c, power, F), F)
        if i + 1 < len(coeffs):
            power = mat_mul(power, a, F)
    return out
