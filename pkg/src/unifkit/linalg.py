"""Exact Gaussian elimination over the rationals.

Matrices are lists of rows of Fractions.  Sizes stay in the low
hundreds, so no pivoting strategy beyond "first nonzero" is needed.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(r, c):
    return [[ZERO] * c for _ in range(r)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def matmul(a, b):
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    if not b:
        return [[] for _ in a]
    rc = len(b[0])
    out = zeros(len(a), rc)
    for i, row in enumerate(a):
        for k, aik in enumerate(row):
            if aik:
                brow = b[k]
                orow = out[i]
                for j in range(rc):
                    orow[j] += aik * brow[j]
    return out


def mat_vec(a, v):
    return [sum((aij * vj for aij, vj in zip(row, v)), ZERO) for row in a]


def rref(m):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    rows = [list(r) for r in m]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


def rank(m):
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def kernel_basis(m, ncols=None):
    """Basis of the right kernel, one vector per free column."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m or ncols == 0:
        return [[ONE if i == j else ZERO for j in range(ncols)]
                for i in range(ncols)]
    rows, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        out.append(v)
    return out


def solve_many(a, bs):
    """Solve a x = b for each b in bs; returns list of solutions.
    Raises if some b is outside the column span (callers rely on
    consistency, so that is a real error)."""
    nr = len(a)
    nc = len(a[0]) if a else 0
    k = len(bs)
    aug = [list(a[i]) + [b[i] for b in bs] for i in range(nr)]
    rows, pivots = rref(aug)
    sols = []
    piv_in_a = [p for p in pivots if p < nc]
    for t in range(k):
        v = [ZERO] * nc
        for r, pc in enumerate(piv_in_a):
            v[pc] = rows[r][nc + t]
        # verify by multiplication; rref bookkeeping alone can miss an
        # inconsistent right-hand side when several share a bad row
        for i in range(nr):
            if sum((a[i][j] * v[j] for j in range(nc)), ZERO) != bs[t][i]:
                raise ValueError("inconsistent system")
        sols.append(v)
    return sols


def transpose(m):
    if not m:
        return []
    return [list(col) for col in zip(*m)]
