"""Exact integer and rational linear algebra on small dense matrices.

Everything here works over Python ints / Fractions; no floating point.  The
integer kernel routine returns a basis of the full lattice of integer
solutions (not merely a scaled rational basis), which is what integral span
comparisons need.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[int, ...]


# -- small vector helpers ------------------------------------------------------


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(a, c):
    return tuple(c * x for x in a)


def vdot(a, b):
    return sum(x * y for x, y in zip(a, b))


def is_zero_vec(a) -> bool:
    return all(x == 0 for x in a)


def canonical_sign(a: Vec) -> Vec:
    """Flip the sign so the first nonzero entry is positive."""
    for x in a:
        if x > 0:
            return tuple(a)
        if x < 0:
            return vneg(a)
    return tuple(a)


def content(a) -> int:
    g = 0
    for x in a:
        g = gcd(g, abs(x))
    return g


def primitive(a: Vec) -> Vec:
    g = content(a)
    return tuple(x // g for x in a) if g > 1 else tuple(a)


def clear_denominators(row) -> Vec:
    lcm = 1
    for x in row:
        if isinstance(x, Fraction):
            d = x.denominator
            lcm = lcm * d // gcd(lcm, d)
    return tuple(int(x * lcm) for x in row)


# -- integer column echelon / kernel -------------------------------------------


def _column_echelon(rows: list[list[int]], ncols: int):
    """Bring the column span into echelon form by unimodular column operations.

    Returns (echelon columns as list of column vectors, kernel basis columns),
    where the kernel columns span {x in Z^ncols : A x = 0} as a lattice.
    """
    nrows = len(rows)
    # work columnwise: cols[j] = j-th column of A; U tracks the operations.
    cols = [[rows[i][j] for i in range(nrows)] for j in range(ncols)]
    unit = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    pivot_cols: list[int] = []
    start = 0
    for r in range(nrows):
        # gcd-sweep row r across columns start..end
        j = start
        while j < len(cols):
            if cols[j][r] != 0:
                break
            j += 1
        else:
            continue
        if j != start:
            cols[start], cols[j] = cols[j], cols[start]
            unit[start], unit[j] = unit[j], unit[start]
        for j in range(start + 1, len(cols)):
            while cols[j][r] != 0:
                a, b = cols[start][r], cols[j][r]
                if abs(a) > abs(b):
                    cols[start], cols[j] = cols[j], cols[start]
                    unit[start], unit[j] = unit[j], unit[start]
                    continue
                q = cols[j][r] // cols[start][r]
                for i in range(nrows):
                    cols[j][i] -= q * cols[start][i]
                for i in range(ncols):
                    unit[j][i] -= q * unit[start][i]
        if cols[start][r] < 0:
            cols[start] = [-x for x in cols[start]]
            unit[start] = [-x for x in unit[start]]
        pivot_cols.append(start)
        start += 1
    echelon = [cols[j] for j in range(start)]
    kernel = [tuple(unit[j]) for j in range(start, len(cols))]
    return echelon, kernel


def kernel_int(rows: list, ncols: int) -> list[Vec]:
    """Basis of the lattice of integer solutions of ``A x = 0``.

    Rows may contain Fractions; they are cleared first (same solution set).
    Deterministic for a fixed row order.
    """
    int_rows = [list(clear_denominators(r)) for r in rows]
    if not int_rows:
        return [
            tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)
        ]
    _, kernel = _column_echelon(int_rows, ncols)
    return [canonical_sign(k) for k in kernel]


def rank_int(vectors: list) -> int:
    vecs = [list(clear_denominators(v)) for v in vectors]
    vecs = [v for v in vecs if any(v)]
    if not vecs:
        return 0
    echelon, _ = _column_echelon(vecs, len(vecs[0]))
    return len(echelon)


# -- lattice membership / span comparison ---------------------------------------


class Lattice:
    """The integer span of a list of vectors, with exact membership testing."""

    def __init__(self, vectors: list[Vec], dim: int):
        self.dim = dim
        rows = [list(v) for v in vectors if not is_zero_vec(v)]
        # column echelon of the generator matrix (generators as columns)
        if rows:
            mat = [[rows[j][i] for j in range(len(rows))] for i in range(dim)]
            echelon, _ = _column_echelon(mat, len(rows))
        else:
            echelon = []
        self.basis = [tuple(col) for col in echelon]

    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        r = list(v)
        if len(r) != self.dim:
            raise ValueError("dimension mismatch")
        for col in self.basis:
            i = next((k for k, x in enumerate(col) if x != 0), None)
            if i is None:
                continue
            if r[i] == 0:
                continue
            q, rem = divmod(r[i], col[i])
            if rem:
                return False
            for k in range(self.dim):
                r[k] -= q * col[k]
        return all(x == 0 for x in r)


def span_equal_int(vs: list[Vec], ws: list[Vec], dim: int) -> bool:
    lv, lw = Lattice(vs, dim), Lattice(ws, dim)
    if lv.rank() != lw.rank():
        return False
    return all(lv.contains(w) for w in ws) and all(lw.contains(v) for v in vs)


def span_equal_rational(vs: list, ws: list, dim: int) -> bool:
    rv = rank_int(vs)
    rw = rank_int(ws)
    if rv != rw:
        return False
    return rank_int(list(vs) + list(ws)) == rv


# -- rational reduced row echelon (canonical bases) ------------------------------


def rref_rational(vectors: list) -> list[tuple[Fraction, ...]]:
    """Canonical reduced echelon basis of the rational row span."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[Fraction]] = []
    pivots: list[int] = []
    for col in range(ncols):
        pick = None
        for r in rows:
            if r[col] != 0 and all(r[c] == 0 for c in range(col)):
                pick = r
                break
        if pick is None:
            continue
        rows.remove(pick)
        pick = [x / pick[col] for x in pick]
        rows = [
            [x - r[col] * p for x, p in zip(r, pick)] if r[col] else r for r in rows
        ]
        out = [
            [x - r[col] * p for x, p in zip(r, pick)] if r[col] else r for r in out
        ]
        out.append(pick)
        pivots.append(col)
        rows = [r for r in rows if any(r)]
        if not rows:
            break
    order = sorted(range(len(out)), key=lambda i: pivots[i])
    return [tuple(out[i]) for i in order]


def solve_rational(matrix: list, rhs: list):
    """One exact solution of ``M x = rhs`` or None; M given as rows."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    piv = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        aug[r] = [x / aug[r][c] for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        x[c] = aug[i][ncols]
    return x


# -- unimodular basis completion -------------------------------------------------


def unimodular_with_first_column(alpha: Vec) -> list[list[int]]:
    """An integer matrix U with det +-1 whose first column is ``alpha``.

    Requires ``alpha`` primitive.  Deterministic: built from a fixed sequence
    of extended-gcd row operations.
    """
    n = len(alpha)
    if content(alpha) != 1:
        raise ValueError("character is not primitive")
    # Row-reduce alpha to e1 by unimodular row ops, tracking their product M;
    # then U = M^{-1} has first column alpha.  We accumulate M directly.
    a = list(alpha)
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def rowop(i, j, q):
        # row_i -= q * row_j  (applied to both a and m)
        a[i] -= q * a[j]
        m[i] = [x - q * y for x, y in zip(m[i], m[j])]

    def rowswap(i, j):
        a[i], a[j] = a[j], a[i]
        m[i], m[j] = m[j], m[i]

    pivot = 0
    for i in range(1, n):
        while a[i] != 0:
            if a[pivot] == 0 or abs(a[i]) < abs(a[pivot]):
                rowswap(pivot, i)
                continue
            rowop(i, pivot, a[i] // a[pivot])
    if a[pivot] < 0:
        a[pivot] = -a[pivot]
        m[pivot] = [-x for x in m[pivot]]
    assert a[pivot] == 1 and all(x == 0 for x in a[1:]), "primitive reduction failed"
    return mat_inverse_int(m)


def mat_mul_vec(m: list[list[int]], v) -> Vec:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def mat_inverse_int(m: list[list[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    n = len(m)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        x = solve_rational(m, e)
        if x is None or any(v.denominator != 1 for v in x):
            raise ValueError("matrix is not unimodular")
        cols.append([int(v) for v in x])
    return [[cols[j][i] for j in range(n)] for i in range(n)]
