"""Exact integer and rational linear algebra on small dense matrices.

Everything here works on plain Python ints and Fractions (lists of rows), so
there is no overflow to worry about. Matrices in this package never exceed
rank 24, which keeps the cubic algorithms cheap.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Matrix = list  # list of rows


def frac_matrix(m) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in m]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def matmul(a, b):
    if not a:
        return []
    bt = transpose(b)
    if not bt:
        return [[] for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def common_denominator(m) -> int:
    d = 1
    for row in m:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d


def scale_to_int(m) -> tuple[list[list[int]], int]:
    """Return (integer matrix, d) with m == matrix / d."""
    d = common_denominator(m)
    return [[int(Fraction(x) * d) for x in row] for row in m], d


def det(m) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = frac_matrix(m)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        out *= p
        for r in range(c + 1, n):
            f = a[r][c] / p
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return sign * out


def leading_minors_positive(m) -> bool:
    """Positive definiteness by fraction-free (Bareiss) elimination."""
    a, _ = scale_to_int(m)
    n = len(a)
    prev = 1
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return True


def inverse(m) -> list[list[Fraction]]:
    n = len(m)
    a = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def rank(m) -> int:
    if not m:
        return 0
    a = frac_matrix(m)
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


# -- Hermite and Smith forms -------------------------------------------------

def _echelon(rows: list[list[int]], ncols: int) -> int:
    """In-place unimodular row reduction on the first ncols columns.

    Returns the number of pivot rows; those rows come first, pivots positive
    and entries above each pivot reduced into [0, pivot).
    """
    r = 0
    nrows = len(rows)
    pivots = []
    for c in range(ncols):
        # euclid on column c among rows r..end
        while True:
            nz = [i for i in range(r, nrows) if rows[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[i0] = rows[i0], rows[r]
            done = True
            for i in range(r + 1, nrows):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if r < nrows and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
            p = rows[r][c]
            for i in range(r):
                q = rows[i][c] // p
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
    return r


def hnf_rows(gens) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by integer rows."""
    if not gens:
        return []
    rows = [list(map(int, g)) for g in gens]
    r = _echelon(rows, len(rows[0]))
    return rows[:r]


def lattice_basis(gens) -> list[list[Fraction]]:
    """Basis (rows, HNF) of the Z-span of rational row vectors."""
    if not gens:
        return []
    ints, d = scale_to_int(gens)
    return [[Fraction(x, d) for x in row] for row in hnf_rows(ints)]


def integer_kernel(a) -> list[list[int]]:
    """Basis (rows, HNF) of {x in Z^k : a x = 0} for an integer m×k matrix."""
    if not a:
        raise ValueError("empty matrix has no column count")
    m, k = len(a), len(a[0])
    rows = [[int(a[i][j]) for i in range(m)] + [int(j == jj) for jj in range(k)]
            for j in range(k)]
    r = _echelon(rows, m)
    kern = [row[m:] for row in rows[r:]]
    return hnf_rows(kern) if kern else []


def smith(a) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Smith form of an integer m×n matrix: returns (d, U, V) with U a V = diag(d).

    d has min(m, n) entries, d[i] | d[i+1], all nonnegative.
    """
    m, n = len(a), len(a[0]) if a else 0
    A = [list(map(int, row)) for row in a]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q row_src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q col_src
        for row in A:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                d = [A[i][i] for i in range(min(m, n))]
                return d, U, V
            _, i0, j0 = min(nz)
            swap_rows(t, i0)
            swap_cols(t, j0)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            # divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
            U[t] = [x + y for x, y in zip(U[t], U[bad[0]])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    d = [A[i][i] for i in range(min(m, n))]
    return d, U, V


# -- LLL on a Gram matrix ---------------------------------------------------

def lll_gram(gram) -> tuple[list[list[Fraction]], list[list[int]]]:
    """Exact LLL reduction (delta = 3/4) of a positive definite Gram matrix.

    Integral variant working with the subdeterminants d_i and scaled
    Gram-Schmidt coefficients. Returns (G', T) with G' = T^t G T and T
    unimodular; the columns of T are the new basis in old coordinates.
    """
    n = len(gram)
    if n == 0:
        return [], []
    b, den = scale_to_int(gram)
    H = identity(n)  # rows are basis vectors in old coordinates
    lam = [[0] * n for _ in range(n)]
    d = [0] * (n + 1)
    d[0] = 1

    def dd(i):  # d_i for 1-based i, with d_0 = 1
        return d[i]

    def gs(k):
        for j in range(k + 1):
            u = b[k][j]
            for i in range(j):
                u = (dd(i + 1) * u - lam[k][i] * lam[j][i]) // dd(i)
            if j < k:
                lam[k][j] = u
            else:
                d[k + 1] = u

    def red(k, l):
        if 2 * abs(lam[k][l]) > dd(l + 1):
            q = (2 * lam[k][l] + dd(l + 1)) // (2 * dd(l + 1))
            H[k] = [x - q * y for x, y in zip(H[k], H[l])]
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            for row in b:
                row[k] -= q * row[l]
            lam[k][l] -= q * dd(l + 1)
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k, kmax):
        H[k], H[k - 1] = H[k - 1], H[k]
        b[k], b[k - 1] = b[k - 1], b[k]
        for row in b:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        la = lam[k][k - 1]
        B = (dd(k - 1) * dd(k + 1) + la * la) // dd(k)
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (dd(k + 1) * lam[i][k - 1] - la * t) // dd(k)
            lam[i][k - 1] = (B * t + la * lam[i][k]) // dd(k + 1)
        d[k] = B

    d[1] = b[0][0]
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gs(k)
        red(k, k - 1)
        if 4 * dd(k + 1) * dd(k - 1) < 3 * dd(k) ** 2 - 4 * lam[k][k - 1] ** 2:
            swap(k, kmax)
            k = max(1, k - 1)
            continue
        for l in range(k - 2, -1, -1):
            red(k, l)
        k += 1
    T = transpose(H)
    G = [[Fraction(x, den) for x in row] for row in b]
    return G, T


def gcd_list(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, int(x))
    return g
