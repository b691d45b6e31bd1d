from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from svosa import linalg as la

small = st.integers(-6, 6)


def mats(m, n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)


def _det_int(M):
    return int(la.det(M))


@given(st.integers(1, 4).flatmap(lambda m: st.tuples(st.just(m), st.integers(1, 4))).flatmap(
    lambda mn: mats(*mn)))
def test_smith_form(A):
    d, U, V = la.smith(A)
    D = la.matmul(la.matmul(U, A), V)
    m, n = len(A), len(A[0])
    for i in range(m):
        for j in range(n):
            assert D[i][j] == (d[i] if i == j else 0)
    assert abs(_det_int(U)) == 1 and abs(_det_int(V)) == 1
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(x >= 0 for x in d)


@given(mats(3, 3))
def test_smith_product_is_abs_det(A):
    d, _, _ = la.smith(A)
    assert int(np.prod(d)) == abs(_det_int(A))


@given(mats(4, 3))
def test_hnf_spans_same_lattice(A):
    H = la.hnf_rows(A)
    # every generator is an integer combination of H and vice versa
    if not H:
        assert all(not any(r) for r in A)
        return
    assert len(H) == la.rank(A)
    for rows, target in ((A, H), (H, A)):
        for r in rows:
            sol = _solve_int(target, r)
            assert sol is not None


def _solve_int(rows, v):
    # v in the integer row span of `rows` (rows of full row rank after HNF)
    H = la.hnf_rows(rows)
    r = list(v)
    for h in H:
        p = next(i for i, x in enumerate(h) if x)
        if r[p] % h[p]:
            return None
        c = r[p] // h[p]
        r = [a - c * b for a, b in zip(r, h)]
    return None if any(r) else True


def test_hnf_is_echelon():
    H = la.hnf_rows([[2, 4, 6], [1, 3, 5], [0, 0, 7]])
    piv = [next(i for i, x in enumerate(r) if x) for r in H]
    assert piv == sorted(piv) and len(set(piv)) == len(piv)
    assert all(H[k][piv[k]] > 0 for k in range(len(H)))


@given(mats(2, 4))
def test_integer_kernel(A):
    K = la.integer_kernel(A)
    for k in K:
        assert all(sum(a * x for a, x in zip(row, k)) == 0 for row in A)
    assert len(K) == 4 - la.rank(A)


@given(mats(3, 3))
def test_lll_gram(B):
    if la.rank(B) < 3:
        return
    G = la.matmul(B, la.transpose(B))
    Gr, T = la.lll_gram(G)
    assert abs(_det_int(T)) == 1
    assert la.matmul(la.matmul(la.transpose(T), G), T) == [[Fraction(x) for x in r] for r in Gr]
    assert la.det(Gr) == la.det(G)
    # size reduction of the first pair
    assert 2 * abs(Gr[0][1]) <= Gr[0][0]


def test_inverse_and_det():
    M = [[2, 1], [1, 2]]
    assert la.det(M) == 3
    assert la.matmul(M, la.inverse(M)) == [[1, 0], [0, 1]]
