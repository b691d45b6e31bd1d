"""Short vector and coset enumeration (Fincke-Pohst on an LLL-reduced basis).

Floating point only steers the search; every reported vector has its norm
recomputed in integer arithmetic and is kept only if it satisfies the exact
bound. The float bound is padded slightly so nothing on the boundary is lost.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .lattice import Lattice

_PAD = 1e-7


@dataclass(frozen=True)
class VectorSet:
    """Vectors num/den (rows, L-coordinates) with norms norm_num/norm_den."""
    num: np.ndarray
    den: int
    norm_num: np.ndarray
    norm_den: int

    def __len__(self):
        return self.num.shape[0]

    def norms(self) -> list[Fraction]:
        return [Fraction(int(x), self.norm_den) for x in self.norm_num]

    def vectors(self) -> list[tuple]:
        if self.den == 1:
            return [tuple(int(x) for x in row) for row in self.num]
        return [tuple(Fraction(int(x), self.den) for x in row) for row in self.num]

    def norm_counts(self) -> Counter:
        c = Counter(self.norm_num.tolist())
        return Counter({Fraction(k, self.norm_den): v for k, v in c.items()})


def _fp_matrix(G: np.ndarray) -> np.ndarray:
    n = G.shape[0]
    q = G.astype(float).copy()
    for i in range(n):
        for j in range(i + 1, n):
            q[j, i] = q[i, j]
            q[i, j] /= q[i, i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k, l] -= q[k, i] * q[i, l]
    return q


_CHUNK = 1 << 20


def _fincke_pohst(q: np.ndarray, shift: np.ndarray, bound: float) -> np.ndarray:
    """All integer y with Q(y + shift) <= bound (float test, padded).

    Breadth-first over the levels n-1, ..., 0 with all partial vectors of a
    level held in numpy arrays; large frontiers are processed in chunks.
    """
    n = q.shape[0]
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    c = np.asarray(shift, dtype=float)
    qd = np.diag(q).copy()
    bound = bound * (1 + _PAD) + _PAD
    out: list[np.ndarray] = []

    def expand(i, Y, X, rem):
        # Y, X hold coordinates i+1..n-1 (columns i+1: of n-wide arrays)
        if i < 0:
            out.append(Y)
            return
        if Y.shape[0] > _CHUNK:
            for s in range(0, Y.shape[0], _CHUNK):
                expand(i, Y[s:s + _CHUNK], X[s:s + _CHUNK], rem[s:s + _CHUNK])
            return
        cen = -(X[:, i + 1:] @ q[i, i + 1:]) if i < n - 1 else np.zeros(Y.shape[0])
        w = np.sqrt(np.maximum(rem, 0.0) / qd[i])
        lo = np.ceil(cen - w - c[i] - 1e-12).astype(np.int64)
        hi = np.floor(cen + w - c[i] + 1e-12).astype(np.int64)
        cnt = np.maximum(hi - lo + 1, 0)
        tot = int(cnt.sum())
        if tot == 0:
            return
        idx = np.repeat(np.arange(Y.shape[0]), cnt)
        offs = np.arange(tot, dtype=np.int64) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        yi = lo[idx] + offs
        xi = yi + c[i]
        r = rem[idx] - qd[i] * (xi - cen[idx]) ** 2
        ok = r >= -1e-9
        Y2 = Y[idx][ok]
        X2 = X[idx][ok]
        Y2[:, i] = yi[ok]
        X2[:, i] = xi[ok]
        expand(i - 1, Y2, X2, r[ok])

    expand(n - 1, np.zeros((1, n), dtype=np.int64), np.zeros((1, n)), np.array([bound]))
    if not out:
        return np.zeros((0, n), dtype=np.int64)
    return np.concatenate(out)


def _reduced(L: Lattice):
    G, T, Tinv = L.reduction
    cache = L.__dict__.get("_fp_cache")
    if cache is None:
        Gf = np.array([[float(x) for x in row] for row in G]).reshape(L.rank, L.rank)
        cache = (_fp_matrix(Gf), np.array(T, dtype=np.int64).reshape(L.rank, L.rank), Tinv)
        L.__dict__["_fp_cache"] = cache
    return cache


def _enumerate(L: Lattice, rep: Sequence | None, bound) -> VectorSet:
    n = L.rank
    bound = Fraction(bound)
    Gi, gd = L.gram_int
    if rep is None:
        rep = [Fraction(0)] * n
    rep = [Fraction(r) for r in rep]
    den = 1
    for r in rep:
        den = lcm(den, r.denominator)
    rep_num = np.array([int(r * den) for r in rep], dtype=np.int64)
    norm_den = gd * den * den
    if n == 0:
        z = np.zeros((1, 0), dtype=np.int64)
        return VectorSet(z, 1, np.zeros(1, dtype=np.int64), norm_den)
    q, T, Tinv = _reduced(L)
    # shift in the reduced basis: c = T^-1 rep
    c = [sum(Tinv[i][j] * rep[j] for j in range(n)) for i in range(n)]
    ys = _fincke_pohst(q, np.array([float(x) for x in c]), float(bound))
    # x = T y + rep, scaled by den
    X = ys @ T.T * den + rep_num
    nn = np.einsum("ij,jk,ik->i", X, Gi, X)
    keep = nn <= (bound.numerator * norm_den) // bound.denominator
    X, nn = X[keep], nn[keep]
    return VectorSet(X, den, nn, norm_den)


def _canonical(vs: VectorSet, drop_zero: bool, one_per_sign: bool) -> VectorSet:
    X, nn = vs.num, vs.norm_num
    if drop_zero:
        nz = nn != 0
        X, nn = X[nz], nn[nz]
    if one_per_sign and X.shape[0]:
        first = np.argmax(X != 0, axis=1)
        lead = X[np.arange(X.shape[0]), first]
        keep = lead > 0
        X, nn = X[keep], nn[keep]
    if X.shape[0]:
        order = np.lexsort(tuple(X[:, j] for j in range(X.shape[1] - 1, -1, -1)) + (nn,))
        X, nn = X[order], nn[order]
    return VectorSet(X, vs.den, nn, vs.norm_den)


def short_vectors(L: Lattice, max_sqlen) -> VectorSet:
    """Nonzero vectors of norm <= max_sqlen, one per sign pair, canonically sorted.

    Canonical sign: first nonzero coordinate positive. Order: by norm, then
    lexicographically by coordinates.
    """
    if Fraction(max_sqlen) < 0:
        raise ValueError("bound must be nonnegative")
    return _canonical(_enumerate(L, None, max_sqlen), True, True)


def all_short_vectors(L: Lattice, max_sqlen) -> VectorSet:
    """Like short_vectors but with both signs present (cached per lattice)."""
    b = Fraction(max_sqlen)
    hit = L.__dict__.get("_sv_cache")
    if hit is not None and hit[0] >= b:
        vs = hit[1]
        keep = vs.norm_num * b.denominator <= b.numerator * vs.norm_den
        return VectorSet(vs.num[keep], vs.den, vs.norm_num[keep], vs.norm_den)
    vs = _canonical(_enumerate(L, None, b), True, False)
    if len(vs) <= 500_000:
        L.__dict__["_sv_cache"] = (b, vs)
    return vs


def coset_short_vectors(L: Lattice, rep: Sequence, max_sqlen) -> VectorSet:
    """All x in rep + L with norm <= max_sqlen, sorted by (norm, coordinates)."""
    return _canonical(_enumerate(L, rep, max_sqlen), False, False)


def coset_norm_counts(L: Lattice, rep: Sequence | None, max_sqlen) -> Counter:
    """Multiset of norms of rep + L up to the bound (no sorting)."""
    return _enumerate(L, rep, max_sqlen).norm_counts()
