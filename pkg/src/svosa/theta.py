"""Theta series of lattice cosets.

Direct enumeration is fine for small ranks. For rank 24 at norm 10 there are
billions of vectors, so `block_theta` splits the ambient space into
orthogonal coordinate blocks: with S_i the part of L inside block i, every
coset of L is a finite union of cosets of S_1 + ... + S_k, whose theta series
are products of small rank-8 coset thetas.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Sequence

import numpy as np

from . import linalg as la
from .lattice import Lattice, LatticeError
from .qseries import QSeries
from .vectors import coset_norm_counts


def _series_from_counts(counts: Counter, prec: Fraction) -> QSeries:
    N = 1
    for nrm in counts:
        N = lcm(N, (Fraction(nrm) / 2).denominator)
    return QSeries.from_terms([(Fraction(n) / 2, c) for n, c in counts.items()], prec,
                              lcm(N, prec.denominator))


def theta_series(L: Lattice, rep: Sequence | None = None, prec=2) -> QSeries:
    """sum over x in rep + L of q^(<x,x>/2), known below q^prec."""
    prec = Fraction(prec)
    bound = 2 * prec
    counts = coset_norm_counts(L, rep, bound)
    counts = Counter({n: c for n, c in counts.items() if n < bound})
    return _series_from_counts(counts, prec)


def default_blocks(L: Lattice, size: int = 8) -> list[list[int]]:
    if L.ambient is None:
        raise LatticeError("block theta needs an ambient realisation")
    N = L.ambient.dim
    if N % size:
        raise LatticeError("ambient dimension is not a multiple of the block size")
    return [list(range(i, i + size)) for i in range(0, N, size)]


class _Block:
    """S = L meet span(block), with a map L (x) Q -> S-coordinates."""

    def __init__(self, L: Lattice, B: list, cols: list[int]):
        n = L.rank
        out = [j for j in range(len(B[0])) if j not in set(cols)]
        if out:
            Bout = [[B[i][j] for j in out] for i in range(n)]
            Bi, d = la.scale_to_int(Bout)
            rows = la.integer_kernel(la.transpose(Bi))
        else:
            rows = la.identity(n)
        rows = la.hnf_rows(rows) if rows else []
        if len(rows) != len(cols):
            raise LatticeError(f"lattice meets block {cols[0]}.. in rank {len(rows)}, not {len(cols)}")
        self.rows = rows
        self.cols = cols
        # ambient block of the S basis, square and invertible
        Sb = la.matmul([list(map(Fraction, r)) for r in rows], B)
        Sb = [[r[j] for j in cols] for r in Sb]
        inv = la.inverse(Sb)
        # L-coords y -> S-coords c = y B[:, cols] Sb^-1
        Bc = [[B[i][j] for j in cols] for i in range(n)]
        M = la.matmul(Bc, inv)
        Mi, self.den = la.scale_to_int(M)
        self.M = np.array(Mi, dtype=np.int64)
        G = la.matmul(la.matmul([list(map(Fraction, r)) for r in rows], [list(r) for r in L.gram]),
                      la.transpose([list(map(Fraction, r)) for r in rows]))
        self.lattice = Lattice(G)
        self._cache: dict = {}

    def theta(self, key: tuple, mod: int, bound: Fraction) -> Counter:
        rep = tuple(Fraction(k, mod) for k in key)
        hit = self._cache.get((rep, bound))
        if hit is None:
            hit = coset_norm_counts(self.lattice, list(rep), bound)
            self._cache[(rep, bound)] = hit
        return hit


def block_theta(L: Lattice, reps: Sequence[Sequence], prec, blocks=None) -> list[QSeries]:
    """theta series of rep + L for each rep, via the block decomposition."""
    prec = Fraction(prec)
    bound = 2 * prec
    if blocks is None:
        blocks = default_blocks(L)
    B = [list(r) for r in L.ambient.basis]
    parts = [_Block(L, B, cols) for cols in blocks]
    S_rows = [r for p in parts for r in p.rows]
    # coset representatives of L / S from the Smith form U S V = D
    d, U, V = la.smith(S_rows)
    Vinv = la.inverse([list(map(Fraction, r)) for r in V])
    Vinv = np.array([[int(x) for x in r] for r in Vinv], dtype=np.int64)
    ranges = [range(int(x)) for x in d]
    T = np.array(list(product(*ranges)), dtype=np.int64).reshape(-1, len(d))
    X = T @ Vinv
    out = []
    for rep in reps:
        rep = [Fraction(r) for r in rep] if rep is not None else [Fraction(0)] * L.rank
        rden = 1
        for r in rep:
            rden = lcm(rden, r.denominator)
        rnum = np.array([int(r * rden) for r in rep], dtype=np.int64)
        Y = X * rden + rnum  # numerators over rden
        keys = []
        for p in parts:
            mod = rden * p.den
            C = (Y @ p.M) % mod
            keys.append((C, mod))
        combos = Counter()
        for row in range(Y.shape[0]):
            combos[tuple(tuple(int(v) for v in k[0][row]) for k in keys)] += 1
        total: Counter = Counter()
        # norms live on a grid 1/G; gather the pieces first
        pieces = []
        for combo, mult in combos.items():
            thetas = [p.theta(key, k[1], bound) for p, key, k in zip(parts, combo, keys)]
            pieces.append((thetas, mult))
        G = 1
        for thetas, _ in pieces:
            for t in thetas:
                for nrm in t:
                    G = lcm(G, Fraction(nrm).denominator)
        size = int(bound * G) + 1
        for thetas, mult in pieces:
            acc = None
            for t in thetas:
                arr = np.zeros(size, dtype=np.int64)
                for nrm, c in t.items():
                    i = Fraction(nrm) * G
                    if i < size:
                        arr[int(i)] += c
                acc = arr if acc is None else np.convolve(acc, arr)[:size]
            for i in np.flatnonzero(acc):
                total[Fraction(int(i), G)] += int(acc[i]) * mult
        total = Counter({n: c for n, c in total.items() if n < bound})
        out.append(_series_from_counts(total, prec))
    return out
