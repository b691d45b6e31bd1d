"""Explicit constructions of the named lattices used by the graphs and characters."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import linalg as la
from .lattice import Ambient, Lattice, LatticeError, direct_sum, glue_extension, make_lattice

HALF = Fraction(1, 2)


def z(n: int) -> Lattice:
    return make_lattice("Z", n)


def e8() -> Lattice:
    return make_lattice("E", 8)


def e8_squared() -> tuple[Lattice, list]:
    """E8 + E8 and the matrix swapping the two factors."""
    L = direct_sum(e8(), e8(), name="E8^2")
    swap = [[int(j == (i + 8) % 16) for j in range(16)] for i in range(16)]
    return L, [swap]


def _spinor_glue(L: Lattice, blocks) -> tuple:
    """Coordinates of the vector with entries 1/2 on the given ambient blocks."""
    N = L.ambient.dim
    a = [Fraction(0)] * N
    for lo, hi in blocks:
        for i in range(lo, hi):
            a[i] = HALF
    return L.from_ambient(a)


def d_plus(n: int) -> Lattice:
    """D_n with the spinor glue (1/2, ..., 1/2); even unimodular for n = 0 mod 8."""
    D = make_lattice("D", n)
    return glue_extension(D, [_spinor_glue(D, [(0, n)])], name=f"D{n}+")


def d8_squared_plus() -> Lattice:
    D = direct_sum(make_lattice("D", 8), make_lattice("D", 8))
    return glue_extension(D, [_spinor_glue(D, [(0, 16)])], even=True, name="(D8^2)+")


def golay_code() -> np.ndarray:
    """12 x 24 generator matrix (rows) of the extended binary Golay code.

    Cyclic shifts of the quadratic residues mod 23, extended by a parity bit,
    then permuted so that positions 0-7, 8-15 and 16-23 are three octads.
    """
    qr = sorted({(i * i) % 23 for i in range(1, 23)})
    v = np.zeros(23, dtype=np.int64)
    v[qr] = 1
    rows = [np.append(np.roll(v, k), np.roll(v, k).sum() % 2) for k in range(23)]
    B = _rref2(np.array(rows))
    words = _codewords(B)
    octads = [w for w in words if w.sum() == 8]
    o1 = octads[0]
    o2 = next(w for w in octads if not (w & o1).any())
    o3 = 1 - o1 - o2
    if o3.sum() != 8 or not any((w == o3).all() for w in octads):
        raise AssertionError("no trio found")
    perm = list(np.flatnonzero(o1)) + list(np.flatnonzero(o2)) + list(np.flatnonzero(o3))
    return _rref2(B[:, perm])


def _rref2(M: np.ndarray) -> np.ndarray:
    M = M.copy() % 2
    r = 0
    for c in range(M.shape[1]):
        p = [i for i in range(r, M.shape[0]) if M[i, c]]
        if not p:
            continue
        M[[r, p[0]]] = M[[p[0], r]]
        for i in range(M.shape[0]):
            if i != r and M[i, c]:
                M[i] ^= M[r]
        r += 1
    return M[:r]


def _codewords(B: np.ndarray) -> np.ndarray:
    k = B.shape[0]
    coeffs = (np.arange(1 << k)[:, None] >> np.arange(k)) & 1
    return coeffs @ B % 2


def leech() -> Lattice:
    """Leech lattice in the coordinates x / sqrt(8), x in Z^24, from the Golay code."""
    C = golay_code()
    gens = [list(2 * c) for c in C]
    for i in range(23):
        for s in (1, -1):
            g = [0] * 24
            g[i], g[i + 1] = 4, 4 * s
            gens.append(g)
    gens.append([-3] + [1] * 23)
    rows = la.hnf_rows(gens)
    amb = Ambient(rows, Fraction(1, 8))
    L = Lattice(amb.gram(), "Leech", amb)
    if L.det != 1 or not L.is_even:
        raise LatticeError("Leech construction failed")
    return L


def ambient_vector(L: Lattice, a) -> tuple:
    x = L.from_ambient([Fraction(t) for t in a])
    if any(t.denominator != 1 for t in x):
        raise LatticeError("vector is not in the lattice")
    return tuple(int(t) for t in x)


def d24_plus() -> Lattice:
    return d_plus(24)


def odd_leech() -> Lattice:
    """Odd unimodular neighbour of the Leech lattice along v = (8, 0, ..., 0)/sqrt(8)."""
    from .neighbour import two_neighbour
    L = leech()
    res = two_neighbour(L, ambient_vector(L, [8] + [0] * 23))
    return res.Lodd.renamed("O24")


def z24_from_d24() -> Lattice:
    """Odd neighbour of D24+ along v = (2, 0, ..., 0)."""
    from .neighbour import two_neighbour
    L = d24_plus()
    res = two_neighbour(L, ambient_vector(L, [2] + [0] * 23))
    return res.Lodd.renamed("Z^24 (from D24+)")


def e8_z16() -> Lattice:
    return direct_sum(e8(), z(16), name="E8+Z^16")
