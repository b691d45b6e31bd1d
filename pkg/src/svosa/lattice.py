"""Positive definite lattices given by exact rational Gram matrices.

A lattice is its Gram matrix in a chosen basis. Vectors are coordinate
tuples in that basis; rational coordinates denote points of L (x) Q such as
dual or coset representatives. Optionally a lattice remembers a realisation
in some R^N (`Ambient`), which is used only to pick good block
decompositions for theta series and to read vectors in familiar coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg as la

Vec = tuple  # tuple of Fractions (or ints), coordinates in a lattice basis


class LatticeError(ValueError):
    pass


def _ftuple(m) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


@dataclass(frozen=True)
class Ambient:
    """Rows of `basis` are the lattice basis vectors in R^N; Gram = scale * B B^t."""
    basis: tuple
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "basis", _ftuple(self.basis))
        object.__setattr__(self, "scale", Fraction(self.scale))

    @property
    def dim(self) -> int:
        return len(self.basis[0]) if self.basis else 0

    def gram(self):
        B = [list(r) for r in self.basis]
        return [[self.scale * x for x in row] for row in la.matmul(B, la.transpose(B))]

    def transform(self, rows) -> "Ambient":
        """Ambient of the lattice whose basis is `rows` (in current coordinates)."""
        if not rows:
            return Ambient((), self.scale)
        return Ambient(la.matmul([list(map(Fraction, r)) for r in rows],
                                 [list(r) for r in self.basis]), self.scale)


@dataclass(frozen=True, eq=False)
class Lattice:
    gram: tuple
    name: str | None = None
    ambient: Ambient | None = field(default=None, repr=False)
    # basis rows expressed in the coordinates of the lattice this was cut from
    embedding: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        g = _ftuple(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise LatticeError("Gram matrix must be symmetric")
        if not la.leading_minors_positive(g):
            raise LatticeError("Gram matrix is not positive definite")
        if self.ambient is not None:
            amb = self.ambient
            if len(amb.basis) != n or _ftuple(amb.gram()) != g:
                raise LatticeError("ambient realisation does not reproduce the Gram matrix")
        if self.embedding is not None:
            object.__setattr__(self, "embedding", _ftuple(self.embedding))

    # basic invariants
    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> Fraction:
        return la.det(self.gram)

    @cached_property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.gram for x in row)

    @cached_property
    def is_even(self) -> bool:
        return self.is_integral and all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_unimodular(self) -> bool:
        return self.is_integral and self.det == 1

    @cached_property
    def gram_int(self) -> tuple[np.ndarray, int]:
        """(integer numpy Gram, d) with gram == G / d."""
        m, d = la.scale_to_int(self.gram)
        return np.array(m, dtype=np.int64).reshape(self.rank, self.rank), d

    @cached_property
    def gram_inverse(self) -> list[list[Fraction]]:
        return la.inverse(self.gram) if self.rank else []

    @cached_property
    def reduction(self) -> tuple[list[list[Fraction]], list[list[int]], list[list[Fraction]]]:
        """LLL-reduced Gram, transform T (columns = new basis) and T^-1."""
        G, T = la.lll_gram(self.gram)
        Tinv = la.inverse(T) if T else []
        return G, T, Tinv

    def ip(self, x: Sequence, y: Sequence) -> Fraction:
        return sum((Fraction(a) * g * Fraction(b) for a, row in zip(x, self.gram)
                    for g, b in zip(row, y)), Fraction(0))

    def norm(self, x: Sequence) -> Fraction:
        return self.ip(x, x)

    def to_ambient(self, x: Sequence) -> list[Fraction]:
        if self.ambient is None:
            raise LatticeError("lattice has no ambient realisation")
        return la.matvec(la.transpose([list(r) for r in self.ambient.basis]), list(map(Fraction, x)))

    def from_ambient(self, a: Sequence) -> tuple:
        """Coordinates of an ambient vector lying in L (x) Q."""
        if self.ambient is None:
            raise LatticeError("lattice has no ambient realisation")
        B = [list(r) for r in self.ambient.basis]
        # solve x B = a using the Gram: x G = scale * a B^t
        rhs = [self.ambient.scale * s for s in la.matvec(B, list(map(Fraction, a)))]
        x = la.matvec(la.transpose(self.gram_inverse), rhs)
        if la.matvec(la.transpose(B), x) != list(map(Fraction, a)):
            raise LatticeError("vector is not in the span of the lattice")
        return tuple(x)

    def renamed(self, name: str | None) -> "Lattice":
        return Lattice(self.gram, name, self.ambient, self.embedding)

    def __repr__(self):
        return f"Lattice(name={self.name!r}, rank={self.rank}, det={self.det})"


def is_integral_vector(x: Sequence) -> bool:
    return all(Fraction(c).denominator == 1 for c in x)


# -- constructors ------------------------------------------------------------

def _root_ambient(kind: str, n: int) -> list[list[Fraction]]:
    h = Fraction(1, 2)
    if kind == "A":
        return [[Fraction(1 if j == i else -1 if j == i + 1 else 0) for j in range(n + 1)]
                for i in range(n)]
    if kind == "D":
        rows = [[Fraction(1 if j == i else -1 if j == i + 1 else 0) for j in range(n)]
                for i in range(n - 1)]
        rows.append([Fraction(1 if j >= n - 2 else 0) for j in range(n)])
        return rows
    if kind == "E":
        e = lambda i: [Fraction(int(j == i)) for j in range(8)]
        sub = lambda a, b: [x - y for x, y in zip(a, b)]
        add = lambda a, b: [x + y for x, y in zip(a, b)]
        rows = [[h, -h, -h, -h, -h, -h, -h, h], add(e(0), e(1))]
        rows += [sub(e(i + 1), e(i)) for i in range(6)]
        return rows[:n]
    if kind == "Z":
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    raise LatticeError(f"unknown lattice kind {kind!r}")


def make_lattice(kind: str, rank: int) -> Lattice:
    """Standard root lattices A_n, D_n, E_6..8 and the cubic lattice Z^n."""
    kind = kind.upper()
    ok = {"A": rank >= 1, "Z": rank >= 1, "D": rank >= 2, "E": rank in (6, 7, 8)}
    if kind not in ok or not ok[kind]:
        raise LatticeError(f"no lattice {kind}{rank}")
    amb = Ambient(_root_ambient(kind, rank))
    return Lattice(amb.gram(), f"{kind}{rank}", amb)


def zero_lattice() -> Lattice:
    return Lattice((), "0")


def rescale(L: Lattice, m) -> Lattice:
    m = Fraction(m)
    if m <= 0:
        raise LatticeError("scale must be positive")
    amb = Ambient(L.ambient.basis, L.ambient.scale * m) if L.ambient else None
    name = f"{L.name}({m})" if L.name else None
    return Lattice([[m * x for x in row] for row in L.gram], name, amb)


def direct_sum(*lats: Lattice, name: str | None = None) -> Lattice:
    n = sum(L.rank for L in lats)
    G = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for L in lats:
        for i in range(L.rank):
            for j in range(L.rank):
                G[off + i][off + j] = L.gram[i][j]
        off += L.rank
    amb = None
    with_amb = [L for L in lats if L.rank]
    if with_amb and all(L.ambient is not None for L in with_amb) and \
            len({L.ambient.scale for L in with_amb}) == 1:
        N = sum(L.ambient.dim for L in with_amb)
        rows, col = [], 0
        for L in with_amb:
            for r in L.ambient.basis:
                rows.append([Fraction(0)] * col + list(r) + [Fraction(0)] * (N - col - len(r)))
            col += L.ambient.dim
        amb = Ambient(rows, with_amb[0].ambient.scale)
    if name is None and all(L.name for L in lats):
        name = "+".join(L.name for L in lats)
    return Lattice(G, name, amb)


def sublattice(L: Lattice, rows, name: str | None = None) -> Lattice:
    """Lattice spanned by the given independent rows (L-coordinates, rational ok)."""
    R = [list(map(Fraction, r)) for r in rows]
    if la.rank(R) != len(R):
        raise LatticeError("sublattice rows must be independent")
    G = la.matmul(la.matmul(R, [list(r) for r in L.gram]), la.transpose(R)) if R else []
    amb = L.ambient.transform(R) if L.ambient is not None else None
    return Lattice(G, name, amb, tuple(map(tuple, R)))


def dual_lattice(L: Lattice) -> tuple[Lattice, list[list[Fraction]]]:
    """Dual lattice and its basis expressed in L-coordinates (rows)."""
    Ginv = L.gram_inverse
    amb = L.ambient.transform(Ginv) if L.ambient is not None and L.rank else None
    name = f"{L.name}'" if L.name else None
    return Lattice(Ginv, name, amb, tuple(map(tuple, Ginv))), Ginv


def span_basis(gens) -> list[list[Fraction]]:
    """HNF basis rows of the Z-span of rational vectors."""
    return la.lattice_basis(gens)


def congruence_sublattice(L: Lattice, a: Sequence[int], modulus: int, name=None) -> Lattice:
    """{x in L : a.x = 0 mod modulus} for an integer functional a."""
    n = L.rank
    row = [int(c) for c in a] + [int(modulus)]
    ker = la.integer_kernel([row])
    rows = span_basis([k[:n] for k in ker])
    return sublattice(L, rows, name)


def even_sublattice(L: Lattice) -> tuple[Lattice, Vec]:
    """Even sublattice of an odd integral lattice plus a vector h of L outside it."""
    if not L.is_integral:
        raise LatticeError("even sublattice needs an integral lattice")
    if L.is_even:
        raise LatticeError("lattice is already even")
    par = [int(L.gram[i][i]) % 2 for i in range(L.rank)]
    K = congruence_sublattice(L, par, 2, name=f"{L.name}_ev" if L.name else None)
    i = par.index(1)
    h = tuple(Fraction(int(j == i)) for j in range(L.rank))
    return K, h


def glue_extension(L: Lattice, glue: Sequence[Sequence], *, even: bool | None = None,
                   name: str | None = None) -> Lattice:
    """Lattice generated by L and rational glue vectors (L-coordinates).

    `even=True` demands an even result, `even=False` only integrality, and the
    default None demands nothing beyond positive definiteness.
    """
    n = L.rank
    gens = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    gens += [list(map(Fraction, g)) for g in glue]
    for g in glue:
        # g must lie in the dual: G g integral
        if even is not None and not is_integral_vector(la.matvec([list(r) for r in L.gram], list(map(Fraction, g)))):
            raise LatticeError("glue vector is not in the dual lattice")
    rows = span_basis(gens)
    M = sublattice(L, rows, name)
    if even is True and not M.is_even:
        raise LatticeError("extension is not even")
    if even is False and not M.is_integral:
        raise LatticeError("extension is not integral")
    return M


def fixed_sublattice_vector(L: Lattice, h: Sequence) -> Lattice:
    """L^h = {b in L : <b, h> integral}."""
    gh = la.matvec([list(r) for r in L.gram], list(map(Fraction, h)))
    N = la.common_denominator([gh])
    a = [int(x * N) % N for x in gh]
    if N == 1:
        return sublattice(L, la.identity(L.rank), L.name)
    return congruence_sublattice(L, a, N)


def orthogonal_sublattice(L: Lattice, rows) -> Lattice:
    """Vectors of L orthogonal to all given rows (L-coordinates)."""
    if not rows:
        return sublattice(L, la.identity(L.rank), L.name)
    G = [list(r) for r in L.gram]
    A = la.matmul([list(map(Fraction, r)) for r in rows], G)
    A, _ = la.scale_to_int(A)
    ker = la.integer_kernel(A)
    return sublattice(L, ker)


def is_isometry_matrix(U, G_src, G_tgt) -> bool:
    Ut = la.transpose(U)
    return la.matmul(la.matmul(Ut, [list(r) for r in G_tgt]), U) == [list(r) for r in G_src]


def fixed_and_coinvariant(L: Lattice, nu) -> tuple[Lattice, Lattice]:
    """Fixed lattice of an isometry (matrix acting on coordinate columns) and its complement."""
    U = [list(map(Fraction, r)) for r in nu]
    if not is_isometry_matrix(U, L.gram, L.gram) or not all(
            x.denominator == 1 for r in U for x in r):
        raise LatticeError("not an isometry of the lattice")
    n = L.rank
    if n == 0:
        return zero_lattice(), zero_lattice()
    A = [[int(U[i][j]) - int(i == j) for j in range(n)] for i in range(n)]
    fixed_rows = la.integer_kernel(A)
    Lfix = sublattice(L, fixed_rows)
    Lco = orthogonal_sublattice(L, fixed_rows)
    return Lfix, Lco


def ambient_coords(L: Lattice, a: Sequence) -> tuple:
    return L.from_ambient(a)
