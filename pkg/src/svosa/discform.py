"""Finite quadratic modules (discriminant forms).

A form is a finite abelian group Z/d_1 x ... x Z/d_k with generators g_i and
a table `qgram` holding q(g_i) on the diagonal and b(g_i, g_j) off it, all
rationals mod 1. Elements are residue tuples; enumeration order is
mixed-radix lexicographic (first coordinate slowest), as itertools.product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt, lcm, sqrt
import cmath

import numpy as np

from . import linalg as la
from .lattice import Lattice

DEFAULT_BOUND = 1 << 16


class FormError(ValueError):
    pass


def _mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, eq=False)
class DiscriminantForm:
    orders: tuple
    qgram: tuple
    name: str | None = None

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        k = len(orders)
        qg = tuple(tuple(_mod1(x) for x in row) for row in self.qgram)
        if len(qg) != k or any(len(r) != k for r in qg):
            raise FormError("qgram must be k x k")
        if any(qg[i][j] != qg[j][i] for i in range(k) for j in range(k)):
            raise FormError("qgram must be symmetric")
        if any(d < 1 for d in orders):
            raise FormError("orders must be positive")
        for i, d in enumerate(orders):
            # q(d g) = d^2 q(g) and b(d g, h) = d b(g, h) must vanish
            if _mod1(d * d * qg[i][i]) != 0 or any(_mod1(d * qg[i][j]) for j in range(k) if j != i):
                raise FormError("qgram is not compatible with the orders")
            if _mod1(2 * d * qg[i][i]) != 0:
                raise FormError("qgram is not compatible with the orders")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "qgram", qg)

    # -- basic data
    @property
    def k(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    @cached_property
    def den(self) -> int:
        d = 1
        for row in self.qgram:
            for x in row:
                d = lcm(d, x.denominator)
        return 2 * d

    @cached_property
    def _qvec(self) -> np.ndarray:
        return np.array([int(self.qgram[i][i] * self.den) for i in range(self.k)], dtype=np.int64)

    @cached_property
    def bmatrix(self) -> np.ndarray:
        """Integer matrix B with b(x, y) = x^t B y / den mod 1."""
        B = np.zeros((self.k, self.k), dtype=np.int64)
        for i in range(self.k):
            for j in range(self.k):
                v = 2 * self.qgram[i][i] if i == j else self.qgram[i][j]
                B[i, j] = int(_mod1(v) * self.den)
        return B

    @cached_property
    def elements(self) -> np.ndarray:
        if self.size > 1 << 22:
            raise FormError("form too large to enumerate")
        if self.k == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.meshgrid(*[np.arange(d) for d in self.orders], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)

    @cached_property
    def radix(self) -> np.ndarray:
        r = np.ones(self.k, dtype=np.int64)
        for i in range(self.k - 2, -1, -1):
            r[i] = r[i + 1] * self.orders[i + 1]
        return r

    def index(self, x) -> np.ndarray | int:
        x = np.asarray(x, dtype=np.int64)
        return (x % np.array(self.orders, dtype=np.int64)) @ self.radix

    def reduce(self, x) -> tuple:
        return tuple(int(a) % d for a, d in zip(x, self.orders))

    def q_num(self, X: np.ndarray) -> np.ndarray:
        """den * q(x) mod den for rows x."""
        X = np.atleast_2d(X)
        if self.k == 0:
            return np.zeros(X.shape[0], dtype=np.int64)
        diag = (X * X) @ self._qvec
        B = self.bmatrix
        off = np.einsum("ij,jk,ik->i", X, np.triu(B, 1), X)
        return (diag + off) % self.den

    def b_num(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """den * b(x, y) mod den, rowwise pairs or broadcast (X rows vs one y)."""
        return (np.atleast_2d(X) @ self.bmatrix @ np.asarray(Y).T) % self.den

    def q(self, x) -> Fraction:
        return Fraction(int(self.q_num(np.array([x], dtype=np.int64))[0]), self.den)

    def b(self, x, y) -> Fraction:
        v = int(self.b_num(np.array([x], dtype=np.int64), np.array([y], dtype=np.int64))[0, 0])
        return Fraction(v, self.den)

    @cached_property
    def q_values(self) -> np.ndarray:
        return self.q_num(self.elements)

    def q_value_counts(self) -> dict:
        vals, cnt = np.unique(self.q_values, return_counts=True)
        return {Fraction(int(v), self.den): int(c) for v, c in zip(vals, cnt)}

    def element_orders(self) -> np.ndarray:
        E = self.elements
        out = np.ones(E.shape[0], dtype=np.int64)
        for i, d in enumerate(self.orders):
            g = np.gcd(E[:, i], d)
            out = np.lcm(out, d // g)
        return out

    def is_nondegenerate(self) -> bool:
        if self.k == 0:
            return True
        E = self.elements
        # x is in the radical iff b(x, g_i) = 0 for all generators
        rad = (self.b_num(E, np.eye(self.k, dtype=np.int64)) == 0).all(axis=1)
        return int(rad.sum()) == 1

    def to_json(self) -> dict:
        den = self.den // 2 if all((x * (self.den // 2)).denominator == 1 for r in self.qgram for x in r) else self.den
        return {"orders": list(self.orders),
                "qgram_num": [[int(x * den) for x in r] for r in self.qgram],
                "qgram_den": den}

    @classmethod
    def from_json(cls, obj: dict, name: str | None = None) -> "DiscriminantForm":
        den = obj["qgram_den"]
        return cls(obj["orders"], [[Fraction(x, den) for x in r] for r in obj["qgram_num"]], name)

    def __repr__(self):
        return f"DiscriminantForm(name={self.name!r}, orders={self.orders})"


def trivial_form() -> DiscriminantForm:
    return DiscriminantForm((), (), "1")


def negate(D: DiscriminantForm) -> DiscriminantForm:
    return DiscriminantForm(D.orders, [[-x for x in r] for r in D.qgram], f"-({D.name})" if D.name else None)


def direct_sum_df(D1: DiscriminantForm, D2: DiscriminantForm) -> DiscriminantForm:
    k1, k2 = D1.k, D2.k
    Q = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
    for i in range(k1):
        for j in range(k1):
            Q[i][j] = D1.qgram[i][j]
    for i in range(k2):
        for j in range(k2):
            Q[k1 + i][k1 + j] = D2.qgram[i][j]
    return DiscriminantForm(D1.orders + D2.orders, Q)


# -- from lattices -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FormLift:
    """Dictionary between D = L'/L and dual vectors in L-coordinates."""
    lattice: Lattice
    gens: tuple  # generator lifts x_i (rational L-coordinates)
    U: tuple  # SNF left transform
    orders_full: tuple  # all n diagonal entries
    drop: int  # number of leading unit divisors dropped

    def lift(self, elem) -> tuple:
        n = self.lattice.rank
        out = [Fraction(0)] * n
        for a, g in zip(elem, self.gens):
            for i in range(n):
                out[i] += int(a) * g[i]
        return tuple(out)

    def element_of(self, y) -> tuple:
        """Class of a dual vector y (L-coordinates)."""
        G = [list(r) for r in self.lattice.gram]
        f = la.matvec(G, list(map(Fraction, y)))
        if any(x.denominator != 1 for x in f):
            raise FormError("vector is not in the dual lattice")
        u = la.matvec([list(r) for r in self.U], [int(x) for x in f])
        return tuple(int(u[i]) % self.orders_full[i] for i in range(self.drop, len(u)))


def discriminant_form(L: Lattice, name: str | None = None) -> tuple[DiscriminantForm, FormLift]:
    if not L.is_even:
        raise FormError("discriminant forms need an even lattice")
    n = L.rank
    if n == 0:
        return trivial_form(), FormLift(L, (), (), (), 0)
    G = [[int(x) for x in r] for r in L.gram]
    d, U, V = la.smith(G)
    Uinv = la.inverse(U)
    Ginv = L.gram_inverse
    gens, orders = [], []
    drop = sum(1 for x in d if x == 1)
    for i in range(n):
        if d[i] == 1:
            continue
        f = [Uinv[r][i] for r in range(n)]  # U^-1 e_i
        gens.append(tuple(la.matvec(Ginv, f)))
        orders.append(d[i])
    k = len(gens)
    Q = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            v = L.ip(gens[i], gens[j])
            Q[i][j] = v / 2 if i == j else v
    D = DiscriminantForm(tuple(orders), Q, name or (f"disc({L.name})" if L.name else None))
    return D, FormLift(L, tuple(gens), tuple(map(tuple, U)), tuple(d), drop)


# -- invariants ------------------------------------------------------------------

def gauss_sum(D: DiscriminantForm) -> complex:
    vals = D.q_values.astype(float) / D.den
    return complex(np.exp(2j * np.pi * vals).sum()) / sqrt(D.size)


def signature_mod8(D: DiscriminantForm, tol: float = 1e-6) -> int:
    g = gauss_sum(D)
    if abs(abs(g) - 1) > tol:
        raise FormError("Gauss sum has modulus %.3g; form is degenerate" % abs(g))
    s = cmath.phase(g) / (2 * np.pi) * 8
    r = round(s)
    if abs(s - r) > tol:
        raise FormError("Gauss sum phase is not an eighth root of unity")
    return r % 8


# -- subgroups ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DFSubgroup:
    form: DiscriminantForm
    gens: tuple
    indices: tuple = field(default=())  # sorted element indices

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def elements(self) -> np.ndarray:
        return self.form.elements[list(self.indices)]

    def contains(self, x) -> bool:
        return int(self.form.index(x)) in set(self.indices)

    def is_closed(self) -> bool:
        S = set(self.indices)
        E = self.elements
        for a in E:
            if any(int(self.form.index(a + b)) not in S for b in E):
                return False
        return True

    def is_isotropic(self) -> bool:
        return bool((self.form.q_num(self.elements) == 0).all())


def _order(D: DiscriminantForm, g) -> int:
    o = 1
    for a, d in zip(g, D.orders):
        o = lcm(o, d // gcd(int(a), d))
    return o


def subgroup(D: DiscriminantForm, gens) -> DFSubgroup:
    gens = tuple(D.reduce(g) for g in gens)
    orders = np.array(D.orders, dtype=np.int64)
    S = np.zeros((1, D.k), dtype=np.int64)
    for g in gens:
        ga = np.array(g, dtype=np.int64)
        S = np.unique(np.concatenate([(S + j * ga) % orders for j in range(_order(D, g))]), axis=0)
    idx = tuple(sorted(int(i) for i in D.index(S))) if D.k else (0,)
    return DFSubgroup(D, gens, idx)


def whole(D: DiscriminantForm) -> DFSubgroup:
    return DFSubgroup(D, tuple(tuple(int(i == j) for j in range(D.k)) for i in range(D.k)),
                      tuple(range(D.size)))


def orthogonal_complement(D: DiscriminantForm, S: DFSubgroup) -> DFSubgroup:
    E = D.elements
    if S.gens:
        ok = (D.b_num(E, np.array(S.gens, dtype=np.int64)) == 0).all(axis=1)
    else:
        ok = np.ones(E.shape[0], dtype=bool)
    idx = tuple(int(i) for i in np.flatnonzero(ok))
    if len(idx) * S.size != D.size:
        raise FormError("|S| |S^perp| != |D|; form is degenerate")
    return DFSubgroup(D, _gens_of(D, E[list(idx)]), idx)


def _gens_of(D: DiscriminantForm, elems: np.ndarray) -> tuple:
    """A small generating list for the subgroup consisting of `elems`."""
    target = {int(i) for i in D.index(elems)} if elems.shape[0] else {0}
    gens: list = []
    have = {0}
    for e in elems:
        if int(D.index(e)) in have:
            continue
        gens.append(tuple(int(x) for x in e))
        have = set(subgroup(D, gens).indices)
        if have == target:
            break
    return tuple(gens)


def isotropic_subgroups(D: DiscriminantForm, bound: int = DEFAULT_BOUND) -> list[DFSubgroup]:
    """All subgroups on which q vanishes, ordered by (size, element indices)."""
    if D.size > bound:
        raise FormError("form exceeds the configured size bound")
    E = D.elements
    iso = [i for i in np.flatnonzero(D.q_values == 0) if i != 0]
    zero = subgroup(D, [])
    found = {zero.indices: zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for S in frontier:
            Sset = set(S.indices)
            for i in iso:
                if i in Sset:
                    continue
                x = E[i]
                if S.gens and (D.b_num(np.array([x]), np.array(S.gens, dtype=np.int64)) != 0).any():
                    continue
                T = subgroup(D, list(S.gens) + [tuple(int(a) for a in x)])
                if T.indices not in found:
                    found[T.indices] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.size, S.indices))


def _lift_rows(D: DiscriminantForm, gens) -> list[list[int]]:
    rows = [list(map(int, g)) for g in gens]
    rows += [[D.orders[i] if j == i else 0 for j in range(D.k)] for i in range(D.k)]
    return la.hnf_rows(rows)


def subquotient(D: DiscriminantForm, H: DFSubgroup, I: DFSubgroup) -> tuple[DiscriminantForm, list[tuple]]:
    """The form on H/I (I <= H, q well defined) plus generator representatives in D."""
    if D.k == 0:
        return trivial_form(), []
    Hb = _lift_rows(D, H.gens)
    Ib = _lift_rows(D, I.gens)
    C = la.matmul([list(map(Fraction, r)) for r in Ib], la.inverse(Hb))
    if any(x.denominator != 1 for r in C for x in r):
        raise FormError("I is not contained in H")
    d, U, V = la.smith([[int(x) for x in r] for r in C])
    Vinv = la.inverse(V)
    newb = la.matmul(Vinv, Hb)
    reps, orders = [], []
    for i, di in enumerate(d):
        if di != 1:
            reps.append(D.reduce([int(x) for x in newb[i]]))
            orders.append(int(di))
    # sort by order so that d_i | d_{i+1} holds for SNF output
    k = len(reps)
    Q = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            Q[i][j] = D.q(reps[i]) if i == j else D.b(reps[i], reps[j])
    return DiscriminantForm(tuple(orders), Q), reps


def quotient_form(D: DiscriminantForm, I: DFSubgroup) -> DiscriminantForm:
    if not I.is_isotropic():
        raise FormError("subgroup is not isotropic")
    H = orthogonal_complement(D, I)
    Q, _ = subquotient(D, H, I)
    if not Q.is_nondegenerate():
        raise FormError("quotient form is degenerate")
    return Q


def normal_form(D: DiscriminantForm) -> DiscriminantForm:
    """Same form on invariant-factor generators (d_1 | d_2 | ...)."""
    Q, _ = subquotient(D, whole(D), subgroup(D, []))
    return DiscriminantForm(Q.orders, Q.qgram, D.name)


# -- isomorphisms ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FormMap:
    """Images of the source generators; anti=True means q_tgt(f x) = -q_src(x)."""
    source: DiscriminantForm
    target: DiscriminantForm
    images: tuple
    anti: bool = False

    def apply(self, x) -> tuple:
        acc = np.zeros(self.target.k, dtype=np.int64)
        for a, img in zip(x, self.images):
            acc = acc + int(a) * np.array(img, dtype=np.int64)
        return self.target.reduce(acc)

    def check(self) -> bool:
        s = -1 if self.anti else 1
        src, tgt = self.source, self.target
        seen = set()
        for x in src.elements:
            y = self.apply(x)
            if _mod1(tgt.q(y) - s * src.q(x)) != 0:
                return False
            seen.add(y)
        return len(seen) == tgt.size == src.size


AntiIsometry = FormMap


def is_isomorphic_df(D1: DiscriminantForm, D2: DiscriminantForm, anti: bool = False,
                     bound: int = DEFAULT_BOUND) -> FormMap | None:
    """Isometry (or anti-isometry) D1 -> D2 by generator-image search."""
    if max(D1.size, D2.size) > bound:
        raise FormError("form exceeds the configured size bound")
    if D1.size != D2.size:
        return None
    s = -1 if anti else 1
    o1, o2 = D1.element_orders(), D2.element_orders()
    if sorted(o1.tolist()) != sorted(o2.tolist()):
        return None
    qc1 = {_mod1(s * k): v for k, v in D1.q_value_counts().items()}
    if qc1 != D2.q_value_counts():
        return None
    if D1.k == 0:
        return FormMap(D1, D2, (), anti)
    E2 = D2.elements
    q2 = D2.q_values
    den = lcm(D1.den, D2.den)
    m2 = den // D2.den
    cand = []
    for i in range(D1.k):
        target = int(_mod1(s * D1.qgram[i][i]) * den)
        ok = (o2 == D1.orders[i]) & (q2 * m2 == target)
        cand.append(np.flatnonzero(ok))
    B2 = D2.bmatrix
    images: list = [None] * D1.k

    def rec(i):
        if i == D1.k:
            f = FormMap(D1, D2, tuple(tuple(int(a) for a in E2[j]) for j in images), anti)
            if len(set(subgroup(D2, f.images).indices)) == D2.size:
                return f
            return None
        idx = cand[i]
        for j in range(i):
            want = int(_mod1(s * D1.qgram[i][j]) * den)
            bij = ((E2[idx] @ B2 @ E2[images[j]]) % D2.den) * m2
            idx = idx[bij == want]
        for c in idx:
            images[i] = int(c)
            r = rec(i + 1)
            if r is not None:
                return r
        return None

    return rec(0)


# -- Weil representation -------------------------------------------------------------

@dataclass(frozen=True)
class Phase:
    """sqrt(mag_sq) * exp(2 pi i angle)."""
    angle: Fraction
    mag_sq: Fraction

    def to_complex(self) -> complex:
        return sqrt(self.mag_sq) * cmath.exp(2j * cmath.pi * float(self.angle))

    def exact(self) -> Fraction | None:
        """Rational value when the phase is real and the magnitude rational."""
        num, den = self.mag_sq.numerator, self.mag_sq.denominator
        a, b = isqrt(num), isqrt(den)
        if a * a != num or b * b != den:
            return None
        r = Fraction(a, b)
        if self.angle == 0:
            return r
        if self.angle == Fraction(1, 2):
            return -r
        return None


def weil_matrices(D: DiscriminantForm, bound: int = 1 << 12):
    """(S, T) as matrices of Phase in element order.

    T_{x,x} = e(q(x)); S_{x,y} = e(-b(x, y)) / sqrt|D|.
    """
    if D.size > bound:
        raise FormError("form exceeds the configured size bound")
    E = D.elements
    N = E.shape[0]
    qv = D.q_values
    bv = D.b_num(E, E)
    inv = Fraction(1, D.size)
    S = [[Phase(_mod1(-Fraction(int(bv[i, j]), D.den)), inv) for j in range(N)] for i in range(N)]
    T = [[Phase(Fraction(int(qv[i]), D.den), Fraction(1)) if i == j else Phase(Fraction(0), Fraction(0))
          for j in range(N)] for i in range(N)]
    return S, T


def phase_matrix(M) -> np.ndarray:
    return np.array([[p.to_complex() for p in row] for row in M])


def exact_matrix(M) -> list[list[Fraction]] | None:
    out = []
    for row in M:
        r = []
        for p in row:
            v = Fraction(0) if p.mag_sq == 0 else p.exact()
            if v is None:
                return None
            r.append(v)
        out.append(r)
    return out


def check_sl2_relations(D: DiscriminantForm) -> dict:
    """Report whether S^2 = (x -> -x) and (ST)^3 = S^2 hold for the bundled convention."""
    S, T = weil_matrices(D)
    E = D.elements
    N = E.shape[0]
    P = np.zeros((N, N))
    neg = D.index((-E) % np.array(D.orders, dtype=np.int64)) if D.k else np.zeros(1, dtype=np.int64)
    for i in range(N):
        P[i, int(neg[i])] = 1
    Sx, Tx = exact_matrix(S), exact_matrix(T)
    if Sx is not None and Tx is not None:
        Sm = Sx
        S2 = la.matmul(Sm, Sm)
        ST = la.matmul(Sm, Tx)
        ST3 = la.matmul(la.matmul(ST, ST), ST)
        Pl = [[Fraction(int(v)) for v in r] for r in P]
        return {"exact": True, "S2_is_negation": S2 == Pl, "ST3_is_S2": ST3 == S2}
    Sc, Tc = phase_matrix(S), phase_matrix(T)
    S2 = Sc @ Sc
    ST3 = np.linalg.matrix_power(Sc @ Tc, 3)
    return {"exact": False,
            "S2_is_negation": bool(np.allclose(S2, P, atol=1e-9)),
            "ST3_is_S2": bool(np.allclose(ST3, S2, atol=1e-9)),
            "ST3_over_S2": complex(ST3[0] @ np.conj(S2[0]) / (S2[0] @ np.conj(S2[0])))}
