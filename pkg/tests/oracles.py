"""Independent reference computations used by the tests.

Nothing here calls into the enumeration, series or subgroup code of the
package: vectors come from box enumeration, eta powers from multiplying out
the product, glue data from brute force over elements.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np


# -- lattices ---------------------------------------------------------------------

def box_vectors(G, bound, rep=None):
    """All x in rep + Z^n with x G x^t <= bound, by exhaustive box search."""
    G = [[Fraction(x) for x in r] for r in G]
    n = len(G)
    rep = [Fraction(0)] * n if rep is None else [Fraction(r) for r in rep]
    # |x_i| <= sqrt(bound * (G^-1)_ii): use a float estimate with margin
    Ginv = np.linalg.inv(np.array(G, dtype=float))
    out = []
    ranges = []
    for i in range(n):
        r = int(np.sqrt(float(bound) * Ginv[i, i])) + 2
        c = int(rep[i])
        ranges.append(range(-r - abs(c) - 1, r + abs(c) + 2))
    for z in product(*ranges):
        x = [rep[i] + z[i] for i in range(n)]
        nrm = sum(x[i] * G[i][j] * x[j] for i in range(n) for j in range(n))
        if nrm <= bound:
            out.append((tuple(x), nrm))
    return out


def box_norm_counts(G, bound, rep=None) -> dict:
    counts: dict = {}
    for _, nrm in box_vectors(G, bound, rep):
        counts[nrm] = counts.get(nrm, 0) + 1
    return counts


def sigma(k: int, n: int) -> int:
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def e8_theta(n_terms: int) -> list[int]:
    """Coefficients of E4 = theta_E8: 1, 240 sigma_3(n)."""
    return [1] + [240 * sigma(3, n) for n in range(1, n_terms)]


# -- series ---------------------------------------------------------------------

def poly_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def naive_euler_power(e: int, n: int) -> list[int]:
    """prod_{k>=1} (1 - q^k)^e to n terms by multiplying factors one at a time."""
    out = [1] + [0] * (n - 1)
    for k in range(1, n):
        if e >= 0:
            f = [0] * n
            f[0], f[k] = 1, -1
            for _ in range(e):
                out = poly_mul(out, f, n)
        else:
            g = [1 if j % k == 0 else 0 for j in range(n)]  # 1 / (1 - q^k)
            for _ in range(-e):
                out = poly_mul(out, g, n)
    return out


def eta_value_at_i() -> float:
    """eta(i) = Gamma(1/4) / (2 pi^(3/4))."""
    from math import gamma, pi
    return gamma(0.25) / (2 * pi ** 0.75)


# -- finite quadratic forms --------------------------------------------------------

class BruteForm:
    """Elements of Z/d1 x ...; diagonal of qgram holds q(e_i), off-diagonal b(e_i, e_j)."""

    def __init__(self, orders, qgram):
        self.orders = tuple(int(d) for d in orders)
        self.Q = [[Fraction(x) for x in r] for r in qgram]
        self.elements = list(product(*[range(d) for d in self.orders])) if self.orders else [()]

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def q(self, x):
        k = len(x)
        v = sum(x[i] * x[i] * self.Q[i][i] for i in range(k))
        v += sum(x[i] * x[j] * self.Q[i][j] for i in range(k) for j in range(i + 1, k))
        return v % 1

    def b(self, x, y):
        return (self.q(self.add(x, y)) - self.q(x) - self.q(y)) % 1

    def zero(self):
        return tuple(0 for _ in self.orders)

    def closure(self, gens):
        S = {self.zero()}
        frontier = [self.zero()]
        while frontier:
            nxt = []
            for s in frontier:
                for g in gens:
                    t = self.add(s, g)
                    if t not in S:
                        S.add(t)
                        nxt.append(t)
            frontier = nxt
        return frozenset(S)

    def subgroups(self):
        """All subgroups, each with a generating tuple."""
        found = {self.closure([]): ()}
        frontier = list(found.items())
        while frontier:
            nxt = []
            for S, gens in frontier:
                for x in self.elements:
                    if x in S:
                        continue
                    T = self.closure(list(gens) + [x])
                    if T not in found:
                        found[T] = gens + (x,)
                        nxt.append((T, found[T]))
            frontier = nxt
        return found


def product_form(W: BruteForm, K: BruteForm) -> BruteForm:
    k1, k2 = len(W.orders), len(K.orders)
    Q = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
    for i in range(k1):
        for j in range(k1):
            Q[i][j] = W.Q[i][j]
    for i in range(k2):
        for j in range(k2):
            Q[k1 + i][k1 + j] = K.Q[i][j]
    return BruteForm(W.orders + K.orders, Q)


def _homs(K: BruteForm, W: BruteForm, S, gens):
    """All maps gens -> W extending to a well-defined injective anti-isometry on S."""
    for imgs in product(W.elements, repeat=len(gens)):
        m = {K.zero(): W.zero()}
        frontier = [K.zero()]
        ok = True
        while frontier and ok:
            nxt = []
            for s in frontier:
                for g, w in zip(gens, imgs):
                    t, u = K.add(s, g), W.add(m[s], w)
                    if t in m:
                        if m[t] != u:
                            ok = False
                            break
                    else:
                        m[t] = u
                        nxt.append(t)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(set(m.values())) != len(m):
            continue
        if any((W.q(m[a]) + K.q(a)) % 1 for a in S):
            continue
        yield imgs, m


def glue_oracle(W: BruteForm, K: BruteForm, max_A: int = 64):
    """Every valid (A, tau) with its type, by brute force.

    Yields (gens of A, images, type, bprime) where bprime = tau(b) for type II.
    """
    P = product_form(W, K)
    half = Fraction(1, 2)
    for S, gens in K.subgroups().items():
        if len(S) > max_A:
            continue
        for imgs, m in _homs(K, W, S, gens):
            Aprime = set(m.values())
            iW = len(W.elements) // len(Aprime)
            iK = len(K.elements) // len(S)
            if iW * iK != 4:
                continue
            I = {w + a for a, w in m.items()}
            Iperp = [x for x in P.elements if all(P.b(x, y) == 0 for y in I)]
            if len(Iperp) != 4 * len(I):
                continue
            cosets = {}
            for x in Iperp:
                key = min(P.add(x, y) for y in I)
                cosets.setdefault(key, x)
            nz = [x for key, x in cosets.items() if key != P.zero()]
            if sorted(P.q(x) for x in nz) != [0, 0, half]:
                continue
            if any(P.add(x, x) not in I for x in nz):
                continue
            bprime = None
            if (iW, iK) == (1, 4):
                t = "I"
            elif (iW, iK) == (4, 1):
                t = "III"
            else:
                Aperp = [x for x in K.elements if all(K.b(x, a) == 0 for a in S)]
                b = next(x for x in Aperp if x != K.zero())
                bprime = m[b]
                t = "IIa" if K.q(b) == half else "IIb"
            yield gens, imgs, t, bprime
