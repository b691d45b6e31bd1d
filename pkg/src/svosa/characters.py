"""Vector-valued characters for c = 24 with values in the group ring of 2_II^{+2}.

Components are ordered: identity, the two norm-0 classes, the norm-1/2
class, so T acts as diag(1, 1, 1, -1). Every such character is
F + a (1,1,0,0) + b (1,0,1,0) + l G, with F and G the lifts of t2 and
2^12 / t2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .discform import discriminant_form, exact_matrix, phase_matrix, weil_matrices
from .lattice import Lattice, LatticeError, even_sublattice
from .qseries import QSeries, eta_quotient, numeric_eval
from .theta import block_theta, theta_series

HALF = Fraction(1, 2)
_LOW = (Fraction(-1), Fraction(0), Fraction(0), Fraction(-1, 2))
_SHIFT = (Fraction(0), Fraction(0), Fraction(0), HALF)


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class VectorForm4:
    comps: tuple

    def __post_init__(self):
        if len(self.comps) != 4:
            raise CharacterError("need four components")
        for i, (s, low, sh) in enumerate(zip(self.comps, _LOW, _SHIFT)):
            for e in s.exponents():
                if e < low or (e - sh).denominator != 1:
                    raise CharacterError(f"component {i} has exponent {e} outside its support")

    def __getitem__(self, i) -> QSeries:
        return self.comps[i]

    @property
    def prec(self) -> Fraction:
        return min(s.prec for s in self.comps)

    def __add__(self, other: "VectorForm4") -> "VectorForm4":
        return VectorForm4(tuple(a + b for a, b in zip(self.comps, other.comps)))

    def scale(self, c) -> "VectorForm4":
        return VectorForm4(tuple(s.scale(c) for s in self.comps))

    def truncate(self, prec) -> "VectorForm4":
        return VectorForm4(tuple(s.truncate(prec) for s in self.comps))

    def agrees(self, other: "VectorForm4", upto=None) -> bool:
        return all(a.agrees(b, upto) for a, b in zip(self.comps, other.comps))

    def format(self, max_terms: int | None = None) -> list[str]:
        return [s.format(max_terms) for s in self.comps]

    def to_json(self) -> list:
        return [s.to_json() for s in self.comps]


def constant_vector(v, prec) -> VectorForm4:
    return VectorForm4(tuple(QSeries.constant(x, prec) for x in v))


@dataclass(frozen=True)
class CharacterParams:
    a: int
    b: int
    l: int

    def violations(self) -> list[str]:
        out = []
        if not 0 <= self.l <= 48:
            out.append("l must lie in 0..48")
        if self.a < 24 * self.l:
            out.append("a < 24 l")
        if self.b < 24 * self.l:
            out.append("b < 24 l")
        if self.a + self.b < 24 * (self.l + 1):
            out.append("a + b < 24 (l + 1)")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def family(self) -> tuple:
        """(a, b) is unordered: the two even neighbours carry no canonical order."""
        return (min(self.a, self.b), max(self.a, self.b), self.l)


# -- basis -----------------------------------------------------------------------

def _eq(spec, prec) -> QSeries:
    return eta_quotient([(Fraction(s), e) for s, e in spec], prec)


def t2(prec) -> QSeries:
    return _eq([(1, 24), (2, -24)], prec)


def f_pm(prec) -> tuple[QSeries, QSeries]:
    A = _eq([(1, 24), (HALF, -24)], prec)
    B = _eq([(HALF, 24), (2, 24), (1, -48)], prec)
    return (A - B).scale(2 ** 11), (A + B).scale(2 ** 11)


def g_pm(prec) -> tuple[QSeries, QSeries]:
    C = _eq([(HALF, 24), (1, -24)], prec)
    D = _eq([(1, 48), (HALF, -24), (2, -24)], prec)
    return (C - D).scale(HALF), (C + D).scale(HALF)


def g_series(prec) -> QSeries:
    """2^12 / t2 = 2^12 (eta(2 tau) / eta(tau))^24."""
    return _eq([(2, 24), (1, -24)], prec).scale(2 ** 12)


def build_basis_F(prec) -> VectorForm4:
    prec = Fraction(prec)
    f = t2(prec)
    fp, fm = f_pm(prec)
    return VectorForm4((f + fp, fp, fp, fm))


def build_basis_G(prec) -> VectorForm4:
    prec = Fraction(prec)
    g = g_series(prec)
    gp, gm = g_pm(prec)
    return VectorForm4((g + gp, gp, gp, gm))


def j_function(prec, constant: int = 24) -> QSeries:
    """E4^3 / eta^24 with the constant term replaced by `constant`."""
    prec = Fraction(prec)
    n = int(prec) + 2
    sigma3 = [0] + [sum(d ** 3 for d in range(1, k + 1) if k % d == 0) for k in range(1, n)]
    E4 = QSeries(1, {k: (240 * sigma3[k] if k else 1) for k in range(n)}, n)
    j = (E4 * E4 * E4) * _eq([(1, -24)], prec)
    return j + (constant - 744)


def assemble_character(p: CharacterParams, prec) -> VectorForm4:
    F, G = build_basis_F(prec), build_basis_G(prec)
    consts = constant_vector((p.a + p.b, p.a, p.b, 0), prec)
    return F + consts + G.scale(p.l)


def abl_from_dims(d0: int, w1: int, w2: int) -> CharacterParams:
    """(a, b, l) from dim V_1 of the even part and of the two even neighbours."""
    for x in (d0, w1, w2):
        if int(x) != x or x < 0:
            raise CharacterError("dimensions must be nonnegative integers")
    num = 24 + 3 * d0 - w1 - w2
    if num % 24:
        raise CharacterError(f"l = {num}/24 is not an integer")
    p = CharacterParams(24 + 2 * d0 - w1, 24 + 2 * d0 - w2, num // 24)
    bad = p.violations()
    if bad:
        raise CharacterError(f"impossible triple ({d0}, {w1}, {w2}): {', '.join(bad)}")
    return p


def params_of(ch: VectorForm4) -> CharacterParams:
    """Read (a, b, l) off the low-order coefficients."""
    l = ch[3][-HALF]
    a = ch[1][0] + 24 * l
    b = ch[2][0] + 24 * l
    if any(x.denominator != 1 for x in (a, b, l)):
        raise CharacterError("non-integral parameters")
    return CharacterParams(int(a), int(b), int(l))


def check_nonnegative_integral(ch: VectorForm4):
    """(True, None) or (False, (component, exponent, coefficient)) for the first bad term."""
    for i, s in enumerate(ch.comps):
        for e, c in s.terms():
            if c < 0 or c.denominator != 1:
                return False, (i, e, c)
    return True, None


# -- lattices ----------------------------------------------------------------------

def coset_representatives(L: Lattice) -> tuple[Lattice, list[tuple]]:
    """Even sublattice K of an odd unimodular L and lifts of K'/K in character order."""
    if not (L.is_integral and L.det == 1) or L.is_even:
        raise CharacterError("need an odd unimodular lattice")
    K, _ = even_sublattice(L)
    D, lift = discriminant_form(K)
    if D.size != 4:
        raise CharacterError("K'/K must have order 4")
    E = [tuple(int(x) for x in row) for row in D.elements]
    qs = [D.q(e) for e in E]
    zero = tuple([0] * D.k)
    even = sorted(e for e, q in zip(E, qs) if q == 0 and e != zero)
    odd = [e for e, q in zip(E, qs) if q == HALF]
    if len(even) != 2 or len(odd) != 1:
        raise CharacterError("K'/K is not 2_II^{+2}")
    reps = [lift.lift(e) for e in [zero] + even + odd]
    return K, reps


def character_from_odd_lattice(L: Lattice, prec, blocks="auto") -> VectorForm4:
    """theta_{gamma + K} / eta^24 for the four classes of K'/K, K = L_ev."""
    if L.rank != 24:
        raise CharacterError("rank must be 24")
    prec = Fraction(prec)
    K, reps = coset_representatives(L)
    tp = prec + 1
    thetas = None
    if blocks is not None and K.ambient is not None:
        try:
            thetas = block_theta(K, reps, tp, None if blocks == "auto" else blocks)
        except LatticeError:
            if blocks != "auto":
                raise
    if thetas is None:
        thetas = [theta_series(K, r, tp) for r in reps]
    inv = _eq([(1, 24)], prec + 2).inverse()
    return VectorForm4(tuple((t * inv).truncate(prec) for t in thetas))


# -- modular transformations ------------------------------------------------------------

def _weil_2II():
    from .symbols import build_form
    D = build_form("2_II^{+2}")
    S, T = weil_matrices(D)
    E = [tuple(int(x) for x in row) for row in D.elements]
    qs = [D.q(e) for e in E]
    zero = tuple([0] * D.k)
    order = [E.index(zero)] + sorted((i for i, e in enumerate(E) if qs[i] == 0 and e != zero),
                                     key=lambda i: E[i]) + [qs.index(HALF)]
    return S, T, order


def rho_2II(which: str = "S") -> np.ndarray:
    """Weil matrix of 2_II^{+2} in character order."""
    S, T, order = _weil_2II()
    M = phase_matrix(S if which == "S" else T)
    return M[np.ix_(order, order)]


def exact_rho_2II():
    """(S, T) as exact rational matrices in character order."""
    S, T, order = _weil_2II()
    out = []
    for M in (exact_matrix(S), exact_matrix(T)):
        out.append([[M[i][j] for j in order] for i in order])
    return tuple(out)


def _values(ch: VectorForm4, tau: complex) -> np.ndarray:
    return np.array([numeric_eval(s, tau) for s in ch.comps])


def s_transform_residual(ch: VectorForm4, tau: complex = 1j) -> float:
    """max |Ch(-1/tau) - rho(S) Ch(tau)| using the stored terms."""
    tau = complex(tau)
    lhs = _values(ch, -1 / tau)
    rhs = rho_2II("S") @ _values(ch, tau)
    return float(np.max(np.abs(lhs - rhs)))


def t_compatible(ch: VectorForm4) -> bool:
    """Exponent supports realise T = diag(1, 1, 1, -1) exactly."""
    for s, sh in zip(ch.comps, _SHIFT):
        if any((e - sh).denominator != 1 for e in s.exponents()):
            return False
    return True
