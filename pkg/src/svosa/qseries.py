"""Exact truncated q-series with rational exponents, and eta quotients.

A QSeries stores exponents as integers k meaning k/denom. `prec` is an
absolute cutoff: every term with exponent < prec is known, nothing at or
above it is stored. Binary operations recompute the cutoff from what both
operands guarantee.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, lcm
from typing import Iterable


class SeriesError(ValueError):
    pass


def _F(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QSeries:
    denom: int
    coeffs: dict = field(hash=False)  # k -> Fraction, exponent k / denom
    prec: Fraction

    def __post_init__(self):
        if self.denom <= 0:
            raise SeriesError("denominator must be positive")
        prec = _F(self.prec)
        object.__setattr__(self, "prec", prec)
        cut = prec * self.denom
        clean = {}
        for k, c in self.coeffs.items():
            c = _F(c)
            if c != 0 and k < cut:
                clean[int(k)] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    # -- construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Iterable, prec, denom: int | None = None) -> "QSeries":
        """From (exponent, coefficient) pairs; an explicit denom must fit every exponent."""
        terms = [(_F(e), _F(c)) for e, c in terms]
        N = denom
        if N is None:
            N = _F(prec).denominator
            for e, _ in terms:
                N = lcm(N, e.denominator)
        out: dict[int, Fraction] = {}
        for e, c in terms:
            k = e * N
            if k.denominator != 1:
                raise SeriesError(f"exponent {e} does not fit denominator {N}")
            out[int(k)] = out.get(int(k), Fraction(0)) + c
        return cls(N, out, prec)

    @classmethod
    def constant(cls, c, prec) -> "QSeries":
        return cls(1, {0: _F(c)}, prec)

    @classmethod
    def monomial(cls, exponent, c=1, prec=None) -> "QSeries":
        e = _F(exponent)
        return cls.from_terms([(e, c)], prec if prec is not None else e + 1)

    # -- inspection ---------------------------------------------------------

    def terms(self) -> list[tuple[Fraction, Fraction]]:
        return [(Fraction(k, self.denom), c) for k, c in self.coeffs.items()]

    def __getitem__(self, exponent) -> Fraction:
        e = _F(exponent)
        if e >= self.prec:
            raise SeriesError(f"coefficient of q^{e} is beyond the precision {self.prec}")
        k = e * self.denom
        if k.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(int(k), Fraction(0))

    @property
    def valuation(self) -> Fraction:
        """Leading exponent; the cutoff for a series with no known terms."""
        if not self.coeffs:
            return self.prec
        return Fraction(next(iter(self.coeffs)), self.denom)

    def is_zero(self) -> bool:
        return not self.coeffs

    def exponents(self) -> list[Fraction]:
        return [Fraction(k, self.denom) for k in self.coeffs]

    def __repr__(self):
        return f"QSeries({self.format()})"

    def format(self, max_terms: int | None = None) -> str:
        parts = []
        for e, c in self.terms()[:max_terms]:
            parts.append(f"{c} * q^({e.numerator}/{e.denominator})")
        parts.append(f"O(q^({self.prec.numerator}/{self.prec.denominator}))")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"denom": self.denom, "prec": [self.prec.numerator, self.prec.denominator],
                "terms": [[e.numerator, e.denominator, c.numerator, c.denominator]
                          for e, c in self.terms()]}

    @classmethod
    def from_json(cls, obj: dict) -> "QSeries":
        p = obj["prec"]
        terms = [(Fraction(a, b), Fraction(c, d)) for a, b, c, d in obj["terms"]]
        return cls.from_terms(terms, Fraction(p[0], p[1]), int(obj["denom"]))

    # -- arithmetic -----------------------------------------------------------

    def regrid(self, N: int) -> "QSeries":
        if N % self.denom:
            raise SeriesError("new denominator must be a multiple")
        m = N // self.denom
        return QSeries(N, {k * m: c for k, c in self.coeffs.items()}, self.prec)

    def truncate(self, prec) -> "QSeries":
        prec = min(_F(prec), self.prec)
        return QSeries(self.denom, self.coeffs, prec)

    def _common(self, other: "QSeries"):
        N = lcm(self.denom, other.denom)
        return self.regrid(N), other.regrid(N), N

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.constant(other, self.prec)
        a, b, N = self._common(other)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return QSeries(N, out, min(a.prec, b.prec))

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.denom, {k: -c for k, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = _F(c)
        return QSeries(self.denom, {k: c * v for k, v in self.coeffs.items()}, self.prec)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        a, b, N = self._common(other)
        prec = min(a.prec + b.valuation, b.prec + a.valuation)
        cut = prec * N
        out: dict[int, Fraction] = {}
        bi = list(b.coeffs.items())
        for k1, c1 in a.coeffs.items():
            for k2, c2 in bi:
                k = k1 + k2
                if k >= cut:
                    break
                out[k] = out.get(k, 0) + c1 * c2
        return QSeries(N, out, prec)

    __rmul__ = __mul__

    def shift(self, exponent) -> "QSeries":
        """Multiply by q^exponent."""
        e = _F(exponent)
        N = lcm(self.denom, e.denominator)
        a = self.regrid(N)
        s = int(e * N)
        return QSeries(N, {k + s: c for k, c in a.coeffs.items()}, a.prec + e)

    def inverse(self) -> "QSeries":
        if not self.coeffs:
            raise SeriesError("cannot invert a series with no known terms")
        N = self.denom
        v = next(iter(self.coeffs))
        c0 = self.coeffs[v]
        # u = self / (c0 q^v) = 1 + ..., known to (prec - v/N); invert by recursion
        span = self.prec * N - v
        n_terms = ceil(span)
        u = {k - v: c / c0 for k, c in self.coeffs.items()}
        inv = [Fraction(0)] * n_terms
        inv[0] = Fraction(1)
        ui = [(k, c) for k, c in u.items() if k > 0]
        for n in range(1, n_terms):
            s = Fraction(0)
            for k, c in ui:
                if k > n:
                    break
                s += c * inv[n - k]
            inv[n] = -s
        out = {k - v: x / c0 for k, x in enumerate(inv) if x}
        return QSeries(N, out, self.prec - 2 * Fraction(v, N))

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.inverse()
        return self.scale(1 / _F(other))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = QSeries.constant(1, self.prec - self.valuation) if e == 0 else None
        base = self
        result = None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result if result is not None else out

    def substitute(self, k) -> "QSeries":
        """q -> q^k for a positive rational k."""
        k = _F(k)
        if k <= 0:
            raise SeriesError("substitution exponent must be positive")
        N = self.denom * k.denominator
        out = {}
        for e, c in self.coeffs.items():
            out[e * k.numerator] = c
        return QSeries(N, out, self.prec * k)

    def agrees(self, other: "QSeries", upto=None) -> bool:
        """Equal coefficients below `upto` (default: the common precision)."""
        p = min(self.prec, other.prec)
        if upto is not None:
            if _F(upto) > p:
                raise SeriesError("comparison beyond the known precision")
            p = _F(upto)
        return (self - other).truncate(p).is_zero()

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.prec == other.prec and self.terms() == other.terms()

    def __hash__(self):
        return hash((self.prec, tuple(self.terms())))


# -- eta products ---------------------------------------------------------------

def euler_product_power(e: int, n_terms: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n)^e up to q^(n_terms - 1)."""
    if n_terms <= 0:
        return []
    # pentagonal number theorem for e = 1
    a = [0] * n_terms
    k = 0
    while True:
        done = True
        for m in (k, -k) if k else (0,):
            p = m * (3 * m - 1) // 2
            if p < n_terms:
                a[p] = -1 if m % 2 else 1
                done = False
        if done and k:
            break
        k += 1
    if e == 1:
        return a
    # power recurrence: n b_n = sum_k ((e + 1) k - n) a_k b_{n-k}
    b = [0] * n_terms
    b[0] = 1
    nz = [(j, a[j]) for j in range(1, n_terms) if a[j]]
    for n in range(1, n_terms):
        s = 0
        for j, aj in nz:
            if j > n:
                break
            s += ((e + 1) * j - n) * aj * b[n - j]
        b[n] = s // n
    return b


def eta_quotient(spec, prec) -> QSeries:
    """prod eta(s tau)^e for (s, e) in spec, as a q-expansion known below `prec`."""
    prec = _F(prec)
    lead = sum((_F(s) * e / 24 for s, e in spec), Fraction(0))
    if prec <= lead:
        raise SeriesError(f"precision {prec} is not above the leading exponent {lead}")
    body = QSeries.constant(1, prec - lead)
    for s, e in spec:
        s = _F(s)
        if e == 0:
            continue
        n = floor((prec - lead) / s) + 1
        coeffs = euler_product_power(e, n)
        part = QSeries(1, dict(enumerate(coeffs)), n).substitute(s)
        body = body * part
    return body.truncate(prec - lead).shift(lead)


def eta(prec) -> QSeries:
    return eta_quotient([(1, 1)], prec)


def numeric_eval(series: QSeries, tau: complex) -> complex:
    """Sum of the stored terms at q = exp(2 pi i tau)."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise SeriesError("tau must lie in the upper half plane")
    total = 0j
    for e, c in series.terms():
        total += float(c) * cmath.exp(2j * cmath.pi * float(e) * tau)
    return total
