"""Explicit forms for genus-style symbol names such as '2_II^+10 3^-5'.

Only what is needed to populate the bundled dictionary: each component
q^{eps n} (odd q), q_II^{eps n} or q_t^{eps n} (q a power of 2) is realised by
an orthogonal sum of cyclic or 2x2 blocks with the right invariants.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .discform import DiscriminantForm, FormError, direct_sum_df, normal_form, trivial_form

_COMP = re.compile(r"(\d+)(?:_\{?(II|\d+)\}?)?\^\{?([+\-−])(\d+)\}?")


@dataclass(frozen=True)
class Component:
    q: int
    p: int
    eps: int
    n: int
    t: int | None  # oddity for odd 2-adic components, None for type II / odd p


def _prime_of(q: int) -> int:
    for p in range(2, q + 1):
        if q % p == 0:
            r = q
            while r % p == 0:
                r //= p
            if r != 1:
                raise FormError(f"{q} is not a prime power")
            return p
    raise FormError("bad prime power")


def parse_symbol(name: str) -> list[Component]:
    # braces delimit exponents, so they become spaces rather than vanish
    s = re.sub(r"\^\{([+\-−]\d+)\}", r"^\1 ", name.strip())
    s = s.replace("{", "").replace("}", "")
    m = re.fullmatch(r"(?:II_\d+,\d+)?\s*\(?(.*?)\)?\s*", s)
    body = m.group(1).strip() if m else s
    if body in ("", "1"):
        return []
    out = []
    pos = 0
    for mm in _COMP.finditer(body):
        if body[pos:mm.start()].strip():
            raise FormError(f"cannot parse symbol {name!r}")
        pos = mm.end()
        q = int(mm.group(1))
        p = _prime_of(q)
        sub = mm.group(2)
        eps = -1 if mm.group(3) in "-−" else 1
        n = int(mm.group(4))
        t = None
        if p == 2 and sub is not None and sub != "II":
            t = int(sub) % 8
        if p != 2 and sub is not None:
            raise FormError("odd components carry no subscript")
        out.append(Component(q, p, eps, n, t))
    if body[pos:].strip() or not out:
        raise FormError(f"cannot parse symbol {name!r}")
    return out


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _kron2(a: int) -> int:
    return 1 if a % 8 in (1, 7) else -1


def _cyclic(q: int, num: int, den: int) -> DiscriminantForm:
    return DiscriminantForm((q,), [[Fraction(num, den)]])


def _odd_component(c: Component) -> DiscriminantForm:
    # blocks a x^2 / q with symbol (2a / p)
    p, q = c.p, c.q
    sign = 1
    D = trivial_form()
    for _ in range(c.n - 1):
        D = direct_sum_df(D, _cyclic(q, 1, q))
        sign *= _legendre(2, p)
    for a in range(1, p):
        if sign * _legendre(2 * a, p) == c.eps:
            return direct_sum_df(D, _cyclic(q, a, q))
    raise FormError("no realisation")


def _even_type_component(c: Component) -> DiscriminantForm:
    if c.n % 2:
        raise FormError("type II components have even rank")
    q = c.q
    hyp = DiscriminantForm((q, q), [[0, Fraction(1, q)], [Fraction(1, q), 0]])
    neg = DiscriminantForm((q, q), [[Fraction(1, q), Fraction(1, q)], [Fraction(1, q), Fraction(1, q)]])
    D = trivial_form()
    blocks = c.n // 2
    for i in range(blocks):
        D = direct_sum_df(D, neg if (c.eps == -1 and i == blocks - 1) else hyp)
    return D


def _odd_type_component(c: Component) -> DiscriminantForm:
    q = c.q
    for combo in combinations_with_replacement((1, 3, 5, 7), c.n):
        if sum(combo) % 8 != c.t:
            continue
        sgn = 1
        for a in combo:
            sgn *= _kron2(a)
        if sgn != c.eps:
            continue
        D = trivial_form()
        for a in combo:
            D = direct_sum_df(D, _cyclic(q, a, 2 * q))
        return D
    raise FormError(f"no 2-adic component {q}_{c.t}^{c.eps:+d}{c.n}")


def build_form(name: str) -> DiscriminantForm:
    """Form named by a symbol, in invariant-factor normal form."""
    D = trivial_form()
    for c in parse_symbol(name):
        if c.p != 2:
            part = _odd_component(c)
        elif c.t is None:
            part = _even_type_component(c)
        else:
            part = _odd_type_component(c)
        D = direct_sum_df(D, part)
    N = normal_form(D)
    return DiscriminantForm(N.orders, N.qgram, name)


def oddity_signature(name: str) -> int:
    """Signature mod 8 predicted by the oddity formula from the symbol alone."""
    total = 0
    for c in parse_symbol(name):
        k = 0
        e = 0
        qq = c.q
        while qq % c.p == 0:
            qq //= c.p
            e += 1
        if e % 2 == 1 and c.eps == -1:
            k = 1
        if c.p == 2:
            total += (c.t or 0) + 4 * k
        else:
            total -= c.n * (c.q - 1) + 4 * k
    return total % 8


def genus_rank(name: str) -> int | None:
    m = re.match(r"\s*II_\{?(\d+),(\d+)\}?", name)
    return int(m.group(1)) - int(m.group(2)) if m else None
