"""Glueing types of dual pairs (W, V_K) inside the even part of a self-dual
vertex operator superalgebra, and the 16 pointed/Ising categories.

The input is purely form-theoretic: A_W and A_K are discriminant forms, A is
a subgroup of A_K and tau an anti-isometry from A onto A' <= A_W. The glue
I = {(tau(a), a)} is isotropic in A_W + A_K and I^perp / I must be the
hyperbolic plane 2_II^{+2}; its two norm-0 classes give the even
extensions, the norm-1/2 class the odd one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .discform import (DFSubgroup, DiscriminantForm, direct_sum_df, discriminant_form,
                       is_isomorphic_df, orthogonal_complement, subgroup, subquotient, trivial_form)
from .lattice import Lattice, glue_extension

HALF = Fraction(1, 2)


class GlueError(ValueError):
    pass


def hyperbolic_plane() -> DiscriminantForm:
    from .symbols import build_form
    return build_form("2_II^{+2}")


@dataclass(frozen=True)
class GlueInput:
    A_W: DiscriminantForm
    A_K: DiscriminantForm
    A: DFSubgroup
    tau: tuple  # pairs (a, tau(a)) for generators a of A

    def image(self) -> DFSubgroup:
        return subgroup(self.A_W, [w for _, w in self.tau])


@dataclass(frozen=True)
class GlueResult:
    type: str
    form: DiscriminantForm        # A_W + A_K
    I: DFSubgroup
    gammas: tuple                 # representatives (gamma1, gamma2, gamma3) in A_W + A_K
    norms: tuple
    indices: tuple                # ([A_W : A'], [A_K : A])
    b: tuple | None = None        # generator of A^perp for type II
    distinguished: int | None = None  # which gamma contains (tau(b), 0)
    cosets: tuple = field(default=(), repr=False)  # elements of gamma_i + I


def _split(D_W: DiscriminantForm, x) -> tuple[tuple, tuple]:
    return tuple(int(v) for v in x[:D_W.k]), tuple(int(v) for v in x[D_W.k:])


def glue_subgroup(inp: GlueInput) -> DFSubgroup:
    """I = {(tau(a), a)}; checks that tau is a well-defined injective anti-isometry."""
    D = direct_sum_df(inp.A_W, inp.A_K)
    gens = [tuple(inp.A_W.reduce(w)) + tuple(inp.A_K.reduce(a)) for a, w in inp.tau]
    I = subgroup(D, gens)
    if set(subgroup(inp.A_K, [a for a, _ in inp.tau]).indices) != set(inp.A.indices):
        raise GlueError("tau is not given on generators of A")
    if I.size != inp.A.size:
        raise GlueError("tau is not a well-defined injective homomorphism")
    if not I.is_isotropic():
        raise GlueError("tau is not an anti-isometry")
    return I


def glueing_type(inp: GlueInput) -> GlueResult:
    D = direct_sum_df(inp.A_W, inp.A_K)
    I = glue_subgroup(inp)
    Aprime = inp.image()
    iW = inp.A_W.size // Aprime.size
    iK = inp.A_K.size // inp.A.size
    if iW * iK != 4:
        raise GlueError(f"index product [A_W:A'][A_K:A] = {iW * iK}, not 4")
    H = orthogonal_complement(D, I)
    Q, _ = subquotient(D, H, I)
    if Q.size != 4 or not is_isomorphic_df(Q, hyperbolic_plane()):
        raise GlueError("I^perp / I is not 2_II^{+2}")
    # the three nonzero classes, each as the sorted list of its elements
    Iset = {tuple(int(v) for v in e) for e in I.elements}
    seen = set(Iset)
    classes = []
    orders = np.array(D.orders, dtype=np.int64)
    Ie = I.elements
    for x in H.elements:
        t = tuple(int(v) for v in x)
        if t in seen:
            continue
        coset = sorted(tuple(int(v) for v in y) for y in (Ie + x) % orders)
        seen.update(coset)
        classes.append(coset)
    qs = [D.q(c[0]) for c in classes]
    order = sorted((i for i in range(3) if qs[i] == 0), key=lambda i: classes[i][0])
    odd = [i for i in range(3) if qs[i] == HALF]
    if len(order) != 2 or len(odd) != 1:
        raise GlueError("classes do not have norms (0, 0, 1/2)")
    order += odd
    classes = [classes[i] for i in order]
    gammas = tuple(c[0] for c in classes)
    norms = tuple(qs[i] for i in order)
    if (iW, iK) == (1, 4):
        kind, b, dist = "I", None, None
    elif (iW, iK) == (4, 1):
        kind, b, dist = "III", None, None
    elif (iW, iK) == (2, 2):
        Aperp = orthogonal_complement(inp.A_K, inp.A)
        nz = [tuple(int(v) for v in e) for e in Aperp.elements if any(e)]
        if len(nz) != 1 or not inp.A.contains(nz[0]):
            raise GlueError("A^perp is not an order-2 subgroup of A")
        b = nz[0]
        # (tau(b), b) lies in I; read off tau(b)
        bprime = next(_split(inp.A_W, e)[0] for e in I.elements if _split(inp.A_W, e)[1] == b)
        kind = "IIa" if inp.A_K.q(b) == HALF else "IIb"
        probe = bprime + tuple([0] * inp.A_K.k)
        dist = next(i for i, c in enumerate(classes) if probe in set(c))
    else:
        raise GlueError(f"unexpected index pattern {(iW, iK)}")
    return GlueResult(kind, D, I, gammas, norms, (iW, iK), b, dist, tuple(tuple(c) for c in classes))


@dataclass(frozen=True)
class Extensions:
    even: tuple   # two glue groups I + <gamma_1>, I + <gamma_2>
    odd: DFSubgroup
    lattices: tuple | None = None  # (M1, M2, L_odd) for lattice-backed input


def three_extensions(res: GlueResult) -> Extensions:
    if len(res.gammas) != 3 or sorted(res.norms) != [0, 0, HALF]:
        raise GlueError("result does not describe a 2_II^{+2} quotient")
    groups = [subgroup(res.form, list(res.I.gens) + [g]) for g in res.gammas]
    for J, n in zip(groups, res.norms):
        if n == 0 and not J.is_isotropic():
            raise GlueError("even extension is not isotropic")
    return Extensions(tuple(groups[:2]), groups[2])


# -- lattice-backed inputs ------------------------------------------------------------

def lattice_glue_input(K: Lattice) -> tuple[GlueInput, object]:
    """Type I input for the lattice case: trivial commutant, A_K = K'/K, A = 0."""
    A_K, lift = discriminant_form(K)
    return GlueInput(trivial_form(), A_K, subgroup(A_K, []), ()), lift


def lattice_extensions(K: Lattice) -> tuple[GlueResult, Extensions]:
    """Classify K'/K and build the even neighbours M1, M2 and the odd lattice."""
    inp, lift = lattice_glue_input(K)
    res = glueing_type(inp)
    ext = three_extensions(res)
    lats = []
    for i, g in enumerate(res.gammas):
        elem = g[inp.A_W.k:]
        lats.append(glue_extension(K, [lift.lift(elem)], even=(i < 2)))
    return res, Extensions(ext.even, ext.odd, tuple(lats))


# -- Table 16 and count tables ------------------------------------------------------------

@dataclass(frozen=True)
class MTCRow:
    c2: int
    c: Fraction
    category: str
    fusion: str
    weights: tuple


def mtc_table_row(c_times_2_mod_16: int) -> MTCRow:
    from .data import load_table16
    c2 = int(c_times_2_mod_16)
    if not 0 <= c2 <= 15:
        raise GlueError("2c mod 16 must lie in 0..15")
    r = load_table16()[c2]
    if r["c2"] != c2:
        raise GlueError("table rows are out of order")
    return MTCRow(c2, Fraction(r["c"]), r["category"], r["fusion"], tuple(r["weights"]))


def expected_fusion(c2: int) -> str:
    if c2 % 2:
        return "Ising"
    return "Z2xZ2" if c2 % 4 == 0 else "Z4"


@dataclass
class CountReport:
    total: int
    per_type: dict
    row_a: int
    numbers_odd_24: int | None
    checks: list  # (label, passed, detail)

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.checks)


EXPECTED_TOTAL = 969
EXPECTED_PER_TYPE = {"I": 506, "IIa": 167, "IIb": 171, "III": 125}


def validate_count_tables(genera: Sequence[dict] | None = None,
                          numbers: Sequence[dict] | None = None) -> CountReport:
    """Sum the edge counts per glueing type and cross-check row A with the lattice count."""
    from .data import DataError, read_genera, read_numbers
    rows = read_genera() if genera is None else list(genera)
    nums = read_numbers() if numbers is None else list(numbers)
    if not rows:
        raise DataError("no genus rows")
    per = {t: 0 for t in EXPECTED_PER_TYPE}
    for r in rows:
        per[r["type"]] += r["edges_nonloop"] + r["edges_loop"]
    total = sum(per.values())
    a_rows = [r for r in rows if r["type"] == "I" and r["commutant"] == "A"]
    row_a = sum(r["edges_nonloop"] + r["edges_loop"] for r in a_rows)
    n24 = next((r["lat_odd"] for r in nums if r["c"] == 24), None)
    checks = [("total", total == EXPECTED_TOTAL, f"{total} (expected {EXPECTED_TOTAL})")]
    for t, want in EXPECTED_PER_TYPE.items():
        checks.append((f"type {t}", per[t] == want, f"{per[t]} (expected {want})"))
    checks.append(("row A = rank-24 odd lattices", len(a_rows) == 1 and row_a == n24,
                   f"{row_a} vs {n24}"))
    return CountReport(total, per, row_a, n24, checks)
