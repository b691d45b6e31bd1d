import cmath
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import BruteForm
from svosa import linalg as la
from svosa.discform import (FormError, DiscriminantForm, check_sl2_relations, direct_sum_df,
                            discriminant_form, exact_matrix, is_isomorphic_df, isotropic_subgroups,
                            negate, normal_form, orthogonal_complement, quotient_form, signature_mod8,
                            subgroup, trivial_form, weil_matrices)
from svosa.lattice import Lattice, make_lattice
from svosa.symbols import build_form


def even_grams():
    row = st.lists(st.integers(-2, 2), min_size=3, max_size=3)
    B = st.lists(row, min_size=3, max_size=3).filter(lambda B: la.rank(B) == 3)
    return B.map(lambda B: la.matmul(B, la.transpose(B))).filter(
        lambda G: all(G[i][i] % 2 == 0 for i in range(3)))


def brute_signature(D: DiscriminantForm) -> int:
    """Milgram: sum e(q(x)) / sqrt|D| = e(sig / 8), from plain element loops."""
    F = BruteForm(D.orders, D.qgram)
    z = sum(cmath.exp(2j * cmath.pi * float(F.q(x))) for x in F.elements) / len(F.elements) ** 0.5
    k = round(cmath.phase(z) / (2 * cmath.pi) * 8) % 8
    assert abs(z - cmath.exp(2j * cmath.pi * k / 8)) < 1e-9
    return k


def test_a2_form():
    D, _ = discriminant_form(make_lattice("A", 2))
    assert D.orders == (3,)
    assert sorted(D.q(x) for x in D.elements) == [0, Fraction(1, 3), Fraction(1, 3)]


@pytest.mark.parametrize("kind,n,symbol", [("D", 4, "2_II^{-2}"), ("D", 8, "2_II^{+2}"),
                                           ("D", 16, "2_II^{+2}"), ("E", 6, "3^{+1}"), ("A", 2, "3^{-1}")])
def test_forms_of_root_lattices(kind, n, symbol):
    D, _ = discriminant_form(make_lattice(kind, n))
    assert is_isomorphic_df(D, build_form(symbol)) is not None


@pytest.mark.parametrize("kind,n", [("A", 1), ("A", 2), ("A", 6), ("D", 4), ("D", 5), ("D", 12),
                                    ("E", 6), ("E", 7)])
def test_milgram_on_root_lattices(kind, n):
    D, _ = discriminant_form(make_lattice(kind, n))
    assert signature_mod8(D) == n % 8 == brute_signature(D)


@given(even_grams())
def test_form_axioms_and_milgram(G):
    L = Lattice(G)
    D, lift = discriminant_form(L)
    assert D.size == L.det
    assert D.is_nondegenerate()
    F = BruteForm(D.orders, D.qgram)
    for x in F.elements[:20]:
        for y in F.elements[:20]:
            assert D.b(x, y) == F.b(x, y)
    assert signature_mod8(D) == 3 % 8 == brute_signature(D)


@given(even_grams())
def test_lift_has_matching_norm(G):
    L = Lattice(G)
    D, lift = discriminant_form(L)
    for x in D.elements[:10]:
        v = lift.lift(x)
        assert (L.norm(v) / 2 - D.q(x)) % 1 == 0


def test_isotropic_subgroups_of_hyperbolic_plane():
    H = build_form("2_II^{+2}")
    subs = isotropic_subgroups(H)
    assert [S.size for S in subs] == [1, 2, 2]
    Q = quotient_form(direct_sum_df(H, H), subgroup(direct_sum_df(H, H), [(1, 0, 1, 0)]))
    assert Q.size == 4


def test_orthogonal_complement_sizes():
    D = build_form("2_II^{+2} 3^{+1}")
    S = subgroup(D, [D.elements[1]])
    assert S.size * orthogonal_complement(D, S).size == D.size


def test_anti_isomorphism():
    assert is_isomorphic_df(build_form("4_1^{+1}"), build_form("4_7^{+1}")) is None
    assert is_isomorphic_df(build_form("4_1^{+1}"), build_form("4_7^{+1}"), anti=True) is not None
    assert is_isomorphic_df(build_form("4_1^{+1}"), negate(build_form("4_7^{+1}"))) is not None


def test_json_roundtrip_and_normal_form():
    D = direct_sum_df(build_form("3^{+1}"), build_form("2_II^{-2}"))
    N = normal_form(D)
    assert is_isomorphic_df(D, N) is not None
    assert is_isomorphic_df(DiscriminantForm.from_json(D.to_json()), D) is not None
    assert trivial_form().size == 1


def test_degenerate_form_rejected():
    D = DiscriminantForm((2,), [[Fraction(0)]])
    assert not D.is_nondegenerate()
    with pytest.raises(FormError):
        signature_mod8(D)
    with pytest.raises(FormError):
        DiscriminantForm((2, 3), [[Fraction(1, 2)]])


def test_weil_matrices_of_hyperbolic_plane():
    H = build_form("2_II^{+2}")
    S, T = weil_matrices(H)
    Sx = exact_matrix(S)
    assert all(abs(x) == Fraction(1, 2) for r in Sx for x in r)
    rel = check_sl2_relations(H)
    assert rel["exact"] and rel["S2_is_negation"] and rel["ST3_is_S2"]


def test_weil_st3_phase_for_nonzero_signature():
    # with S = e(-b)/sqrt|D| and T = e(q), (ST)^3 = e(sig/8) S^2
    D, _ = discriminant_form(make_lattice("A", 2))
    rel = check_sl2_relations(D)
    assert rel["S2_is_negation"] and not rel["ST3_is_S2"]
    assert abs(rel["ST3_over_S2"] - cmath.exp(2j * cmath.pi * 2 / 8)) < 1e-9


def test_q_value_counts():
    H = build_form("2_II^{-2}")
    assert Counter(H.q(x) for x in H.elements) == {0: 1, Fraction(1, 2): 3}
