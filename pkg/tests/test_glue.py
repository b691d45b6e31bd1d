from fractions import Fraction

import pytest

from oracles import BruteForm, glue_oracle
from svosa.data import DataError, read_genera
from svosa.discform import (direct_sum_df, is_isomorphic_df, orthogonal_complement, subgroup,
                            subquotient, trivial_form)
from svosa.glue import (EXPECTED_PER_TYPE, GlueError, GlueInput, expected_fusion, glueing_type,
                        hyperbolic_plane, lattice_extensions, mtc_table_row, three_extensions,
                        validate_count_tables)
from svosa.isometry import is_isometric
from svosa.lattice import even_sublattice, make_lattice
from svosa.neighbour import lattice_label
from svosa.symbols import build_form

H = Fraction(1, 2)

PAIRS = [("1", "2_II^{+2}"), ("2_II^{+2}", "1"), ("2_II^{+2}", "2_II^{+2}"),
         ("4_7^{+1}", "4_1^{+1}"), ("2_II^{-2}", "2_II^{-2}"), ("3^{-1}", "2_II^{+2} 3^{+1}"),
         ("2_II^{+2} 3^{-1}", "3^{+1}")]


def _form(s):
    return trivial_form() if s == "1" else build_form(s)


def _input(W, K, gens, imgs):
    A = subgroup(K, list(gens))
    return GlueInput(W, K, A, tuple(zip(gens, imgs)))


@pytest.mark.parametrize("w,k", PAIRS)
def test_types_match_brute_force(w, k):
    W, K = _form(w), _form(k)
    found = list(glue_oracle(BruteForm(W.orders, W.qgram), BruteForm(K.orders, K.qgram)))
    assert found
    for gens, imgs, kind, bprime in found:
        res = glueing_type(_input(W, K, gens, imgs))
        assert res.type == kind
        assert res.norms == (0, 0, H)
        if kind in ("IIa", "IIb"):
            assert res.b is not None and res.form.q(tuple(bprime) + res.b) == 0
            assert tuple(bprime) + tuple([0] * K.k) in set(res.cosets[res.distinguished])


def test_oracle_counts_on_hyperbolic_planes():
    P = build_form("2_II^{+2}")
    bf = BruteForm(P.orders, P.qgram)
    kinds = [t for *_, t, _ in glue_oracle(bf, bf)]
    assert kinds.count("IIb") == 4 and kinds.count("IIa") == 1 and len(kinds) == 5


def test_quotient_and_complements():
    W, K = trivial_form(), build_form("2_II^{+2}")
    res = glueing_type(_input(W, K, (), ()))
    assert res.type == "I"
    Q, _ = subquotient(res.form, orthogonal_complement(res.form, res.I), res.I)
    assert is_isomorphic_df(Q, hyperbolic_plane()) is not None
    ext = three_extensions(res)
    assert all(J.is_isotropic() for J in ext.even) and not ext.odd.is_isotropic()


def test_bad_inputs():
    K = direct_sum_df(build_form("2_II^{+2}"), build_form("2_II^{+2}"))
    with pytest.raises(GlueError):
        glueing_type(_input(trivial_form(), K, (), ()))
    P = build_form("2_II^{+2}")
    odd = tuple(next(x for x in P.elements if P.q(x) == H))
    iso = tuple(next(x for x in P.elements if any(x) and P.q(x) == 0))
    with pytest.raises(GlueError):      # q(a) + q(tau a) = 1/2: not an anti-isometry
        glueing_type(_input(P, P, (iso,), (odd,)))
    with pytest.raises(GlueError):      # not injective
        glueing_type(_input(P, P, (iso,), (tuple([0] * P.k),)))


@pytest.mark.parametrize("kind,n,even,odd", [("D", 8, "E8", "Z^8"), ("D", 16, "D16+", "Z^16")])
def test_lattice_type_one(kind, n, even, odd):
    res, ext = lattice_extensions(make_lattice(kind, n))
    assert res.type == "I"
    M1, M2, L = ext.lattices
    assert lattice_label(M1) == lattice_label(M2) == even
    assert lattice_label(L) == odd


def test_even_part_of_z16():
    K, _ = even_sublattice(make_lattice("Z", 16))
    res, ext = lattice_extensions(K)
    assert is_isometric(ext.lattices[2], make_lattice("Z", 16)) is not None


def _weights(row):
    return sorted(Fraction(w.strip("[]()")) for w in row.weights)


@pytest.mark.parametrize("c2", range(16))
def test_mtc_rows(c2):
    r = mtc_table_row(c2)
    assert r.c == Fraction(c2, 2)
    assert r.fusion == expected_fusion(c2)
    # vacuum, the weight-1/2 fermion, and objects of weight c/8 mod 1
    rest = [Fraction(c2, 16) % 1] * (2 if r.fusion != "Ising" else 1)
    assert _weights(r) == sorted([Fraction(0), H] + rest)


def test_mtc_forms_match_weights():
    assert mtc_table_row(0).category.replace(" ", "").endswith("(2_II^{+2})")
    for c2, sym in ((0, "2_II^{+2}"), (8, "2_II^{-2}")):
        D = build_form(sym)
        assert sorted(D.q(x) for x in D.elements) == _weights(mtc_table_row(c2))
    with pytest.raises(GlueError):
        mtc_table_row(16)


def test_count_tables():
    rep = validate_count_tables()
    assert rep.ok and rep.total == 969 and rep.per_type == EXPECTED_PER_TYPE and rep.row_a == 273


def test_count_table_errors(tmp_path):
    with pytest.raises(DataError):
        validate_count_tables(genera=[])
    p = tmp_path / "empty.csv"
    p.write_text("")
    with pytest.raises(DataError):
        read_genera(p)
    rows = read_genera()
    rows[0] = dict(rows[0], edges_loop=rows[0]["edges_loop"] + 1)
    assert not validate_count_tables(genera=rows).ok
