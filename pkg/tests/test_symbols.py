import pytest
from hypothesis import given, strategies as st

from svosa.data import load_symbols, symbol_form
from svosa.discform import FormError, is_isomorphic_df, signature_mod8
from svosa.symbols import build_form, genus_rank, oddity_signature, parse_symbol


def test_parse_components():
    cs = parse_symbol("II_{10,0}(2_2^{+4}4^{+6})")
    assert [(c.q, c.t, c.eps, c.n) for c in cs] == [(2, 2, 1, 4), (4, None, 1, 6)]
    cs = parse_symbol("2_II^-10 4_II^-2")
    assert [(c.q, c.eps, c.n) for c in cs] == [(2, -1, 10), (4, -1, 2)]
    assert parse_symbol("1") == []


def test_parse_errors():
    with pytest.raises(FormError):
        parse_symbol("2_II^{+2} junk")
    with pytest.raises(FormError):
        parse_symbol("6^{+1}")


@pytest.mark.parametrize("name", sorted(load_symbols()))
def test_dictionary_signatures(name):
    D = symbol_form(name)
    assert D.is_nondegenerate()
    assert signature_mod8(D) == oddity_signature(name)
    r = genus_rank(name)
    if r is not None:
        assert signature_mod8(D) == r % 8


@given(st.sampled_from(["3", "5", "7", "9", "25"]), st.sampled_from([1, -1]), st.integers(1, 3))
def test_odd_components(q, eps, n):
    name = f"{q}^{{{'+' if eps > 0 else '-'}{n}}}"
    try:
        D = build_form(name)
    except FormError:
        return
    assert D.size == int(q) ** n
    assert signature_mod8(D) == oddity_signature(name)


def test_type_ii_signs():
    assert signature_mod8(build_form("2_II^{+2}")) == 0
    assert signature_mod8(build_form("2_II^{-2}")) == 4
    assert is_isomorphic_df(build_form("2_II^{+4}"), build_form("2_II^{-2} 2_II^{-2}")) is not None
