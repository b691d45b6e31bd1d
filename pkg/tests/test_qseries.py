from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import eta_value_at_i, naive_euler_power
from svosa.qseries import (QSeries, SeriesError, eta, eta_quotient, euler_product_power,
                           numeric_eval)

H = Fraction(1, 2)


def series(denoms=(1, 2, 3)):
    term = st.tuples(st.integers(-2, 8), st.integers(-5, 5))
    return st.builds(lambda N, ts, p: QSeries(N, dict(ts), Fraction(p, 1)),
                     st.sampled_from(denoms), st.lists(term, max_size=6), st.integers(3, 6))


@pytest.mark.parametrize("e", [1, 2, 3, 24, -1, -24, 48])
def test_euler_power_against_product(e):
    assert euler_product_power(e, 12) == naive_euler_power(e, 12)


def test_t2_leading_terms():
    # (eta(tau) / eta(2 tau))^24 = q^-1 - 24 + 276 q - 2048 q^2 + ...
    t = eta_quotient([(1, 24), (2, -24)], 3)
    assert [t[k] for k in (-1, 0, 1, 2)] == [1, -24, 276, -2048]


def test_half_argument_exponents():
    e = eta_quotient([(H, 1)], 2)
    assert e.valuation == Fraction(1, 48)
    assert e[Fraction(1, 48)] == 1 and e[Fraction(1, 48) + H] == -1


@pytest.mark.parametrize("prec", [40, 60])
def test_eta_at_i(prec):
    assert abs(numeric_eval(eta(prec), 1j) - eta_value_at_i()) < 1e-8


@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert ((a + b) + c).agrees(a + (b + c))
    assert (a * b).agrees(b * a)
    assert ((a * b) * c).agrees(a * (b * c))
    assert (a * (b + c)).agrees(a * b + a * c)


@given(series())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(SeriesError):
            a.inverse()
        return
    one = a * a.inverse()
    assert one.agrees(QSeries.constant(1, one.prec))


@given(series(), st.integers(1, 4))
def test_power_matches_repeated_product(a, n):
    p = a
    for _ in range(n - 1):
        p = p * a
    assert (a ** n).agrees(p)


@given(series(denoms=(1, 2)), st.sampled_from([H, 2, 3]))
def test_substitute_is_ring_map(a, k):
    b = a.shift(1)
    assert (a * b).substitute(k).agrees(a.substitute(k) * b.substitute(k))


def test_precision_bookkeeping():
    a = QSeries.from_terms([(-1, 1), (0, 2)], 3)
    b = QSeries.from_terms([(1, 1)], 4)
    assert (a * b).prec == 3            # min(3 + 1, 4 - 1)
    assert a.inverse().prec == 5        # 3 - 2 * (-1)
    assert (a + b).prec == 3
    with pytest.raises(SeriesError):
        a[3]


def test_errors_and_json():
    with pytest.raises(SeriesError):
        QSeries(0, {}, 1)
    with pytest.raises(SeriesError):
        QSeries.from_terms([(Fraction(1, 3), 1)], 2, denom=2)
    with pytest.raises(SeriesError):
        QSeries.monomial(1).substitute(0)
    with pytest.raises(SeriesError):
        eta_quotient([(1, -24)], -1)
    with pytest.raises(SeriesError):
        numeric_eval(eta(3), -1j)
    s = eta_quotient([(H, 24), (2, 24), (1, -48)], 3)
    assert QSeries.from_json(s.to_json()) == s
    assert "O(q^(3/1))" in s.format()
