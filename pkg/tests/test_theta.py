from collections import Counter
from fractions import Fraction

import pytest

from oracles import box_norm_counts, e8_theta
from svosa.data import get_lattice
from svosa.lattice import direct_sum, make_lattice
from svosa.theta import block_theta, default_blocks, theta_series


def test_e8_is_e4():
    t = theta_series(make_lattice("E", 8), None, 4)
    assert [t[k] for k in range(4)] == e8_theta(4)


def test_product_identity():
    A, D = make_lattice("A", 2), make_lattice("D", 4)
    ta, td = theta_series(A, None, 3), theta_series(D, None, 3)
    assert theta_series(direct_sum(A, D), None, 3).agrees(ta * td)


@pytest.mark.parametrize("kind,n,rep", [("A", 2, [Fraction(1, 3), Fraction(2, 3)]),
                                        ("D", 4, [0, 0, Fraction(1, 2), Fraction(1, 2)]),
                                        ("A", 3, None)])
def test_against_box_search(kind, n, rep):
    L = make_lattice(kind, n)
    t = theta_series(L, rep, 3)
    want = Counter({Fraction(k) / 2: c for k, c in box_norm_counts(L.gram, 5, rep).items()})
    assert dict(t.terms()) == {e: c for e, c in want.items() if e < 3}


def test_block_matches_direct():
    L, _ = get_lattice("D16+")
    reps = [None, [Fraction(1, 2)] + [0] * 15]
    direct = [theta_series(L, r, 2) for r in reps]
    blocked = block_theta(L, reps, 2, default_blocks(L))
    for a, b in zip(direct, blocked):
        assert a == b


def test_e8_squared_blocks():
    L, _ = get_lattice("E8^2")
    t = block_theta(L, [None], 3)[0]
    e = theta_series(make_lattice("E", 8), None, 3)
    assert t == e * e
