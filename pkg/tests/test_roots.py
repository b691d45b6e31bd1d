import pytest

from svosa.constructions import d8_squared_plus, d_plus, leech
from svosa.lattice import direct_sum, make_lattice
from svosa.roots import parse_root_system, root_count, root_system, split_unit_vectors


@pytest.mark.parametrize("kind,n,count", [("A", 1, 2), ("A", 5, 30), ("D", 4, 24), ("D", 16, 480),
                                          ("E", 6, 72), ("E", 7, 126), ("E", 8, 240)])
def test_root_counts(kind, n, count):
    assert root_count(kind, n) == count
    R = root_system(make_lattice(kind, n))
    assert R.count == count and R.name() == f"{kind}{n}"


def test_mixed_root_systems():
    assert root_system(d8_squared_plus()).name() == "D8^2"
    assert root_system(d_plus(16)).name() == "D16"
    assert root_system(leech()).count == 0
    L = direct_sum(make_lattice("A", 2), make_lattice("E", 7))
    assert root_system(L).name() == parse_root_system("A2E7").name()


def test_split_unit_vectors():
    l, S = split_unit_vectors(make_lattice("Z", 24))
    assert l == 24 and S.rank == 0
    l, S = split_unit_vectors(direct_sum(make_lattice("E", 8), make_lattice("Z", 3)))
    assert l == 3 and S.rank == 8 and S.det == 1 and S.is_even
