from fractions import Fraction

import pytest

from svosa.constructions import d8_squared_plus, d_plus, e8_squared, leech
from svosa.lattice import (LatticeError, Lattice, congruence_sublattice, direct_sum, dual_lattice,
                           even_sublattice, fixed_sublattice_vector, glue_extension, make_lattice,
                           orthogonal_sublattice, rescale, sublattice, zero_lattice)


@pytest.mark.parametrize("kind,n,det", [("A", 1, 2), ("A", 4, 5), ("A", 15, 16), ("D", 4, 4), ("D", 12, 4),
                                        ("E", 6, 3), ("E", 7, 2), ("E", 8, 1), ("Z", 5, 1)])
def test_root_lattice_determinants(kind, n, det):
    L = make_lattice(kind, n)
    assert L.rank == n and L.det == det
    assert L.is_even == (kind != "Z")


def test_rejects_indefinite():
    with pytest.raises(LatticeError):
        Lattice([[1, 2], [2, 1]])


def test_direct_sum_and_zero():
    L = direct_sum(make_lattice("E", 8), make_lattice("A", 2))
    assert L.rank == 10 and L.det == 3
    assert zero_lattice().rank == 0 and zero_lattice().det == 1


def test_unimodular_constructions():
    for L in (d_plus(16), e8_squared()[0], d_plus(24), leech()):
        assert L.det == 1 and L.is_even
    K = d8_squared_plus()
    assert K.det == 4 and K.is_even


def test_d12_plus_is_odd_unimodular():
    D = make_lattice("D", 12)
    glue = D.from_ambient([Fraction(1, 2)] * 12)
    L = glue_extension(D, [glue], even=False)
    assert L.det == 1 and not L.is_even


def test_glue_outside_dual_rejected():
    A = make_lattice("A", 2)
    with pytest.raises(LatticeError):
        glue_extension(A, [[Fraction(1, 5), 0]], even=False)


def test_even_sublattice_index_two():
    Z = make_lattice("Z", 5)
    K, h = even_sublattice(Z)
    assert K.is_even and K.det == 4
    assert Z.norm(h) % 2 == 1


def test_congruence_sublattice_index():
    E = make_lattice("E", 8)
    K = congruence_sublattice(E, [1, 0, 0, 0, 0, 0, 0, 0], 2)
    assert K.det == 4


def test_dual_and_rescale():
    A = make_lattice("A", 3)
    Ad, basis = dual_lattice(A)
    assert Ad.det == Fraction(1, 4)
    assert rescale(A, 2).det == 2 ** 3 * 4


def test_sublattice_keeps_embedding():
    E = make_lattice("E", 8)
    S = sublattice(E, [[2, 0, 0, 0, 0, 0, 0, 0]] + [[0] * i + [1] + [0] * (7 - i) for i in range(1, 8)])
    assert S.det == 4
    assert S.embedding[0][0] == 2


def test_fixed_sublattice_and_complement():
    Z = make_lattice("Z", 4)
    Lh = fixed_sublattice_vector(Z, [Fraction(1, 2)] * 4)
    assert Lh.det == 4
    C = orthogonal_sublattice(Z, [[1, 1, 0, 0]])
    assert C.rank == 3 and C.det == 2


def test_ambient_roundtrip():
    L = d_plus(16)
    x = (1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1)
    assert L.from_ambient(L.to_ambient(x)) == tuple(Fraction(v) for v in x)
