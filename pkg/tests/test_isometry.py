import numpy as np
from hypothesis import given, strategies as st

from svosa.constructions import d_plus, e8_squared
from svosa.isometry import automorphism_generators, fingerprint, is_isometric, same_class
from svosa.lattice import Lattice, is_isometry_matrix, make_lattice


def unimodular(n):
    """Products of elementary matrices."""
    ops = st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(-2, 2)),
                   min_size=1, max_size=12)

    def build(steps):
        U = np.eye(n, dtype=np.int64)
        for i, j, c in steps:
            if i != j:
                E = np.eye(n, dtype=np.int64)
                E[i, j] = c
                U = U @ E
        return U
    return ops.map(build)


@given(st.sampled_from([("A", 4), ("D", 5), ("E", 6)]), st.data())
def test_witness_after_basis_change(kind, data):
    L = make_lattice(*kind)
    U = data.draw(unimodular(L.rank))
    G = np.array([[int(x) for x in r] for r in L.gram])
    M = Lattice((U.T @ G @ U).tolist())
    iso = is_isometric(L, M)
    assert iso is not None and iso.check(L, M)


def test_non_isometric_same_theta():
    E, _ = e8_squared()
    D = d_plus(16)
    assert fingerprint(E, 2) != fingerprint(D, 2)
    assert is_isometric(E, D) is None
    assert not same_class(E, D)


def test_reflections_are_automorphisms():
    L = make_lattice("D", 4)
    gens = automorphism_generators(L)
    assert len(gens) == 12
    for g in gens:
        assert is_isometry_matrix(g.matrix.tolist(), L.gram, L.gram)
