"""Root systems (norm-2 vectors) and splitting off unit vectors."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import linalg as la
from .lattice import Lattice, LatticeError, orthogonal_sublattice, make_lattice, direct_sum
from .vectors import all_short_vectors, short_vectors


def root_count(series: str, n: int) -> int:
    if series == "A":
        return n * (n + 1)
    if series == "D":
        return 2 * n * (n - 1)
    return {6: 72, 7: 126, 8: 240}[n]


def _identify(rank: int, count: int) -> tuple[str, int]:
    if count == rank * (rank + 1):
        return "A", rank
    if rank >= 4 and count == 2 * rank * (rank - 1):
        return "D", rank
    if rank in (6, 7, 8) and count == root_count("E", rank):
        return "E", rank
    raise LatticeError(f"component of rank {rank} with {count} roots is not ADE")


@dataclass(frozen=True)
class RootSystem:
    components: tuple  # sorted tuple of (series, rank)

    @property
    def count(self) -> int:
        return sum(root_count(s, n) for s, n in self.components)

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components)

    def name(self) -> str:
        if not self.components:
            return "0"
        c = Counter(self.components)
        parts = []
        for (s, n) in sorted(c):
            parts.append(f"{s}{n}" + (f"^{c[(s, n)]}" if c[(s, n)] > 1 else ""))
        return "".join(parts)

    def __add__(self, other: "RootSystem") -> "RootSystem":
        return RootSystem(tuple(sorted(self.components + other.components)))

    def __str__(self):
        return self.name()


def root_vectors(L: Lattice) -> np.ndarray:
    """All norm-2 vectors (both signs) as integer coordinate rows."""
    if not L.is_integral:
        raise LatticeError("root system needs an integral lattice")
    vs = all_short_vectors(L, 2)
    return vs.num[vs.norm_num == 2 * vs.norm_den]


def root_system(L: Lattice) -> RootSystem:
    R = root_vectors(L)
    if R.shape[0] == 0:
        return RootSystem(())
    Gi, _ = L.gram_int
    ips = R @ Gi @ R.T
    adj = csr_matrix(ips != 0)
    ncomp, labels = connected_components(adj, directed=False)
    comps = []
    for k in range(ncomp):
        sub = R[labels == k]
        r = la.rank(sub.tolist())
        comps.append(_identify(r, sub.shape[0]))
    return RootSystem(tuple(sorted(comps)))


def parse_root_system(name: str) -> RootSystem:
    """Inverse of RootSystem.name, e.g. 'A1^2E7^2'."""
    import re
    if name in ("", "0"):
        return RootSystem(())
    comps = []
    for s, n, e in re.findall(r"([ADE])(\d+)(?:\^(\d+))?", name):
        comps += [(s, int(n))] * int(e or 1)
    return RootSystem(tuple(sorted(comps)))


def split_unit_vectors(L: Lattice) -> tuple[int, Lattice]:
    """(l, stump) with L = Z^l + stump orthogonally; l = number of unit-vector pairs."""
    if not L.is_integral:
        raise LatticeError("splitting needs an integral lattice")
    vs = short_vectors(L, 1)
    units = vs.num[vs.norm_num == vs.norm_den]
    l = units.shape[0]
    stump = orthogonal_sublattice(L, units.tolist())
    if stump.name is None:
        stump = stump.renamed(f"stump({L.name})" if L.name else None)
    return l, stump


def cubic(l: int) -> Lattice:
    from .lattice import zero_lattice
    return make_lattice("Z", l) if l else zero_lattice()


def with_units(stump: Lattice, l: int) -> Lattice:
    return direct_sum(stump, cubic(l)) if l else stump
