"""Kneser 2-neighbours of even unimodular lattices and the resulting graphs.

A class v in M/2M with <v,v> = 0 mod 4 and v not in 2M defines
K = {x in M : <v,x> even}. The form K'/K is 2_II^{+2}; its two norm-0
classes give M itself and the neighbour M2, the norm-1/2 class gives an odd
unimodular lattice with even sublattice K.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import linalg as la
from .discform import discriminant_form, is_isomorphic_df
from .isometry import GeneratorSet, Isometry, automorphism_generators, fingerprint, is_isometric
from .lattice import (Lattice, LatticeError, congruence_sublattice, fixed_sublattice_vector,
                      glue_extension, zero_lattice)
from .roots import root_system, root_vectors, split_unit_vectors
from .symbols import build_form

log = logging.getLogger(__name__)


# -- labels ------------------------------------------------------------------------

def lattice_label(L: Lattice) -> str:
    """Root-system style name: components, a scaled A1 for a rank-1 complement,
    and one '+' per factor 2 of the index of roots + complement in L."""
    if L.rank == 0:
        return "0"
    if L.is_integral and not L.is_even:
        l, S = split_unit_vectors(L)
        if l:
            z = f"Z^{l}" if l > 1 else "Z"
            return z if S.rank == 0 else f"{lattice_label(S)} {z}"
    from .lattice import orthogonal_sublattice
    rs = root_system(L)
    comps = [(s, n, "") for s, n in rs.components]
    R = root_vectors(L)
    rows = [list(map(int, r)) for r in R]
    extra = ""
    if rs.rank < L.rank:
        C = orthogonal_sublattice(L, rows) if rows else L
        rows += [[int(x) for x in r] for r in (C.embedding or la.identity(L.rank))]
        if C.rank == 1 and C.gram[0][0] % 2 == 0:
            comps.append(("A", 1, f"({C.gram[0][0] // 2})"))
        else:
            extra = f"[{C.rank}:{C.det}]"
    d, _, _ = la.smith(la.hnf_rows(rows))
    index = 1
    for x in d:
        index *= abs(x)
    plus = ""
    while index > 1 and index % 2 == 0:
        plus += "+"
        index //= 2
    if index > 1:
        plus += f"[{index}]"
    comps.sort(key=lambda c: (c[0], c[1], c[2]))
    parts, i = [], 0
    while i < len(comps):
        j = i
        while j < len(comps) and comps[j] == comps[i]:
            j += 1
        s, n, tag = comps[i]
        parts.append(f"{s}{n}{tag}" + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    name = "".join(parts) + extra or "0"
    if not plus:
        return name
    simple = len(parts) == 1 and "^" not in parts[0] and not extra
    return (name if simple else f"({name})") + plus


# -- one neighbour step ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NeighbourResult:
    M: Lattice
    v: tuple
    K: Lattice
    M1: Lattice
    M2: Lattice
    Lodd: Lattice
    m0: tuple  # vector of M with <v, m0> odd (M coordinates)
    glue: dict  # gamma name -> glue vector in K coordinates

    def to_K(self, x) -> list[Fraction]:
        return _coords_in(x, self.K.embedding)

    def m2_coords(self, x) -> list[Fraction]:
        """Coordinates in M2 of a vector given in M-coordinates (rationally)."""
        return _coords_in(self.to_K(x), self.M2.embedding)


def _coords_in(x, rows) -> list[Fraction]:
    """y with x = y . rows for a square invertible row basis."""
    inv = la.inverse([list(map(Fraction, r)) for r in rows])
    x = list(map(Fraction, x))
    n = len(inv)
    return [sum(x[i] * inv[i][j] for i in range(n)) for j in range(n)]


_TWO_II = None


def _two_ii():
    global _TWO_II
    if _TWO_II is None:
        _TWO_II = build_form("2_II^+2")
    return _TWO_II


def two_neighbour(M: Lattice, v: Sequence[int], *, check_form: bool = True) -> NeighbourResult:
    if not (M.is_even and M.det == 1):
        raise LatticeError("two_neighbour needs an even unimodular lattice")
    v = tuple(int(x) for x in v)
    if any(Fraction(x) != int(x) for x in v):
        raise LatticeError("v must be a lattice vector")
    vv = M.norm(v)
    if vv % 4 != 0:
        raise LatticeError("need <v,v> = 0 mod 4")
    if all(x % 2 == 0 for x in v):
        raise LatticeError("v lies in 2M")
    Gi, _ = M.gram_int
    gv = (Gi @ np.array(v, dtype=np.int64)) % 2
    K = congruence_sublattice(M, gv.tolist(), 2)
    i = int(np.flatnonzero(gv)[0])
    m0 = tuple(int(j == i) for j in range(M.rank))
    h = [Fraction(x, 2) for x in v]
    hm = [a + b for a, b in zip(h, m0)]
    # exactly one of h, h + m0 has even norm
    even, odd = (h, hm) if M.norm(h) % 2 == 0 else (hm, h)
    B = K.embedding
    g1, g2, g3 = _coords_in(m0, B), _coords_in(even, B), _coords_in(odd, B)
    M1 = glue_extension(K, [g1], even=True)
    M2 = glue_extension(K, [g2], even=True)
    Lodd = glue_extension(K, [g3], even=False)
    if Lodd.is_even or Lodd.det != 1 or M2.det != 1:
        raise AssertionError("neighbour construction broke unimodularity")
    if check_form:
        D, _ = discriminant_form(K)
        if is_isomorphic_df(D, _two_ii()) is None:
            raise AssertionError("K'/K is not 2_II^+2")
    return NeighbourResult(M, v, K, M1, M2, Lodd, m0,
                           {"gamma1": tuple(g1), "gamma2": tuple(g2), "gamma3": tuple(g3)})


# -- orbits on M/2M ---------------------------------------------------------------

@dataclass(frozen=True)
class Norm4Class:
    bits: tuple  # coordinates mod 2
    norm_mod4: int = 0

    @property
    def vector(self) -> tuple:
        return tuple(int(b) for b in self.bits)


@dataclass(frozen=True, eq=False)
class OrbitData:
    n: int
    labels: np.ndarray  # orbit index per code, -1 off the qualifying set
    classes: list  # (Norm4Class, size), ordered by representative

    def code(self, x) -> int:
        c = 0
        for b in x:
            c = (c << 1) | (int(b) & 1)
        return c

    def label_of(self, x) -> int:
        return int(self.labels[self.code(x)])


def _bits(codes: np.ndarray, n: int) -> np.ndarray:
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts) & 1).astype(np.int64)


def orbit_data(M: Lattice, gens: GeneratorSet, max_rank: int = 16) -> OrbitData:
    n = M.rank
    if n > max_rank:
        raise MemoryError(f"rank {n} exceeds the orbit budget ({max_rank})")
    size = 1 << n
    codes = np.arange(size, dtype=np.int64)
    Gi, _ = M.gram_int
    X = _bits(codes, n)
    norms = np.einsum("ij,jk,ik->i", X, Gi, X) if n else np.zeros(1, dtype=np.int64)
    qual = (norms % 4 == 0) & (codes != 0)
    # generator images of every code, via the columns of U mod 2
    pow2 = (1 << np.arange(n - 1, -1, -1, dtype=np.int64)) if n else np.zeros(0, dtype=np.int64)
    seen, rows, cols = set(), [], []
    for g in gens:
        U = np.asarray(g.matrix, dtype=np.int64) & 1
        key = U.tobytes()
        if key in seen:
            continue
        seen.add(key)
        col_codes = (U * pow2[:, None]).sum(axis=0)
        img = np.zeros(size, dtype=np.int64)
        for j in range(n):
            img ^= np.where(X[:, j] == 1, col_codes[j], 0)
        rows.append(codes)
        cols.append(img)
    if rows:
        r, c = np.concatenate(rows), np.concatenate(cols)
        A = coo_matrix((np.ones(r.size, dtype=np.int8), (r, c)), shape=(size, size)).tocsr()
        _, comp = connected_components(A, directed=True, connection="weak")
    else:
        comp = codes.copy()
    # orbits never mix qualifying and other classes (norm mod 4 is invariant)
    qcodes = codes[qual]
    qcomp = comp[qual]
    labels = np.full(size, -1, dtype=np.int64)
    classes = []
    if qcodes.size:
        uniq, first, counts = np.unique(qcomp, return_index=True, return_counts=True)
        reps = qcodes[first]  # qcodes is increasing, so the first hit is the least code
        order = np.argsort(reps)
        lab_of_comp = np.empty(uniq.size, dtype=np.int64)
        lab_of_comp[order] = np.arange(uniq.size)
        labels[qcodes] = lab_of_comp[np.searchsorted(uniq, qcomp)]
        for k in order:
            bits = tuple(int(b) for b in _bits(np.array([reps[k]]), n)[0])
            classes.append((Norm4Class(bits, 0), int(counts[k])))
    bad = comp[~qual & (codes != 0)]
    if np.intersect1d(bad, qcomp).size:
        raise AssertionError("generator action does not preserve norms mod 4")
    return OrbitData(n, labels, classes)


def orbit_classes(M: Lattice, gens: GeneratorSet, max_rank: int = 16) -> list[tuple[Norm4Class, int]]:
    """Orbits of the group generated by gens on nonzero classes of M/2M of norm 0 mod 4."""
    return orbit_data(M, gens, max_rank).classes


def qualifying_count(M: Lattice) -> int:
    """Direct count of nonzero norm-0-mod-4 classes of M/2M."""
    n = M.rank
    X = _bits(np.arange(1 << n, dtype=np.int64), n)
    Gi, _ = M.gram_int
    norms = np.einsum("ij,jk,ik->i", X, Gi, X)
    return int(np.count_nonzero(norms % 4 == 0)) - 1


def edge_kind(M: Lattice, v, res: NeighbourResult, orbits: OrbitData,
              witness: Isometry | None = None) -> int:
    """1 if M2 is not isometric to M; else 3 when both ends lie in one orbit, 2 otherwise."""
    if witness is None:
        witness = is_isometric(res.M2, M)
    if witness is None:
        return 1
    # M is the neighbour of M2 along 2*m0
    v2 = res.m2_coords([2 * x for x in res.m0])
    if any(x.denominator != 1 for x in v2):
        raise AssertionError("reverse class is not integral")
    back = witness.apply(np.array([int(x) for x in v2], dtype=np.int64)) % 2
    a, b = orbits.label_of(np.asarray(v) % 2), orbits.label_of(back)
    if a < 0 or b < 0:
        raise AssertionError("neighbour class is not of norm 0 mod 4")
    return 3 if a == b else 2


# -- graphs ------------------------------------------------------------------------

@dataclass(eq=False)
class GraphNode:
    lattice: Lattice
    gens: GeneratorSet
    fingerprint: tuple
    label: str
    reflections_only: bool = False


@dataclass(eq=False)
class NeighbourEdge:
    ends: tuple  # node ids
    K: Lattice
    odd: Lattice
    kind: int
    K_label: str
    odd_label: str
    classes: list = field(default_factory=list)  # (node id, orbit representative, orbit size)

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]

    @property
    def unit_vectors(self) -> int:
        l, _ = split_unit_vectors(self.odd)
        return l


@dataclass(eq=False)
class NeighbourGraph:
    nodes: list
    edges: list

    def summary(self) -> str:
        return f"nodes={len(self.nodes)} edges={len(self.edges)}"

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": i, "label": nd.label, "rank": nd.lattice.rank,
                       "reflections_only": nd.reflections_only} for i, nd in enumerate(self.nodes)],
            "edges": [{"ends": list(e.ends), "K": e.K_label, "odd": e.odd_label, "kind": e.kind,
                       "unit_vectors": e.unit_vectors,
                       "orbits": [[i, "".join(map(str, c.bits)), s] for i, c, s in e.classes]}
                      for e in self.edges],
        }

    def to_dot(self) -> str:
        out = ["graph neighbours {"]
        for i, nd in enumerate(self.nodes):
            out.append(f'  n{i} [label="{nd.label}"];')
        for e in self.edges:
            style = ' style="dotted"' if e.unit_vectors else ""
            out.append(f'  n{e.ends[0]} -- n{e.ends[1]} [label="{e.K_label}"{style}];')
        out.append("}")
        return "\n".join(out) + "\n"


@dataclass(frozen=True, eq=False)
class LibraryEntry:
    lattice: Lattice
    extras: tuple = ()


def _match(L: Lattice, candidates) -> tuple[int, Isometry] | None:
    fp = fingerprint(L)
    for idx, C in candidates:
        if C.rank == L.rank and fingerprint(C) == fp:
            w = is_isometric(L, C, check_fingerprint=False)
            if w is not None:
                return idx, w
    return None


def _node_for(L: Lattice, library) -> GraphNode:
    hit = _match(L, [(i, e.lattice) for i, e in enumerate(library)])
    if hit is not None:
        entry = library[hit[0]]
        gens = automorphism_generators(entry.lattice, entry.extras)
        return GraphNode(entry.lattice, gens, fingerprint(entry.lattice),
                         entry.lattice.name or lattice_label(entry.lattice))
    log.warning("node %s not in the library; using reflections only", lattice_label(L))
    return GraphNode(L, automorphism_generators(L), fingerprint(L), lattice_label(L), True)


def build_graph(seeds: Sequence, library: Sequence[LibraryEntry] = (), max_rank: int = 16) -> NeighbourGraph:
    """Closure of the seeds under 2-neighbours, with one edge per (node pair, K class)."""
    nodes: list[GraphNode] = []
    for s in seeds:
        L, gens = (s.lattice, automorphism_generators(s.lattice, s.extras)) if isinstance(s, LibraryEntry) else s
        if not (L.is_even and L.det == 1):
            raise LatticeError("seeds must be even unimodular")
        if _match(L, [(i, nd.lattice) for i, nd in enumerate(nodes)]) is None:
            nodes.append(GraphNode(L, gens, fingerprint(L), L.name or lattice_label(L)))
    if len({nd.lattice.rank for nd in nodes}) > 1:
        raise LatticeError("seeds must have equal rank")
    edges: list[NeighbourEdge] = []
    done = 0
    while done < len(nodes):
        i = done
        node = nodes[i]
        M = node.lattice
        orbits = orbit_data(M, node.gens, max_rank)
        for cls, size in orbits.classes:
            v = cls.vector
            res = two_neighbour(M, v)
            hit = _match(res.M2, [(j, nd.lattice) for j, nd in enumerate(nodes)])
            if hit is None:
                nodes.append(_node_for(res.M2, library))
                j, kind = len(nodes) - 1, 1
            else:
                j, w = hit
                kind = edge_kind(M, v, res, orbits, w) if j == i else 1
            ends = (min(i, j), max(i, j))
            merged = False
            for e in edges:
                if e.ends == ends and fingerprint(e.K) == fingerprint(res.K) \
                        and is_isometric(res.K, e.K, check_fingerprint=False) is not None:
                    e.classes.append((i, cls, size))
                    merged = True
                    break
            if not merged:
                edges.append(NeighbourEdge(ends, res.K, res.Lodd, kind, lattice_label(res.K),
                                           lattice_label(res.Lodd) if res.Lodd.is_integral else "?",
                                           [(i, cls, size)]))
        done += 1
    return NeighbourGraph(nodes, edges)


# -- odd unimodular lattices via stumps ----------------------------------------------

@dataclass(frozen=True)
class ClassRow:
    rank: int
    odd: int
    stump: int
    even: int
    representatives: tuple  # names of the odd lattices


def _lattice_name(S: Lattice, l: int) -> str:
    base = lattice_label(S)
    if l == 0:
        return base
    z = f"Z^{l}" if l > 1 else "Z"
    return z if base == "0" else f"{base} {z}"


def collect_stumps(graphs: Sequence[NeighbourGraph]) -> list[Lattice]:
    """Pairwise non-isometric stumps: the even nodes plus the split odd lattices of all edges."""
    stumps: list[Lattice] = [zero_lattice()]
    cands = []
    for g in graphs:
        cands += [nd.lattice for nd in g.nodes]
        for e in g.edges:
            _, S = split_unit_vectors(e.odd)
            cands.append(S)
    for S in cands:
        if _match(S, [(k, T) for k, T in enumerate(stumps)]) is None:
            stumps.append(S)
    return stumps


def default_graphs(max_rank: int, library=()) -> list[NeighbourGraph]:
    from .data import graph_seed
    top = 8 * ((max_rank + 7) // 8)
    return [build_graph([graph_seed(r)], library) for r in range(0, top + 1, 8)]


def classify_odd_unimodular(max_rank: int = 16, graphs=None, library=None) -> list[ClassRow]:
    """Counts of odd, odd-stump and even unimodular lattices for ranks 0..max_rank."""
    if max_rank > 16 or max_rank < 0:
        raise ValueError("max_rank must lie in 0..16")
    if graphs is None:
        from .data import graph_library
        graphs = default_graphs(max_rank, graph_library() if library is None else library)
    stumps = collect_stumps(graphs)
    rows = []
    for d in range(max_rank + 1):
        reps = []
        for S in stumps:
            if S.rank > d or (S.is_even and S.rank == d):
                continue
            reps.append(_lattice_name(S, d - S.rank))
        n_stump = sum(1 for S in stumps if S.rank == d and S.rank and not S.is_even)
        n_even = sum(1 for S in stumps if S.rank == d and S.is_even)
        rows.append(ClassRow(d, len(reps), n_stump, n_even, tuple(sorted(reps))))
    return rows


# -- inner automorphisms ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class InnerOrbit:
    h: tuple  # representative of (1/2 M)/M, M-coordinates
    size: int
    Lh: Lattice
    glue_type: str
    neighbour: Lattice


def classify_inner_lattice_node(M: Lattice, gens: GeneratorSet, max_rank: int = 16) -> list[InnerOrbit]:
    """Orbits on the nonzero h in (1/2 M)/M with <h,h> integral, with L^h and its neighbour."""
    if not (M.is_even and M.det == 1):
        raise LatticeError("expects an even unimodular lattice")
    out = []
    for cls, size in orbit_classes(M, gens, max_rank):
        h = tuple(Fraction(b, 2) for b in cls.bits)
        Lh = fixed_sublattice_vector(M, h)
        # (h + M)_ev: either h + L^h or h + m + L^h with <h, m> = 1/2 mod 1
        hh = list(h)
        if M.norm(hh) % 2 != 0:
            Gh = la.matvec([list(r) for r in M.gram], hh)
            k = next(i for i, x in enumerate(Gh) if x.denominator != 1)
            hh[k] += 1
        glue = _coords_in(hh, Lh.embedding)
        N = glue_extension(Lh, [glue], even=True)
        # M is unimodular, so h is never in M' = M: always type I
        out.append(InnerOrbit(h, size, Lh, "I", N))
    return out
