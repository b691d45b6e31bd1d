"""Isometry testing by fingerprint prefilter and backtracking on short vectors."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg as la
from .lattice import Lattice, LatticeError, is_isometry_matrix
from .roots import root_system, root_vectors
from .vectors import all_short_vectors, short_vectors


class SearchLimit(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Isometry:
    """Integer matrix U with U^t G_target U = G_source (acts on coordinate columns)."""
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=np.int64))

    def apply(self, x):
        return self.matrix @ np.asarray(x)

    def check(self, src: Lattice, tgt: Lattice) -> bool:
        return is_isometry_matrix(self.matrix.tolist(), src.gram, tgt.gram)

    def key(self) -> bytes:
        return self.matrix.tobytes()


@dataclass
class GeneratorSet:
    gens: list = field(default_factory=list)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


def fingerprint(L: Lattice, max_norm: int = 4) -> tuple:
    """(rank, det, counts of vectors with norm <= max_norm by norm, roots)."""
    key = ("_fingerprint", max_norm)
    if key in L.__dict__:
        return L.__dict__[key]
    L.__dict__[key] = out = _fingerprint(L, max_norm)
    return out


def _fingerprint(L: Lattice, max_norm: int) -> tuple:
    vs = all_short_vectors(L, max_norm)
    counts = tuple(sorted(vs.norm_counts().items()))
    roots = root_system(L).name() if L.is_integral else None
    return (L.rank, L.det, counts, roots)


def _generating_set(L: Lattice) -> tuple[np.ndarray, int]:
    """Short vectors of L generating it, first `rank` of them independent."""
    n = L.rank
    _, T, _ = L.reduction
    bound = max(L.norm([T[i][j] for i in range(n)]) for j in range(n))
    vs = short_vectors(L, bound)
    X = vs.num
    Gi, _ = L.gram_int
    norms = vs.norm_num
    chosen: list[int] = []
    used = np.zeros(X.shape[0], dtype=bool)
    # greedy: shortest first, prefer vectors meeting many chosen ones
    while len(chosen) < n:
        best, best_score, cur_norm = None, -1, None
        base = X[chosen].astype(float)
        for idx in range(X.shape[0]):
            if used[idx]:
                continue
            if cur_norm is not None and norms[idx] != cur_norm:
                break
            cand = np.vstack([base, X[idx].astype(float)])
            if np.linalg.matrix_rank(cand) < len(chosen) + 1:
                used[idx] = True
                continue
            cur_norm = norms[idx]
            score = int(np.count_nonzero(X[chosen] @ Gi @ X[idx])) if chosen else 0
            if score > best_score:
                best, best_score = idx, score
            if score == len(chosen):
                break
        if best is None:
            raise LatticeError("short vectors do not span the lattice")
        chosen.append(best)
        used[best] = True
    # complete to a generating set: add vectors outside the current span
    rows = X[chosen].tolist()
    basis = rows
    while True:
        d = abs(la.det(basis))
        if d == 1:
            break
        adj = [[int(x * d) % d for x in r] for r in la.inverse(basis)]
        inside = ~((X @ np.array(adj, dtype=np.int64)) % d).any(axis=1)
        out = np.flatnonzero(~inside)
        if out.size == 0:
            raise LatticeError("short vectors do not generate the lattice")
        chosen.append(int(out[0]))
        basis = la.hnf_rows(basis + [X[out[0]].tolist()])
    return X[chosen], vs.norm_den


def _profiles(V: np.ndarray, G: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Histogram of inner products of each row of V against the rows of M."""
    if M.shape[0] == 0 or V.shape[0] == 0:
        return np.zeros((V.shape[0], 1), dtype=np.int64)
    out = []
    for s in range(0, V.shape[0], 4096):
        ips = (V[s:s + 4096] @ G) @ M.T
        top = int(np.abs(ips).max())
        out.append(np.stack([(ips == v).sum(axis=1) for v in range(-top, top + 1)], axis=1)
                   if top else (ips == 0).sum(axis=1, keepdims=True))
    width = max(o.shape[1] for o in out)
    pad = [np.pad(o, ((0, 0), ((width - o.shape[1]) // 2, (width - o.shape[1]) // 2))) for o in out]
    return np.concatenate(pad)


def _min_norm(L: Lattice) -> Fraction:
    G, _, _ = L.reduction
    return min(G[i][i] for i in range(L.rank))


def find_isometry(L1: Lattice, L2: Lattice, node_limit: int = 2_000_000) -> Isometry | None:
    """Backtracking search for U with U^t G2 U = G1; None if there is none.

    Generators of L1 (short vectors) are mapped one at a time to vectors of
    L2 with the same norm, the same inner products with earlier images, and
    the same inner-product profile against the minimal vectors.
    """
    n = L1.rank
    if n != L2.rank or L1.det != L2.det:
        return None
    if n == 0:
        return Isometry(np.zeros((0, 0), dtype=np.int64))
    G1i, d1 = L1.gram_int
    G2, d2 = L2.gram_int
    if d1 != d2:
        G1i, G2 = G1i * d2, G2 * d1
        d1 = d2 = d1 * d2
    gens, _ = _generating_set(L1)
    m = gens.shape[0]
    tgt = (gens @ G1i @ gens.T).tolist()
    # minimal vectors on both sides must look alike
    mn = min(_min_norm(L1), _min_norm(L2))
    M1 = all_short_vectors(L1, mn).num
    M2 = all_short_vectors(L2, mn).num
    if M1.shape[0] != M2.shape[0]:
        return None
    if M1.shape[0] > 6000:  # profiles get expensive; rely on inner products only
        M1, M2 = M1[:0], M2[:0]
    prof1 = _profiles(gens, G1i, M1)
    top = Fraction(max(tgt[i][i] for i in range(m)), d1)
    v1 = all_short_vectors(L1, top).norm_counts()
    pool_vs = all_short_vectors(L2, top)
    if v1 != pool_vs.norm_counts():
        return None
    pools = []
    cache = {}
    for k in range(m):
        nn = tgt[k][k]
        if nn not in cache:
            sel = pool_vs.num[pool_vs.norm_num * d1 == nn * pool_vs.norm_den]
            cache[nn] = (sel, _profiles(sel, G2, M2))
        sel, pr = cache[nn]
        w = prof1.shape[1]
        if pr.shape[1] != w:
            wide = max(w, pr.shape[1])
            a = np.pad(pr, ((0, 0), ((wide - pr.shape[1]) // 2,) * 2))
            b = np.pad(prof1[k:k + 1], ((0, 0), ((wide - w) // 2,) * 2))
        else:
            a, b = pr, prof1[k:k + 1]
        ok = (a == b).all(axis=1)
        P = sel[ok]
        if P.shape[0] == 0:
            return None
        pools.append((P, P @ G2))
    # order: most constrained first
    order = [int(np.argmin([p[0].shape[0] for p in pools]))]
    rest = set(range(m)) - set(order)
    while rest:
        nxt = max(rest, key=lambda i: (sum(tgt[i][j] != 0 for j in order), -pools[i][0].shape[0], -i))
        order.append(nxt)
        rest.remove(nxt)
    gens = gens[order]
    tgt = [[tgt[i][j] for j in order] for i in order]
    pools = [pools[i] for i in order]
    # independent subset for solving U
    indep: list[int] = []
    for i in range(m):
        if np.linalg.matrix_rank(gens[indep + [i]].astype(float)) == len(indep) + 1:
            indep.append(i)
    B = [list(map(Fraction, r)) for r in gens[indep].tolist()]
    Binv_t = la.inverse(la.transpose(B))

    images = [None] * m
    cands = [None] * m
    nodes = 0

    def candidates(k):
        P, PG = pools[k]
        idx = np.arange(P.shape[0])
        for j in range(k):
            if idx.size == 0:
                break
            idx = idx[PG[idx] @ images[j] == tgt[k][j]]
        return idx

    k = 0
    cands[0] = candidates(0)
    pos = [0] * m
    while True:
        if pos[k] >= cands[k].size:
            k -= 1
            if k < 0:
                return None
            pos[k] += 1
            continue
        nodes += 1
        if nodes > node_limit:
            raise SearchLimit("isometry search exceeded its node budget")
        images[k] = pools[k][0][cands[k][pos[k]]]
        if k == m - 1:
            W = [[Fraction(int(x)) for x in images[i]] for i in indep]
            U = la.matmul(la.transpose(W), Binv_t)
            if all(x.denominator == 1 for r in U for x in r):
                Ui = np.array([[int(x) for x in r] for r in U], dtype=np.int64)
                if is_isometry_matrix(Ui.tolist(), L1.gram, L2.gram) and all(
                        (Ui @ gens[i] == images[i]).all() for i in range(m)):
                    return Isometry(Ui)
            pos[k] += 1
            continue
        k += 1
        cands[k] = candidates(k)
        pos[k] = 0


def is_isometric(L1: Lattice, L2: Lattice, *, check_fingerprint: bool = True,
                 node_limit: int = 2_000_000) -> Isometry | None:
    """Witness isometry L1 -> L2 or None. Witnesses are always re-verified."""
    if L1.rank != L2.rank or L1.det != L2.det:
        return None
    if check_fingerprint and fingerprint(L1) != fingerprint(L2):
        return None
    iso = find_isometry(L1, L2, node_limit)
    if iso is not None and not iso.check(L1, L2):
        raise AssertionError("isometry witness failed verification")
    return iso


def same_class(L1: Lattice, L2: Lattice) -> bool:
    """Isometry decision that also covers rootless even unimodular rank 24.

    Such lattices are all isometric to the Leech lattice, so the fingerprint
    decides; everything else goes through the witness search.
    """
    if L1.rank == L2.rank == 24 and L1.is_even and L2.is_even and L1.det == L2.det == 1:
        if fingerprint(L1, 2) == fingerprint(L2, 2) and not root_system(L1).components:
            return True
    return is_isometric(L1, L2) is not None


def reflection(L: Lattice, beta) -> np.ndarray:
    """Matrix of x -> x - <x,b> b for a norm-2 vector b (integral L)."""
    Gi, d = L.gram_int
    b = np.asarray(beta, dtype=np.int64)
    return np.eye(L.rank, dtype=np.int64) - np.outer(b, (Gi @ b) // d)


def automorphism_generators(L: Lattice, extra=()) -> GeneratorSet:
    """Reflections in all roots (one per sign pair) plus verified extra generators."""
    out, seen = [], set()
    R = root_vectors(L) if L.rank else np.zeros((0, 0), dtype=np.int64)
    if R.shape[0]:
        first = np.argmax(R != 0, axis=1)
        R = R[R[np.arange(R.shape[0]), first] > 0]
        order = np.lexsort(tuple(R[:, j] for j in range(R.shape[1] - 1, -1, -1)))
        R = R[order]
    for b in R:
        iso = Isometry(reflection(L, b))
        if iso.key() not in seen:
            seen.add(iso.key())
            out.append(iso)
    for g in extra:
        iso = g if isinstance(g, Isometry) else Isometry(np.array(
            [[Fraction(x) for x in r] for r in g], dtype=object).astype(np.int64))
        if not iso.check(L, L):
            raise LatticeError("extra generator is not an isometry")
        if iso.key() not in seen:
            seen.add(iso.key())
            out.append(iso)
    return GeneratorSet(out)
