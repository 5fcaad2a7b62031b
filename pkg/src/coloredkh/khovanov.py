"""Cube of resolutions, enhanced states and the integral Khovanov complex.

Conventions: ``i = r - n_-`` and ``j = (#plus - #minus) + r + n_+ - 2 n_-``
where ``r`` counts 1-smoothings.  A loop label bit 1 means ``x`` (minus),
bit 0 means ``1`` (plus).  Enhanced states are ordered by smoothing bits,
then by the label mask over loops (loop 0 is the lowest bit).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .algebra.complexes import GradedChainComplex, HomologyTable, homology
from .algebra.matrix import IntegerMatrix
from .diagrams.gauss import GaussPhrase, gauss_to_pd, is_planar
from .diagrams.pd import PDCode
from .diagrams.states import SmoothingState, all_loop_counts, smoothing_pairs
from .errors import NotRealizable
from .limits import check_budget
from .polynomial import LaurentPolynomial

Diagram = Union[PDCode, GaussPhrase]


def _as_planar_pd(D: Diagram) -> PDCode:
    if isinstance(D, GaussPhrase):
        return gauss_to_pd(D)
    if D.n_crossings and not is_planar(D):
        raise NotRealizable("diagram is not planar; Khovanov homology is unavailable")
    return D


def _popcount(n: int) -> int:
    return bin(n).count("1")


@dataclass(frozen=True)
class CubeEdge:
    source: int
    crossing: int
    target: int
    kind: str  # "merge" or "split"
    sign: int


@dataclass(frozen=True)
class EnhancedState:
    state: SmoothingState
    labels: tuple[str, ...]  # "+" or "-" per loop, free loops last
    i: int
    j: int


class ResolutionCube:
    """All ``2^c`` smoothings of a diagram with their loops and the cube edges."""

    def __init__(self, D: PDCode):
        self.diagram = D
        c = D.n_crossings
        self.n_crossings = c
        arcs, zero, one = smoothing_pairs(D)
        self.arcs = arcs
        self._zero, self._one = zero, one
        narcs = len(arcs)
        nstates = 1 << c
        # arc -> loop id per state; loops numbered by their first (smallest) arc
        loop_of = np.empty((nstates, narcs), dtype=np.int16)
        nloops = np.empty(nstates, dtype=np.int64)
        for s in range(nstates):
            parent = list(range(narcs))

            def find(i):
                while parent[i] != i:
                    parent[i] = parent[parent[i]]
                    i = parent[i]
                return i

            for x in range(c):
                p, q, r, t = one[x] if (s >> x) & 1 else zero[x]
                for u, v in ((p, q), (r, t)):
                    ru, rv = find(u), find(v)
                    if ru != rv:
                        parent[max(ru, rv)] = min(ru, rv)
            ids: dict[int, int] = {}
            row = loop_of[s]
            for a in range(narcs):
                root = find(a)
                if root not in ids:
                    ids[root] = len(ids)
                row[a] = ids[root]
            nloops[s] = len(ids)
        self.loop_of = loop_of
        self.arc_loops = nloops
        self.free_loops = D.free_loops

    @property
    def n_states(self) -> int:
        return 1 << self.n_crossings

    def loop_count(self, s: int) -> int:
        return int(self.arc_loops[s]) + self.free_loops

    def state(self, s: int) -> SmoothingState:
        groups: list[list[int]] = [[] for _ in range(int(self.arc_loops[s]))]
        for a, l in zip(self.arcs, self.loop_of[s].tolist()):
            groups[l].append(a)
        return SmoothingState(s, self.n_crossings, tuple(tuple(g) for g in groups), self.free_loops)

    def edges(self) -> Iterator[CubeEdge]:
        for s in range(self.n_states):
            for x in range(self.n_crossings):
                if (s >> x) & 1:
                    continue
                t = s | (1 << x)
                kind = "merge" if self.arc_loops[t] < self.arc_loops[s] else "split"
                yield CubeEdge(s, x, t, kind, -1 if _popcount(s & ((1 << x) - 1)) % 2 else 1)

    def edge_data(self, s: int, x: int):
        """Loop bookkeeping for the edge flipping crossing ``x`` at state ``s``.

        Returns ``(t, sign, kind, involved_source, involved_target, perm)``
        where ``perm`` maps every uninvolved source loop (including free
        loops) to its target index.
        """
        t = s | (1 << x)
        a, b, c, _ = self._zero[x]
        ls, lt = self.loop_of[s], self.loop_of[t]
        Ls, Lt = int(self.arc_loops[s]), int(self.arc_loops[t])
        sign = -1 if _popcount(s & ((1 << x) - 1)) % 2 else 1
        la, lc = int(ls[a]), int(ls[c])
        if la != lc:
            kind = "merge"
            inv_s = (la, lc)
            inv_t = (int(lt[a]),)
        else:
            kind = "split"
            inv_s = (la,)
            inv_t = (int(lt[a]), int(lt[b]))
        perm = {}
        rep: dict[int, int] = {}
        for arc, l in enumerate(ls.tolist()):
            rep.setdefault(l, arc)
        for l in range(Ls):
            if l not in inv_s:
                perm[l] = int(lt[rep[l]])
        for f in range(self.free_loops):
            perm[Ls + f] = Lt + f
        return t, sign, kind, inv_s, inv_t, perm


def resolution_cube(D: PDCode) -> ResolutionCube:
    return ResolutionCube(D)


class EnhancedBasis:
    """Global enhanced-state basis with the Khovanov and Lee edge maps as triplets."""

    def __init__(self, D: PDCode, lee: bool = False):
        self.diagram = D
        cube = ResolutionCube(D)
        self.cube = cube
        c = D.n_crossings
        n_plus, n_minus = D.n_plus, D.n_minus
        self.n_plus, self.n_minus = n_plus, n_minus
        nstates = cube.n_states
        L = np.array([cube.loop_count(s) for s in range(nstates)], dtype=np.int64)
        self.loops = L
        sizes = np.left_shift(1, L)
        self.offset = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
        total = int(self.offset[-1])
        self.size = total
        r = np.array([_popcount(s) for s in range(nstates)], dtype=np.int64)
        state_of = np.repeat(np.arange(nstates, dtype=np.int64), sizes)
        mask = np.arange(total, dtype=np.int64) - self.offset[state_of]
        minus = _bitcount(mask)
        self.state_of = state_of
        self.mask = mask
        self.i = r[state_of] - n_minus
        self.j = (L[state_of] - 2 * minus) + r[state_of] + n_plus - 2 * n_minus
        dr, dc, dv = [], [], []
        pr, pc, pv = [], [], []
        for s in range(nstates):
            Ls = int(L[s])
            M = np.arange(1 << Ls, dtype=np.int64)
            src = self.offset[s] + M
            for x in range(c):
                if (s >> x) & 1:
                    continue
                t, sign, kind, inv_s, inv_t, perm = cube.edge_data(s, x)
                base = np.zeros_like(M)
                for l, m in perm.items():
                    base |= ((M >> l) & 1) << m
                tgt0 = self.offset[t] + base
                if kind == "merge":
                    l1, l2 = inv_s
                    (lt,) = inv_t
                    x1 = (M >> l1) & 1
                    x2 = (M >> l2) & 1
                    both = (x1 & x2).astype(bool)
                    keep = ~both
                    dr.append(tgt0[keep] + ((x1 | x2)[keep] << lt))
                    dc.append(src[keep])
                    dv.append(np.full(int(keep.sum()), sign, dtype=np.int64))
                    if lee and both.any():
                        pr.append(tgt0[both])
                        pc.append(src[both])
                        pv.append(np.full(int(both.sum()), sign, dtype=np.int64))
                else:
                    (l,) = inv_s
                    t1, t2 = inv_t
                    xb = ((M >> l) & 1).astype(bool)
                    one = ~xb
                    # 1 -> 1(x)x + x(x)1
                    dr.append(tgt0[one] + (1 << t2))
                    dc.append(src[one])
                    dv.append(np.full(int(one.sum()), sign, dtype=np.int64))
                    dr.append(tgt0[one] + (1 << t1))
                    dc.append(src[one])
                    dv.append(np.full(int(one.sum()), sign, dtype=np.int64))
                    # x -> x(x)x
                    dr.append(tgt0[xb] + (1 << t1) + (1 << t2))
                    dc.append(src[xb])
                    dv.append(np.full(int(xb.sum()), sign, dtype=np.int64))
                    if lee and xb.any():
                        pr.append(tgt0[xb])
                        pc.append(src[xb])
                        pv.append(np.full(int(xb.sum()), sign, dtype=np.int64))
        empty = np.zeros(0, dtype=np.int64)
        self.d = tuple(np.concatenate(a) if a else empty for a in (dr, dc, dv))
        self.phi = tuple(np.concatenate(a) if a else empty for a in (pr, pc, pv))

    def enhanced_state(self, g: int) -> EnhancedState:
        s = int(self.state_of[g])
        m = int(self.mask[g])
        L = int(self.loops[s])
        labels = tuple("-" if (m >> l) & 1 else "+" for l in range(L))
        return EnhancedState(self.cube.state(s), labels, int(self.i[g]), int(self.j[g]))

    def index(self, state: int, mask: int) -> int:
        return int(self.offset[state]) + mask

    def _blocks(self, keys: np.ndarray):
        """Local indices within groups of equal key; groups in sorted key order."""
        order = np.lexsort(keys.T[::-1]) if keys.ndim == 2 else np.argsort(keys, kind="stable")
        local = np.empty(self.size, dtype=np.int64)
        groups: dict[tuple, np.ndarray] = {}
        if self.size == 0:
            return local, groups
        k_sorted = keys[order]
        if keys.ndim == 1:
            k_sorted = k_sorted[:, None]
        change = np.ones(len(order), dtype=bool)
        change[1:] = np.any(k_sorted[1:] != k_sorted[:-1], axis=1)
        starts = np.nonzero(change)[0]
        ends = np.append(starts[1:], len(order))
        for a, b in zip(starts.tolist(), ends.tolist()):
            idx = order[a:b]
            local[idx] = np.arange(b - a)
            groups[tuple(int(v) for v in k_sorted[a])] = idx
        return local, groups

    def complex_by(self, keys: np.ndarray, triplets, step) -> tuple[GradedChainComplex, dict]:
        """Split a global map into blocks keyed by ``keys`` (must be compatible)."""
        local, groups = self._blocks(keys)
        ranks = {k: len(v) for k, v in groups.items()}
        r, c, v = triplets
        kk = keys if keys.ndim == 2 else keys[:, None]
        src_keys = kk[c]
        diffs = {}
        if c.size:
            order = np.lexsort(src_keys.T[::-1])
            sk = src_keys[order]
            change = np.ones(len(order), dtype=bool)
            change[1:] = np.any(sk[1:] != sk[:-1], axis=1)
            starts = np.nonzero(change)[0]
            ends = np.append(starts[1:], len(order))
            for a, b in zip(starts.tolist(), ends.tolist()):
                idx = order[a:b]
                key = tuple(int(x) for x in sk[a])
                tgt = tuple(x + y for x, y in zip(key, step))
                tk = kk[r[idx]]
                if np.any(tk != np.array(tgt)):
                    raise AssertionError("map does not respect the declared grading step")
                diffs[key] = IntegerMatrix.from_coo(ranks.get(tgt, 0), ranks[key], local[r[idx]], local[c[idx]], v[idx])
        return GradedChainComplex(ranks, diffs, step), groups


def _bitcount(a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    a = a.copy()
    while np.any(a):
        out += a & 1
        a >>= 1
    return out


@dataclass(frozen=True)
class KhovanovComplex:
    """Khovanov complex keyed by ``(i, j)``; ``basis[(i, j)]`` lists global state indices."""

    diagram: PDCode
    complex: GradedChainComplex
    basis: dict
    enhanced: EnhancedBasis

    @property
    def ranks(self) -> dict:
        return self.complex.ranks

    def enhanced_states(self, key) -> list[EnhancedState]:
        return [self.enhanced.enhanced_state(int(g)) for g in self.basis.get(tuple(key), ())]


def khovanov_complex(D: Diagram, budget: int | None = None, check: bool = True) -> KhovanovComplex:
    D = _as_planar_pd(D)
    check_budget(D.n_crossings, "homology", budget)
    E = EnhancedBasis(D)
    keys = np.stack([E.i, E.j], axis=1) if E.size else np.zeros((0, 2), dtype=np.int64)
    C, groups = E.complex_by(keys, E.d, (1, 0))
    if check:
        C.check_d_squared()
    return KhovanovComplex(D, C, groups, E)


def khovanov_homology(D: Diagram, coefficients: str = "Z", threads: int = 1, budget: int | None = None) -> HomologyTable:
    K = khovanov_complex(D, budget=budget)
    return homology(K.complex, coefficients, threads=threads, check=False)


def jones_from_euler(T) -> LaurentPolynomial:
    """Graded Euler characteristic of an ``(i, j)``-graded table or complex."""
    if isinstance(T, KhovanovComplex):
        ranks = T.complex.ranks
    elif isinstance(T, GradedChainComplex):
        ranks = T.ranks
    elif isinstance(T, HomologyTable):
        ranks = T.ranks()
    else:
        ranks = dict(T)
    out: dict[int, int] = {}
    for (i, j), r in ranks.items():
        out[j] = out.get(j, 0) + (-1) ** (i % 2) * r
    return LaurentPolynomial(out)


def bracket_state_sum(loop_counts, n_crossings: int) -> LaurentPolynomial:
    """``sum_s (-q)^r (q + 1/q)^loops`` from per-state loop counts."""
    hist: dict[tuple[int, int], int] = {}
    for s, L in enumerate(loop_counts):
        key = (_popcount(s), int(L))
        hist[key] = hist.get(key, 0) + 1
    qq = LaurentPolynomial({1: 1, -1: 1})
    powers: dict[int, LaurentPolynomial] = {}
    total = LaurentPolynomial()
    for (r, L), n in sorted(hist.items()):
        if L not in powers:
            powers[L] = qq ** L
        total = total + LaurentPolynomial({r: (-1) ** r * n}) * powers[L]
    return total


def kauffman_bracket_jones(G: Diagram, budget: int | None = None) -> LaurentPolynomial:
    """Unreduced Jones polynomial by the state sum (planarity not required)."""
    D = G.to_abstract_pd() if isinstance(G, GaussPhrase) else G
    check_budget(D.n_crossings, "bracket", budget)
    counts = all_loop_counts(D)
    bracket = bracket_state_sum(counts, D.n_crossings)
    n_plus, n_minus = D.n_plus, D.n_minus
    return LaurentPolynomial({n_plus - 2 * n_minus: (-1) ** n_minus}) * bracket
