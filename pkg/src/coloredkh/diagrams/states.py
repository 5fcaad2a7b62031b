"""Kauffman smoothings and loop counting.

Smoothing convention for a crossing ``(a, b, c, d)``: the 0-smoothing joins
``a-b`` and ``c-d``, the 1-smoothing joins ``a-d`` and ``b-c``.  With the PD
convention this makes the 0-smoothing the oriented one at a positive crossing.
The traversal only uses the cyclic order at each crossing, so it works for
abstract (non-planar) diagrams too.
"""
from __future__ import annotations

from dataclasses import dataclass

from .pd import PDCode


def _find(parent: list[int], i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def smoothing_pairs(D: PDCode) -> tuple[list[int], list[tuple[int, int, int, int]], list[tuple[int, int, int, int]]]:
    """Arc order plus, per crossing, the arc-index pairs joined by each smoothing."""
    arcs = list(D.arcs)
    idx = {a: i for i, a in enumerate(arcs)}
    zero, one = [], []
    for a, b, c, d in D.crossings:
        ia, ib, ic, id_ = idx[a], idx[b], idx[c], idx[d]
        zero.append((ia, ib, ic, id_))
        one.append((ia, id_, ib, ic))
    return arcs, zero, one


@dataclass(frozen=True)
class SmoothingState:
    """A smoothing choice with its loops.

    ``loops`` lists the arc sets of the loops that touch crossings, ordered by
    smallest arc label; free loops follow and are counted separately.
    """

    bits: int
    n_crossings: int
    loops: tuple[tuple[int, ...], ...]
    free_loops: int

    @property
    def loop_count(self) -> int:
        return len(self.loops) + self.free_loops

    @property
    def r(self) -> int:
        return bin(self.bits).count("1")

    def bit(self, x: int) -> int:
        return (self.bits >> x) & 1


def _state_bits(state, n: int) -> int:
    if isinstance(state, int):
        return state
    bits = 0
    for x, b in enumerate(state):
        if b:
            bits |= 1 << x
    if len(state) != n:
        raise ValueError("smoothing state must assign one bit per crossing")
    return bits


def resolve(D: PDCode, state) -> SmoothingState:
    """Perform the smoothings in ``state`` (bitmask or bit sequence)."""
    bits = _state_bits(state, D.n_crossings)
    arcs, zero, one = smoothing_pairs(D)
    parent = list(range(len(arcs)))
    for x in range(D.n_crossings):
        p, q, r, s = one[x] if (bits >> x) & 1 else zero[x]
        for u, v in ((p, q), (r, s)):
            ru, rv = _find(parent, u), _find(parent, v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for i, a in enumerate(arcs):
        groups.setdefault(_find(parent, i), []).append(a)
    loops = sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])
    return SmoothingState(bits, D.n_crossings, tuple(loops), D.free_loops)


def count_loops(D, state) -> int:
    """Number of loops after smoothing; accepts a PDCode or a GaussPhrase."""
    from .gauss import GaussPhrase

    if isinstance(D, GaussPhrase):
        D = D.to_abstract_pd()
    bits = _state_bits(state, D.n_crossings)
    arcs, zero, one = smoothing_pairs(D)
    parent = list(range(len(arcs)))
    n = len(arcs)
    for x in range(D.n_crossings):
        p, q, r, s = one[x] if (bits >> x) & 1 else zero[x]
        for u, v in ((p, q), (r, s)):
            ru, rv = _find(parent, u), _find(parent, v)
            if ru != rv:
                parent[ru] = rv
                n -= 1
    return n + D.free_loops


def all_loop_counts(D) -> "list[int]":
    """Loop counts for every state ``0 .. 2^c - 1`` (compiled kernel when available)."""
    from .. import kernels
    from .gauss import GaussPhrase

    if isinstance(D, GaussPhrase):
        D = D.to_abstract_pd()
    arcs, zero, one = smoothing_pairs(D)
    counts = kernels.state_loop_counts(zero, one, len(arcs))
    return [int(c) + D.free_loops for c in counts] if D.free_loops else counts
