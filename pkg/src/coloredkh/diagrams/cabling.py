"""Framing normalization and blackboard cabling."""
from __future__ import annotations

from typing import Sequence

from ..errors import ValidationError
from .pd import PDCode


def normalize_framing(D: PDCode) -> PDCode:
    """Insert Reidemeister-I kinks until every component has self-writhe 0.

    The kinks for component ``i`` are placed consecutively right after the
    component's first arc.
    """
    crossings = [list(x) for x in D.crossings]
    signs = list(D.signs)
    next_label = max(D.arcs, default=0) + 1
    for i, comp in enumerate(D.components):
        if not comp:
            continue
        w = D.self_writhe(i)
        if w == 0:
            continue
        kink_sign = -1 if w > 0 else 1
        first = comp[0]
        hx, hp = D.head(first)
        cur = first
        for _ in range(abs(w)):
            loop, out = next_label, next_label + 1
            next_label += 2
            if kink_sign < 0:
                crossings.append([cur, loop, loop, out])
            else:
                crossings.append([cur, out, loop, loop])
            signs.append(kink_sign)
            cur = out
        crossings[hx][hp] = cur
    return PDCode(tuple(tuple(x) for x in crossings), tuple(signs), D.free_loops)


class _Labels:
    def __init__(self):
        self.ids: dict = {}
        self.strand: dict[int, tuple[int, int]] = {}
        self.parent: dict[int, int] = {}

    def get(self, key, strand) -> int:
        if key not in self.ids:
            n = len(self.ids) + 1
            self.ids[key] = n
            self.strand[n] = strand
            self.parent[n] = n
        return self.ids[key]

    def find(self, n: int) -> int:
        while self.parent[n] != n:
            self.parent[n] = self.parent[self.parent[n]]
            n = self.parent[n]
        return n

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def cable_strands(D: PDCode, m: Sequence[int]) -> tuple[PDCode, list[tuple[int, int]]]:
    """Blackboard ``m``-cable of ``D`` with all strands parallel to the original.

    Strand ``t`` (0-based) of component ``i`` is pushed ``t`` steps to the left
    of the component's direction.  Returns the cable and, for each of its
    components, the pair ``(i, t)`` it came from.
    """
    m = tuple(int(v) for v in m)
    if len(m) != D.n_components:
        raise ValidationError(f"cable vector has length {len(m)}, diagram has {D.n_components} components")
    if any(v < 0 for v in m):
        raise ValidationError("cable multiplicities must be nonnegative")
    labels = _Labels()
    crossings: list[tuple[int, int, int, int]] = []
    signs: list[int] = []

    def arc_copy(arc, t):
        return labels.get(("arc", arc, t), (D.arc_component[arc], t))

    for x, ((a, b, c, d), s) in enumerate(zip(D.crossings, D.signs)):
        i, j = D.crossing_components(x)
        mi, mj = m[i], m[j]
        if mi == 0 and mj == 0:
            continue
        if mi == 0:
            for v in range(mj):
                labels.union(arc_copy(d, v), arc_copy(b, v))
            continue
        if mj == 0:
            for u in range(mi):
                labels.union(arc_copy(a, u), arc_copy(c, u))
            continue
        # vertical copy u (under strand) segments, south -> north
        vert = []
        for u in range(mi):
            segs = [arc_copy(a, u)]
            segs += [labels.get(("v", x, u, k), (i, u)) for k in range(1, mj)]
            segs.append(arc_copy(c, u))
            vert.append(segs)
        # horizontal copy v (over strand) segments, west -> east
        horiz = []
        for v in range(mj):
            segs = [arc_copy(d, v)]
            segs += [labels.get(("h", x, v, k), (j, v)) for k in range(1, mi)]
            segs.append(arc_copy(b, v))
            horiz.append(segs)
        for u in range(mi):
            ix = mi - 1 - u
            for v in range(mj):
                iy = v if s > 0 else mj - 1 - v
                crossings.append((vert[u][iy], horiz[v][ix + 1], vert[u][iy + 1], horiz[v][ix]))
                signs.append(s)

    final = [tuple(labels.find(v) for v in tup) for tup in crossings]
    used = {v for tup in final for v in tup}
    # strands whose crossings all vanished become free loops
    free: list[tuple[int, int]] = []
    for i, comp in enumerate(D.components):
        if m[i] == 0:
            continue
        for t in range(m[i]):
            if not comp or labels.find(arc_copy(comp[0], t)) not in used:
                free.append((i, t))
    out = PDCode(tuple(final), tuple(signs), len(free))
    strands = [labels.strand[c[0]] for c in out.components if c] + free
    return out, strands


def cable(D: PDCode, m: Sequence[int]) -> PDCode:
    return cable_strands(D, m)[0]


def alternating_reversals(strands: list[tuple[int, int]], base_orientation: Sequence[int]) -> list[int]:
    """Components of a cable that must be reversed for the alternating rule."""
    rev = []
    for k, (i, t) in enumerate(strands):
        direction = base_orientation[i] * (-1) ** t
        if direction < 0:
            rev.append(k)
    return rev


def orient_cable(D: PDCode, m: Sequence[int], base_orientation: Sequence[int] | None = None) -> PDCode:
    """Cable ``D`` and orient strands original, opposite, original, ... outward.

    ``base_orientation`` gives +1 (keep) or -1 (reverse) per component of ``D``.
    """
    if base_orientation is None:
        base_orientation = (1,) * D.n_components
    if len(base_orientation) != D.n_components:
        raise ValidationError("one orientation sign per component is required")
    C, strands = cable_strands(D, m)
    return C.reorient(alternating_reversals(strands, base_orientation))


def strand_orientations(D: PDCode, m: Sequence[int], base_orientation: Sequence[int] | None = None):
    """The ``(component, strand, direction)`` triples ``orient_cable`` produces."""
    if base_orientation is None:
        base_orientation = (1,) * D.n_components
    _, strands = cable_strands(D, m)
    return [(i, t, base_orientation[i] * (-1) ** t) for i, t in strands]
