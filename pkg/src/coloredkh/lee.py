"""Lee homology, canonical generators and Rasmussen-type invariants.

The Lee complex uses the Khovanov basis with differential ``d + Phi``, where
``Phi`` adds ``m(x(x)x) = 1`` and ``Delta(x) += 1(x)1``.  It is filtered by the
quantum grading ``j`` (decreasing: ``F^p`` is spanned by states with
``j >= p``).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra.spectral import FilteredComplex, filtration_degree, pairing, spectral_pages
from .diagrams.cabling import normalize_framing, orient_cable
from .diagrams.gauss import face_cycles
from .diagrams.pd import PDCode
from .errors import InvariantViolation, MultiComponent, ValidationError
from .khovanov import EnhancedBasis, _as_planar_pd
from .limits import check_budget


@dataclass(frozen=True)
class LeeComplex:
    diagram: PDCode
    filtered: FilteredComplex
    basis: dict  # (i,) -> global enhanced indices in local order
    enhanced: EnhancedBasis

    def local_vector(self, key, coeffs: dict[int, int]) -> np.ndarray:
        """Dense vector in degree ``key`` from ``{global index: coefficient}``."""
        idx = self.basis[tuple(key)]
        pos = {int(g): n for n, g in enumerate(idx)}
        v = np.zeros(len(idx), dtype=np.int64)
        for g, c in coeffs.items():
            v[pos[g]] += c
        return v


def lee_complex(D, budget: int | None = None, check: bool = True) -> LeeComplex:
    D = _as_planar_pd(D)
    check_budget(D.n_crossings, "homology", budget)
    E = EnhancedBasis(D, lee=True)
    if check:
        dj = E.j[E.d[0]] - E.j[E.d[1]]
        pj = E.j[E.phi[0]] - E.j[E.phi[1]]
        if np.any(dj != 0):
            raise InvariantViolation("d does not preserve j")
        if np.any(pj != 4):
            raise InvariantViolation("Phi does not raise j by 4")
    trip = tuple(np.concatenate([a, b]) for a, b in zip(E.d, E.phi))
    keys = E.i.copy()
    C, groups = E.complex_by(keys, trip, (1,))
    if check:
        C.check_d_squared()
        Phi, _ = E.complex_by(keys, E.phi, (1,))
        Phi.check_d_squared()
    levels = {k: E.j[idx] for k, idx in groups.items()}
    return LeeComplex(D, FilteredComplex(C, levels), groups, E)


@dataclass(frozen=True)
class LeeHomology:
    dimension: int
    gradings: tuple[int, ...]  # filtration degrees of a graded basis, ascending
    by_degree: dict  # i -> list of q-gradings

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "q_gradings": list(self.gradings),
            "by_degree": {str(i): g for i, g in sorted(self.by_degree.items())},
        }


def _surviving_levels(L: LeeComplex) -> dict[int, list[int]]:
    F = L.filtered
    C = F.complex
    paired: dict[tuple, set] = {k: set() for k in C.ranks}
    for k in C.differentials:
        P = pairing(F, k)
        paired[k].update(P.source_index.tolist())
        paired.setdefault(C.successor(k), set()).update(P.target_index.tolist())
    out = {}
    for k, r in C.ranks.items():
        keep = np.setdiff1d(np.arange(r), np.fromiter(paired[k], dtype=np.int64, count=len(paired[k])))
        if keep.size:
            out[k[0]] = sorted(F.level(k)[keep].tolist())
    return out


def lee_homology(D, budget: int | None = None) -> LeeHomology:
    """Dimension and q-gradings (associated graded of the filtration) of Lee homology."""
    L = lee_complex(D, budget=budget)
    by_degree = _surviving_levels(L)
    grads = sorted(g for v in by_degree.values() for g in v)
    return LeeHomology(len(grads), tuple(grads), by_degree)


def lee_pages(D, r_max: int = 6, budget: int | None = None):
    L = lee_complex(D, budget=budget)
    return spectral_pages(L.filtered, r_max, axes=("i", "j"), sign_axes=("i",), q_axis="j")


# -- canonical generators ------------------------------------------------

def orientations(n_components: int) -> list[tuple[int, ...]]:
    return [tuple(o) for o in itertools.product((1, -1), repeat=n_components)]


def orientation_label(o: Sequence[int]) -> str:
    return "".join("+" if v > 0 else "-" for v in o)


def _reoriented(D: PDCode, o: Sequence[int] | None) -> PDCode:
    if o is None:
        return D
    if len(o) != D.n_components:
        raise ValidationError(f"orientation needs {D.n_components} entries, got {len(o)}")
    if any(v not in (1, -1) for v in o):
        raise ValidationError("orientation entries must be +1 or -1")
    return D.reorient([i for i, v in enumerate(o) if v < 0])


def oriented_resolution(D: PDCode) -> int:
    """State bits of the oriented (Seifert) smoothing."""
    return sum(1 << x for x, s in enumerate(D.signs) if s < 0)


def seifert_labels(D: PDCode, state: int, loop_of: Sequence[int], n_loops: int) -> list[bool]:
    """``True`` (label a) or ``False`` (label b) per arc loop of the oriented smoothing.

    A circle is labelled ``a`` when its nesting depth plus (0 if it runs
    counterclockwise, else 1) is even.  Regions of the smoothed diagram are
    faces of ``D`` merged across each smoothed crossing; the circles form the
    edges of the region tree.  Infinity is placed in the region of corner
    ``(x, 0)`` of the first crossing of each connected piece.
    """
    corners = [(x, p) for x in range(D.n_crossings) for p in range(4)]
    parent = {c: c for c in corners}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for cyc in face_cycles(D):
        for c in cyc[1:]:
            union(cyc[0], c)
    for x in range(D.n_crossings):
        if (state >> x) & 1:
            union((x, 0), (x, 2))
        else:
            union((x, 1), (x, 3))
    arcs = list(D.arcs)
    # for each loop: (left region, right region) of one of its arcs
    sides: dict[int, tuple] = {}
    for n, a in enumerate(arcs):
        l = loop_of[n]
        if l in sides:
            continue
        x, p = D.tail(a)
        sides[l] = (find((x, p)), find((x, (p - 1) % 4)))
    adj: dict = {}
    for l, (left, right) in sides.items():
        adj.setdefault(left, []).append((l, right))
        adj.setdefault(right, []).append((l, left))
    depth: dict[int, int] = {}
    inner: dict[int, object] = {}
    seen = set()
    for x in range(D.n_crossings):
        root = find((x, 0))
        if root in seen:
            continue
        seen.add(root)
        stack = [(root, 0)]
        while stack:
            region, dist = stack.pop()
            for l, other in adj.get(region, ()):
                if l in depth:
                    continue
                depth[l] = dist
                inner[l] = other
                seen.add(other)
                stack.append((other, dist + 1))
    labels = []
    for l in range(n_loops):
        ccw = sides[l][0] == inner[l]
        labels.append((depth[l] + (0 if ccw else 1)) % 2 == 0)
    return labels


@dataclass(frozen=True)
class CanonicalGenerators:
    """``s_o`` and ``s_obar`` as ``{global enhanced index: coefficient}`` in the complex of the oriented diagram."""

    diagram: PDCode
    orientation: tuple[int, ...]
    state: int
    s_o: dict
    s_obar: dict
    labels: tuple[str, ...]


def _expand(labels_a: Sequence[bool], offset: int) -> dict[int, int]:
    """Tensor product of ``x + 1`` (a) / ``x - 1`` (b) over loops."""
    out = {}
    n = len(labels_a)
    for mask in range(1 << n):
        coeff = 1
        for l in range(n):
            if not (mask >> l) & 1 and not labels_a[l]:
                coeff = -coeff
        out[offset + mask] = coeff
    return out


def canonical_generators(D, o: Sequence[int] | None = None, lee: LeeComplex | None = None) -> CanonicalGenerators:
    """Lee's canonical cycles for orientation ``o`` (``None`` keeps the diagram's own)."""
    D = _as_planar_pd(D)
    Do = _reoriented(D, o)
    L = lee if lee is not None else lee_complex(Do)
    E = L.enhanced
    s = oriented_resolution(Do)
    cube = E.cube
    n_arc_loops = int(cube.arc_loops[s])
    lab = seifert_labels(Do, s, cube.loop_of[s].tolist(), n_arc_loops)
    lab += [True] * Do.free_loops  # unnested, counterclockwise
    off = int(E.offset[s])
    so = _expand(lab, off)
    sob = _expand([not v for v in lab], off)
    gen = CanonicalGenerators(Do, tuple(o) if o is not None else (1,) * D.n_components, s, so, sob,
                              tuple("a" if v else "b" for v in lab))
    _assert_cycle(L, gen)
    return gen


def _assert_cycle(L: LeeComplex, gen: CanonicalGenerators) -> None:
    C = L.filtered.complex
    key = _key_of(L, gen)
    for vec in (gen.s_o, gen.s_obar):
        v = L.local_vector(key, vec)
        M = C.d(key)
        r, c, val = M.triplets()
        out = np.zeros(M.rows, dtype=object)
        np.add.at(out, r, np.asarray(val, dtype=object) * v[c].astype(object))
        if np.any(out != 0):
            raise InvariantViolation("canonical generator is not a (d + Phi)-cycle")


def _key_of(L: LeeComplex, gen: CanonicalGenerators) -> tuple:
    return (int(L.enhanced.i[int(L.enhanced.offset[gen.state])]),)


def generator_degrees(D, o: Sequence[int] | None = None) -> tuple[int, int]:
    """Filtration degrees of ``s_o + s_obar`` and ``s_o - s_obar``."""
    D = _as_planar_pd(D)
    Do = _reoriented(D, o)
    L = lee_complex(Do)
    gen = canonical_generators(Do, None, lee=L)
    key = _key_of(L, gen)
    plus = L.local_vector(key, gen.s_o) + L.local_vector(key, gen.s_obar)
    minus = L.local_vector(key, gen.s_o) - L.local_vector(key, gen.s_obar)
    dp = filtration_degree(L.filtered, key, plus)
    dm = filtration_degree(L.filtered, key, minus)
    if dp is None or dm is None:
        raise InvariantViolation("canonical generator combination vanishes in Lee homology")
    return dp, dm


def _number(x: Fraction):
    return int(x) if x.denominator == 1 else float(x)


def s_link(D, o: Sequence[int] | None = None, convention: str = "mean", budget: int | None = None):
    """Rasmussen invariant of an oriented link from the canonical generators.

    ``convention="mean"`` averages the two filtration degrees;
    ``convention="difference"`` takes half their difference.
    """
    D = _as_planar_pd(D)
    check_budget(D.n_crossings, "homology", budget)
    if D.n_crossings == 0 and D.free_loops == 0:
        return 0
    dp, dm = generator_degrees(D, o)
    if convention == "mean":
        return _number(Fraction(dp + dm, 2))
    if convention == "difference":
        return _number(Fraction(dp - dm, 2))
    raise ValidationError("convention must be 'mean' or 'difference'")


def s_knot(D, budget: int | None = None) -> int:
    """``s_min + 1`` where ``s_min`` is the lowest q-grading in Lee homology."""
    D = _as_planar_pd(D)
    if D.n_components != 1:
        raise MultiComponent(f"s_knot needs a knot diagram, got {D.n_components} components")
    H = lee_homology(D, budget=budget)
    return min(H.gradings) + 1


# -- colored Rasmussen ---------------------------------------------------

def color_range(n: Sequence[int]) -> list[tuple[int, ...]]:
    return [tuple(k) for k in itertools.product(*(range(v // 2 + 1) for v in n))]


@dataclass(frozen=True)
class ColoredRasmussenEntry:
    k: tuple[int, ...]
    orientation: tuple[int, ...]
    s: object
    weighted: object
    empty: bool = False

    def to_json(self) -> dict:
        out = {"k": list(self.k), "orientation": orientation_label(self.orientation),
               "s": self.s, "weighted": self.weighted}
        if self.empty:
            out["empty_cable"] = True
        return out


@dataclass(frozen=True)
class ColoredRasmussen:
    n: tuple[int, ...]
    entries: tuple[ColoredRasmussenEntry, ...] = field(default_factory=tuple)

    def value(self, k, orientation=None):
        for e in self.entries:
            if e.k == tuple(k) and (orientation is None or e.orientation == tuple(orientation)):
                return e.s
        raise KeyError((k, orientation))

    def to_json(self) -> dict:
        return {"n": list(self.n), "entries": [e.to_json() for e in self.entries]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def colored_rasmussen(D, n: Sequence[int], framing: str = "zero", convention: str = "mean",
                      budget: int | None = None, threads: int = 1) -> ColoredRasmussen:
    """``s`` of every alternately oriented cable ``D^(n - 2k)`` for every base orientation.

    ``framing="zero"`` first adds kinks so each component has self-writhe 0;
    ``framing="blackboard"`` cables the diagram as drawn.
    """
    from .colored import binom_product, validate_color

    D = _as_planar_pd(D)
    n = validate_color(D, n)
    if framing not in ("zero", "blackboard"):
        raise ValidationError("framing must be 'zero' or 'blackboard'")
    N = normalize_framing(D) if framing == "zero" else D
    cells = []
    for k in color_range(n):
        m = tuple(a - 2 * b for a, b in zip(n, k))
        for o in orientations(D.n_components):
            cells.append((k, m, o))
    for _, m, _ in cells:
        cross = sum(m[i] * m[j] for i, j in (N.crossing_components(x) for x in range(N.n_crossings)))
        check_budget(cross, "homology", budget)

    def run(cell):
        k, m, o = cell
        if all(v == 0 for v in m):
            return ColoredRasmussenEntry(k, o, 0, 0, empty=True)
        C = orient_cable(N, m, o)
        s = s_link(C, None, convention, budget=budget)
        return ColoredRasmussenEntry(k, o, s, binom_product(n, k) * s)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            entries = list(pool.map(run, cells))
    else:
        entries = [run(c) for c in cells]
    return ColoredRasmussen(n, tuple(entries))
