"""Filtered complexes, bicomplexes and their spectral sequences over Q.

Pages are computed from a single pivot reduction per degree.  Basis vectors
of each degree are sorted by filtration level (highest first, so every
``F^p`` is a prefix) and the differential is column-reduced.  Each pivot pairs
a source element at level ``a`` with a target element at level ``b >= a``;
the pair survives on pages ``r <= b - a`` and is cancelled by ``d_{b-a}``.
Unpaired elements survive to ``E_infinity``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .. import kernels
from ..errors import InvariantViolation, ValidationError
from ..polynomial import LaurentPolynomial
from .complexes import GradedChainComplex, Key, format_key
from .matrix import IntegerMatrix


@dataclass(frozen=True)
class FilteredComplex:
    """A cochain complex with a decreasing filtration.

    ``levels[key][b]`` is the filtration level of basis vector ``b`` in degree
    ``key``; ``F^p`` is spanned by vectors of level ``>= p``.
    """

    complex: GradedChainComplex
    levels: Mapping[Key, Sequence[int]]

    def __post_init__(self):
        lv = {}
        for k, r in self.complex.ranks.items():
            vals = np.asarray(self.levels.get(k, ()), dtype=np.int64)
            if vals.size != r:
                raise ValidationError(f"degree {format_key(k)} has {r} basis vectors but {vals.size} levels")
            lv[k] = vals
        object.__setattr__(self, "levels", lv)

    def level(self, key: Key) -> np.ndarray:
        return self.levels.get(tuple(key), np.zeros(0, dtype=np.int64))

    def ordering(self, key: Key) -> np.ndarray:
        """Basis permutation putting high levels first."""
        return np.argsort(-self.level(key), kind="stable")

    def check(self) -> None:
        """Reject differentials that strictly lower the filtration level."""
        C = self.complex
        for k, M in C.differentials.items():
            r, c, _ = M.triplets()
            rows = self.level(C.successor(k))[r]
            cols = self.level(k)[c]
            if np.any(rows < cols):
                raise InvariantViolation(f"differential decreases the filtration level at {format_key(k)}")


@dataclass(frozen=True)
class Pairing:
    """Persistence pairs of one differential: source/target levels and lengths."""

    key: Key
    source_levels: np.ndarray
    target_levels: np.ndarray
    lengths: np.ndarray
    source_index: np.ndarray
    target_index: np.ndarray


def _reduce(F: FilteredComplex, key: Key, extra: Sequence | None = None, modulus: int = kernels.DEFAULT_PRIME):
    C = F.complex
    tgt = C.successor(key)
    M = C.d(key)
    src_order = F.ordering(key)
    tgt_order = F.ordering(tgt)
    tpos = np.empty(len(tgt_order), dtype=np.int64)
    tpos[tgt_order] = np.arange(len(tgt_order))
    spos = np.empty(len(src_order), dtype=np.int64)
    spos[src_order] = np.arange(len(src_order))
    r, c, v = M.triplets()
    cols: list[tuple[list[int], list[int]]] = [([], []) for _ in range(M.cols)]
    if r.size:
        pr, pc = tpos[r], spos[c]
        order = np.lexsort((pr, pc))
        pr, pc, pv = pr[order], pc[order], np.asarray(v)[order]
        bounds = np.searchsorted(pc, np.arange(M.cols + 1))
        prl, pvl = pr.tolist(), pv.tolist()
        for j in range(M.cols):
            a, b = bounds[j], bounds[j + 1]
            if a != b:
                cols[j] = (prl[a:b], pvl[a:b])
    if extra is not None:
        for vec in extra:
            vec = np.asarray(vec)
            nz = np.nonzero(vec)[0]
            cols.append((tpos[nz].tolist(), [int(x) for x in vec[nz]]))
    lows = kernels.reduce_columns(cols, M.rows, modulus)
    return lows, src_order, tgt_order


def pairing(F: FilteredComplex, key: Key, modulus: int = kernels.DEFAULT_PRIME) -> Pairing:
    key = tuple(key)
    C = F.complex
    tgt = C.successor(key)
    lows, src_order, tgt_order = _reduce(F, key, modulus=modulus)
    lows = np.asarray(lows, dtype=np.int64)
    js = np.nonzero(lows >= 0)[0]
    s_idx = src_order[js] if js.size else np.zeros(0, dtype=np.int64)
    t_idx = tgt_order[lows[js]] if js.size else np.zeros(0, dtype=np.int64)
    a = F.level(key)[s_idx]
    b = F.level(tgt)[t_idx]
    if np.any(b < a):
        raise InvariantViolation(f"differential decreases the filtration level at {format_key(key)}")
    return Pairing(key, a, b, b - a, s_idx, t_idx)


def filtration_degree(F: FilteredComplex, key: Key, vector, modulus: int = kernels.DEFAULT_PRIME) -> int | None:
    """Largest ``p`` such that the class of the cycle ``vector`` has a representative in ``F^p``.

    ``None`` if the class is zero.
    """
    key = tuple(key)
    C = F.complex
    prev = C.predecessor(key)
    lows, _, tgt_order = _reduce(F, prev, extra=[vector], modulus=modulus)
    low = lows[-1]
    if low < 0:
        return None
    return int(F.level(key)[tgt_order[low]])


@dataclass(frozen=True)
class SpectralPage:
    """Ranks of ``E_r`` at each position plus the ranks of ``d_r`` leaving it.

    ``axes`` names the coordinates of each position.  ``sign_axes`` are the
    coordinates whose sum gives the Euler sign, ``q_axis`` the quantum
    grading (if any).  ``d_shift`` is the shift of ``d_r`` in these
    coordinates.
    """

    r: int
    ranks: Mapping[Key, int]
    d_ranks: Mapping[Key, int]
    axes: tuple[str, ...]
    sign_axes: tuple[str, ...]
    q_axis: str | None = None
    d_shift: Key = ()
    stable: bool = False

    def __post_init__(self):
        object.__setattr__(self, "ranks", {tuple(k): int(v) for k, v in sorted(self.ranks.items()) if v})
        object.__setattr__(self, "d_ranks", {tuple(k): int(v) for k, v in sorted(self.d_ranks.items()) if v})

    def rank(self, **coords) -> int:
        """Sum of ranks over positions matching the named coordinates."""
        idx = {a: i for i, a in enumerate(self.axes)}
        total = 0
        for k, v in self.ranks.items():
            if all(k[idx[a]] == val for a, val in coords.items()):
                total += v
        return total

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def reindexed(self, axes: Sequence[str]) -> dict[Key, int]:
        """Ranks keyed by the requested axis order."""
        idx = [self.axes.index(a) for a in axes]
        out: dict[Key, int] = {}
        for k, v in self.ranks.items():
            nk = tuple(k[i] for i in idx)
            out[nk] = out.get(nk, 0) + v
        return out

    def differential_is_zero(self) -> bool:
        return not self.d_ranks

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "axes": list(self.axes),
            "ranks": {format_key(k): v for k, v in self.ranks.items()},
            "d_ranks": {format_key(k): v for k, v in self.d_ranks.items()},
            "stable": self.stable,
        }


def signed_rank_sum(P: SpectralPage) -> LaurentPolynomial:
    """``sum_j q^j sum (-1)^(sign axes) rank``; a page without a q-axis gives a constant."""
    sidx = [P.axes.index(a) for a in P.sign_axes]
    qidx = P.axes.index(P.q_axis) if P.q_axis is not None else None
    coeffs: dict[int, int] = {}
    for k, v in P.ranks.items():
        e = k[qidx] if qidx is not None else 0
        coeffs[e] = coeffs.get(e, 0) + (-1) ** (sum(k[i] for i in sidx) % 2) * v
    return LaurentPolynomial(coeffs)


@dataclass
class _PagePlan:
    base: dict[Key, int] = field(default_factory=dict)
    # (position, length) -> count for sources and targets of pairs
    src: dict[tuple[Key, int], int] = field(default_factory=dict)
    tgt: dict[tuple[Key, int], int] = field(default_factory=dict)
    max_length: int = -1

    def add(self, table, pos, length, n=1):
        table[(pos, length)] = table.get((pos, length), 0) + n
        self.max_length = max(self.max_length, length)

    def pages(self, r_max: int, axes, sign_axes, q_axis, d_shift) -> list[SpectralPage]:
        out = []
        for r in range(r_max + 1):
            ranks = dict(self.base)
            for table in (self.src, self.tgt):
                for (pos, length), n in table.items():
                    if length < r:
                        ranks[pos] -= n
            d_ranks = {}
            for (pos, length), n in self.src.items():
                if length == r:
                    d_ranks[pos] = d_ranks.get(pos, 0) + n
            out.append(SpectralPage(r, ranks, d_ranks, tuple(axes), tuple(sign_axes), q_axis,
                                    tuple(d_shift(r)), stable=r > self.max_length))
        return out


def _plan(F: FilteredComplex, position: Callable[[Key, int], Key], threads: int = 1) -> _PagePlan:
    F.check()
    plan = _PagePlan()
    C = F.complex
    for k in C.ranks:
        lv = F.level(k)
        vals, counts = np.unique(lv, return_counts=True)
        for p, n in zip(vals.tolist(), counts.tolist()):
            pos = position(k, p)
            plan.base[pos] = plan.base.get(pos, 0) + n
    keys = [k for k in C.differentials]
    if threads > 1 and len(keys) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            pairings = list(pool.map(lambda k: pairing(F, k), keys))
    else:
        pairings = [pairing(F, k) for k in keys]
    for P in pairings:
        tgt = C.successor(P.key)
        for a, b, length in zip(P.source_levels.tolist(), P.target_levels.tolist(), P.lengths.tolist()):
            plan.add(plan.src, position(P.key, a), length)
            plan.add(plan.tgt, position(tgt, b), length)
    return plan


def spectral_pages(F: FilteredComplex, r_max: int, axes: Sequence[str] | None = None,
                   sign_axes: Sequence[str] | None = None, q_axis: str | None = None,
                   threads: int = 1) -> list[SpectralPage]:
    """Pages ``E_0 .. E_{r_max}`` of the filtration spectral sequence.

    Positions are ``key + (p,)``; ``axes`` names them (default ``deg0, ..., p``).
    By default the Euler sign comes from the key coordinates.
    """
    if r_max < 0:
        raise ValidationError("r_max must be nonnegative")
    n = len(F.complex.step)
    if axes is None:
        axes = tuple(f"deg{t}" for t in range(n)) + ("p",)
    if len(axes) != n + 1:
        raise ValidationError(f"expected {n + 1} axis names")
    if sign_axes is None:
        sign_axes = tuple(axes[t] for t in range(n) if F.complex.step[t])
    plan = _plan(F, lambda k, p: tuple(k) + (p,), threads)
    step = F.complex.step

    def shift(r):
        return tuple(step) + (r,)

    return plan.pages(r_max, axes, sign_axes, q_axis, shift)


@dataclass(frozen=True)
class Bicomplex:
    """Free modules at ``(k, i, j)`` with ``d'`` raising ``k`` and ``d''`` raising ``i``.

    ``j`` is an internal grading preserved by both differentials.
    """

    ranks: Mapping[Key, int]
    dprime: Mapping[Key, IntegerMatrix] = field(default_factory=dict)
    ddprime: Mapping[Key, IntegerMatrix] = field(default_factory=dict)

    def __post_init__(self):
        ranks = {tuple(k): int(v) for k, v in self.ranks.items() if int(v) > 0}
        object.__setattr__(self, "ranks", ranks)
        for name, maps, step in (("d'", self.dprime, (1, 0, 0)), ("d''", self.ddprime, (0, 1, 0))):
            for k, M in maps.items():
                tgt = tuple(a + b for a, b in zip(k, step))
                want = (ranks.get(tgt, 0), ranks.get(tuple(k), 0))
                if M.shape != want:
                    raise ValidationError(f"{name} at {format_key(k)} has shape {M.shape}, expected {want}")
        object.__setattr__(self, "dprime", {tuple(k): M for k, M in self.dprime.items() if not M.is_zero()})
        object.__setattr__(self, "ddprime", {tuple(k): M for k, M in self.ddprime.items() if not M.is_zero()})

    def rank(self, key: Key) -> int:
        return self.ranks.get(tuple(key), 0)

    def _map(self, maps, key, step) -> IntegerMatrix:
        M = maps.get(tuple(key))
        if M is None:
            tgt = tuple(a + b for a, b in zip(key, step))
            return IntegerMatrix(self.rank(tgt), self.rank(key))
        return M

    def d1(self, key: Key) -> IntegerMatrix:
        return self._map(self.dprime, key, (1, 0, 0))

    def d2(self, key: Key) -> IntegerMatrix:
        return self._map(self.ddprime, key, (0, 1, 0))

    def check(self) -> None:
        """Verify ``d'^2 = 0``, ``d''^2 = 0`` and ``d'd'' + d''d' = 0``."""
        for k in self.ranks:
            k1 = (k[0] + 1, k[1], k[2])
            k2 = (k[0], k[1] + 1, k[2])
            if k in self.dprime and k1 in self.dprime and not (self.dprime[k1] @ self.dprime[k]).is_zero():
                raise InvariantViolation(f"d'^2 != 0 at {format_key(k)}")
            if k in self.ddprime and k2 in self.ddprime and not (self.ddprime[k2] @ self.ddprime[k]).is_zero():
                raise InvariantViolation(f"d''^2 != 0 at {format_key(k)}")
            if k in self.dprime or k in self.ddprime:
                S = self.d2(k1) @ self.d1(k) + self.d1(k2) @ self.d2(k)
                if not S.is_zero():
                    raise InvariantViolation(f"d'd'' + d''d' != 0 at {format_key(k)}")

    def total_complex(self) -> tuple[GradedChainComplex, dict[Key, list[Key]]]:
        """Total complex keyed by ``(n, j)`` with ``n = k + i``.

        Also returns, per total key, the ``(k, i, j)`` blocks in basis order.
        """
        blocks: dict[Key, list[Key]] = {}
        for k, i, j in sorted(self.ranks):
            blocks.setdefault((k + i, j), []).append((k, i, j))
        offsets: dict[Key, int] = {}
        ranks: dict[Key, int] = {}
        for tk, bl in blocks.items():
            off = 0
            for b in bl:
                offsets[b] = off
                off += self.ranks[b]
            ranks[tk] = off
        diffs = {}
        for tk, bl in blocks.items():
            n, j = tk
            tgt = (n + 1, j)
            if tgt not in ranks:
                continue
            rs, cs, vs = [], [], []
            for b in bl:
                for maps, step in ((self.dprime, (1, 0, 0)), (self.ddprime, (0, 1, 0))):
                    M = maps.get(b)
                    if M is None:
                        continue
                    t = tuple(x + y for x, y in zip(b, step))
                    r, c, v = M.triplets()
                    rs.append(r + offsets[t])
                    cs.append(c + offsets[b])
                    vs.append(v)
            if rs:
                diffs[tk] = IntegerMatrix.from_coo(ranks[tgt], ranks[tk], np.concatenate(rs), np.concatenate(cs), np.concatenate(vs))
        return GradedChainComplex(ranks, diffs, (1, 0)), blocks

    @classmethod
    def from_columns(cls, columns: Mapping[int, GradedChainComplex]) -> "Bicomplex":
        """Direct sum of ``(i, j)``-graded complexes placed at ``k`` with ``d' = 0``."""
        ranks, dd = {}, {}
        for k, C in columns.items():
            for (i, j), r in C.ranks.items():
                ranks[(k, i, j)] = r
            for (i, j), M in C.differentials.items():
                dd[(k, i, j)] = M
        return cls(ranks, {}, dd)


def bicomplex_pages(B: Bicomplex, orientation: str, r_max: int, check: bool = True,
                    threads: int = 1) -> list[SpectralPage]:
    """Spectral sequence of the filtration by ``k`` (row-first) or by ``i`` (column-first).

    Positions are ``(k, i, j)`` in both cases, so the two sequences can be
    compared coordinate by coordinate.  Row-first pages start with ``d''`` as
    ``d_0``; column-first pages start with ``d'``.
    """
    if orientation not in ("row-first", "column-first"):
        raise ValidationError("orientation must be 'row-first' or 'column-first'")
    if check:
        B.check()
    T, blocks = B.total_complex()
    axis = 0 if orientation == "row-first" else 1
    levels = {}
    for tk, bl in blocks.items():
        lv = []
        for b in bl:
            lv.extend([b[axis]] * B.ranks[b])
        levels[tk] = lv
    F = FilteredComplex(T, levels)

    def position(tk, p):
        n, j = tk
        return (p, n - p, j) if axis == 0 else (n - p, p, j)

    plan = _plan(F, position, threads)

    def shift(r):
        return (r, 1 - r, 0) if axis == 0 else (1 - r, r, 0)

    return plan.pages(r_max, ("k", "i", "j"), ("k", "i"), "j", shift)
