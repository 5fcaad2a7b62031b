"""Colored Jones polynomials from cables and the colored bicomplex.

For a color vector ``n`` the colored Jones polynomial is the alternating sum
over ``0 <= k <= n/2`` of ``prod_i C(n_i - k_i, k_i)`` times the Jones
polynomial of the alternately oriented cable ``D^(n - 2k)``.  The colored
bicomplex places ``C(n-k, k)`` copies of the Khovanov complex of that cable
at horizontal degree ``|k|``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

import numpy as np

from .algebra.matrix import IntegerMatrix
from .algebra.spectral import Bicomplex, SpectralPage, bicomplex_pages, signed_rank_sum, spectral_pages
from .diagrams.cabling import normalize_framing, orient_cable
from .diagrams.pd import PDCode
from .errors import ValidationError
from .khovanov import KhovanovComplex, _as_planar_pd, kauffman_bracket_jones, khovanov_complex
from .lee import color_range, lee_complex
from .limits import check_budget
from .polynomial import LaurentPolynomial

FRAMINGS = ("zero", "blackboard")


def validate_color(D: PDCode, n: Sequence[int]) -> tuple[int, ...]:
    try:
        n = tuple(int(v) for v in n)
    except (TypeError, ValueError):
        raise ValidationError("color vector must contain integers") from None
    if len(n) != D.n_components:
        raise ValidationError(f"color vector has length {len(n)}, diagram has {D.n_components} components")
    if any(v < 0 for v in n):
        raise ValidationError("colors must be nonnegative")
    return n


def binom_product(n: Sequence[int], k: Sequence[int]) -> int:
    """``prod_i C(n_i - k_i, k_i)`` for ``0 <= k_i <= n_i / 2``."""
    if len(n) != len(k):
        raise ValidationError("n and k must have the same length")
    out = 1
    for a, b in zip(n, k):
        if b < 0 or 2 * b > a:
            raise ValidationError(f"k = {b} outside 0..{a // 2}")
        out *= comb(a - b, b)
    return out


def _base(D, framing: str) -> PDCode:
    if framing not in FRAMINGS:
        raise ValidationError(f"framing must be one of {FRAMINGS}")
    return normalize_framing(D) if framing == "zero" else D


def cable_crossings(D: PDCode, m: Sequence[int]) -> int:
    return sum(m[i] * m[j] for i, j in (D.crossing_components(x) for x in range(D.n_crossings)))


def colored_jones(D, n: Sequence[int], framing: str = "zero", budget: int | None = None,
                  orientation: Sequence[int] | None = None) -> LaurentPolynomial:
    """Colored Jones polynomial via the cabling formula (bracket state sums)."""
    from .diagrams.gauss import GaussPhrase

    if isinstance(D, GaussPhrase):
        D = D.to_abstract_pd()
    n = validate_color(D, n)
    N = _base(D, framing)
    for k in color_range(n):
        m = tuple(a - 2 * b for a, b in zip(n, k))
        check_budget(cable_crossings(N, m), "bracket", budget)
    total = LaurentPolynomial()
    for k in color_range(n):
        m = tuple(a - 2 * b for a, b in zip(n, k))
        C = orient_cable(N, m, orientation)
        J = kauffman_bracket_jones(C, budget=budget)
        total = total + LaurentPolynomial({0: (-1) ** sum(k) * binom_product(n, k)}) * J
    return total


# A horizontal-differential provider receives the source and target summands
# ((k vector, copy index), (k vector, copy index)), the bidegree (i, j) and the
# two block ranks, and returns an IntegerMatrix (or None for a zero block).
DPrimeProvider = Callable[[tuple, tuple, int, int, int, int], "IntegerMatrix | None"]


@dataclass
class Summand:
    k: tuple[int, ...]
    copy: int
    cable: PDCode
    complex: KhovanovComplex

    @property
    def level(self) -> int:
        return sum(self.k)


@dataclass
class ColoredBicomplex:
    diagram: PDCode
    n: tuple[int, ...]
    framing: str
    summands: list[Summand]
    bicomplex: Bicomplex
    offsets: dict = field(default_factory=dict)  # (summand index, i, j) -> row offset in block (k, i, j)

    def summand_count(self, k: Sequence[int]) -> int:
        return sum(1 for s in self.summands if s.k == tuple(k))

    def levels(self) -> list[int]:
        return sorted({s.level for s in self.summands})


def assemble_colored_bicomplex(D, n: Sequence[int], dprime: DPrimeProvider | None = None,
                               framing: str = "zero", budget: int | None = None,
                               check: bool = True) -> ColoredBicomplex:
    D = _as_planar_pd(D)
    n = validate_color(D, n)
    N = _base(D, framing)
    cache: dict[tuple, KhovanovComplex] = {}
    summands: list[Summand] = []
    for k in color_range(n):
        m = tuple(a - 2 * b for a, b in zip(n, k))
        check_budget(cable_crossings(N, m), "homology", budget)
        if m not in cache:
            C = orient_cable(N, m)
            cache[m] = khovanov_complex(C, budget=budget, check=check)
        K = cache[m]
        for s in range(binom_product(n, k)):
            summands.append(Summand(k, s, K.diagram, K))
    ranks: dict[tuple, int] = {}
    offsets: dict[tuple, int] = {}
    for idx, sm in enumerate(summands):
        for (i, j), r in sm.complex.ranks.items():
            key = (sm.level, i, j)
            offsets[(idx, i, j)] = ranks.get(key, 0)
            ranks[key] = ranks.get(key, 0) + r
    # vertical differential: block diagonal over summands
    trip: dict[tuple, list] = {}
    for idx, sm in enumerate(summands):
        for (i, j), M in sm.complex.complex.differentials.items():
            r, c, v = M.triplets()
            key = (sm.level, i, j)
            entry = trip.setdefault(key, [[], [], []])
            entry[0].append(r + offsets[(idx, i + 1, j)])
            entry[1].append(c + offsets[(idx, i, j)])
            entry[2].append(v)
    ddprime = {}
    for key, (rs, cs, vs) in trip.items():
        k, i, j = key
        ddprime[key] = IntegerMatrix.from_coo(ranks.get((k, i + 1, j), 0), ranks[key],
                                              np.concatenate(rs), np.concatenate(cs), np.concatenate(vs))
    dp = {}
    if dprime is not None:
        dtrip: dict[tuple, list] = {}
        for a, sa in enumerate(summands):
            for b, sb in enumerate(summands):
                if sb.level != sa.level + 1:
                    continue
                for (i, j), ra in sa.complex.ranks.items():
                    rb = sb.complex.ranks.get((i, j), 0)
                    if not rb:
                        continue
                    M = dprime((sa.k, sa.copy), (sb.k, sb.copy), i, j, ra, rb)
                    if M is None:
                        continue
                    if M.shape != (rb, ra):
                        raise ValidationError(f"d' block has shape {M.shape}, expected {(rb, ra)}")
                    r, c, v = M.triplets()
                    key = (sa.level, i, j)
                    entry = dtrip.setdefault(key, [[], [], []])
                    entry[0].append(r + offsets[(b, i, j)])
                    entry[1].append(c + offsets[(a, i, j)])
                    entry[2].append(v)
        for key, (rs, cs, vs) in dtrip.items():
            k, i, j = key
            dp[key] = IntegerMatrix.from_coo(ranks[(k + 1, i, j)], ranks[key],
                                             np.concatenate(rs), np.concatenate(cs), np.concatenate(vs))
    B = Bicomplex(ranks, dp, ddprime)
    if check:
        B.check()
    return ColoredBicomplex(D, n, framing, summands, B, offsets)


@dataclass
class ThreeSequences:
    row_first: list[SpectralPage]
    column_first: list[SpectralPage]
    lee: list[SpectralPage]  # summed over summands, positions (k, i, j)
    lee_by_summand: dict  # (k vector, copy) -> pages with positions (i, j)


def _combine_lee(per_summand: list[tuple[int, list[SpectralPage]]], r_max: int) -> list[SpectralPage]:
    out = []
    for r in range(r_max + 1):
        ranks: dict = {}
        d_ranks: dict = {}
        stable = True
        for level, pages in per_summand:
            P = pages[r]
            stable &= P.stable
            for (i, j), v in P.ranks.items():
                ranks[(level, i, j)] = ranks.get((level, i, j), 0) + v
            for (i, j), v in P.d_ranks.items():
                d_ranks[(level, i, j)] = d_ranks.get((level, i, j), 0) + v
        out.append(SpectralPage(r, ranks, d_ranks, ("k", "i", "j"), ("k", "i"), "j", (0, 1, r), stable))
    return out


def three_sequences(B: ColoredBicomplex, r_max: int, threads: int = 1, check: bool = True) -> ThreeSequences:
    row = bicomplex_pages(B.bicomplex, "row-first", r_max, check=check, threads=threads)
    col = bicomplex_pages(B.bicomplex, "column-first", r_max, check=False, threads=threads)
    cache: dict = {}
    by_summand = {}
    per = []
    for sm in B.summands:
        key = sm.cable
        if key not in cache:
            L = lee_complex(sm.cable, check=check)
            cache[key] = spectral_pages(L.filtered, r_max, axes=("i", "j"), sign_axes=("i",), q_axis="j",
                                        threads=threads)
        by_summand[(sm.k, sm.copy)] = cache[key]
        per.append((sm.level, cache[key]))
    return ThreeSequences(row, col, _combine_lee(per, r_max), by_summand)


# Phi raises q by exactly 4, so d_r vanishes for r < 4 and E_0 .. E_4 all
# carry the Euler characteristic; d_4 cancels pairs of different q-degree.
LEE_EULER_PAGES = 4


@dataclass
class EulerReport:
    n: tuple[int, ...]
    colored_jones: LaurentPolynomial
    sequences: dict  # name -> list of (r, polynomial, equal, compared)

    @property
    def ok(self) -> bool:
        return all(eq for rows in self.sequences.values() for _, _, eq, compared in rows if compared)

    def to_json(self) -> dict:
        return {
            "n": list(self.n),
            "colored_jones": self.colored_jones.to_pairs(),
            "ok": self.ok,
            "sequences": {
                name: [{"r": r, "polynomial": p.to_pairs(), "equal": eq, "compared": cmp}
                       for r, p, eq, cmp in rows]
                for name, rows in self.sequences.items()
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def euler_identity_check(D, n: Sequence[int], r_max: int = 2, framing: str = "zero",
                         dprime: DPrimeProvider | None = None, budget: int | None = None,
                         threads: int = 1) -> EulerReport:
    """Compare the colored Jones polynomial with signed rank sums of every page."""
    D = _as_planar_pd(D)
    n = validate_color(D, n)
    J = colored_jones(D, n, framing=framing, budget=budget)
    B = assemble_colored_bicomplex(D, n, dprime=dprime, framing=framing, budget=budget)
    S = three_sequences(B, r_max, threads=threads)
    seqs = {}
    for name, pages, limit in (("row_first", S.row_first, r_max), ("column_first", S.column_first, r_max),
                               ("lee", S.lee, LEE_EULER_PAGES)):
        rows = []
        for P in pages:
            p = signed_rank_sum(P)
            rows.append((P.r, p, p == J, P.r <= limit))
        seqs[name] = rows
    return EulerReport(n, J, seqs)
