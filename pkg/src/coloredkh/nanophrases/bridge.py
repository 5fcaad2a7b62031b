"""Between alpha_* nanophrases, signed Gauss phrases and link invariants.

A letter labelled ``a+`` or ``b-`` has its over-pass first; ``a-`` and ``b+``
have the under-pass first.  With this choice ``tau_*`` pairs the two
crossings of a second Reidemeister move and ``nu_*`` records the change of
which pass comes first when a basepoint slides through a crossing.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from ..algebra.complexes import HomologyTable
from ..diagrams.gauss import GaussPhrase
from ..errors import NotRealizable, ValidationError
from ..polynomial import LaurentPolynomial
from .data import ALPHA_STAR, ONE, STAR
from .functors import SignProfile, functor_V
from .phrase import Nanophrase


def _split(label: str) -> tuple[str, int]:
    if label not in ALPHA_STAR:
        raise ValidationError(f"{label!r} is not a letter of alpha_*")
    return label[0], 1 if label[1] == "+" else -1


def to_gauss(P: Nanophrase) -> GaussPhrase:
    P.check_alphabet(STAR)
    signs, over = {}, {}
    for a, l in P.proj:
        family, s = _split(l)
        signs[a] = s
        over[a] = (family == "a") == (s > 0)
    return GaussPhrase.build(P.words, signs, over)


def from_gauss(G: GaussPhrase) -> Nanophrase:
    sign, over = G.sign, G.over
    proj = {}
    for a in G.letters:
        family = "a" if over[a] == (sign[a] > 0) else "b"
        proj[a] = family + ("+" if sign[a] > 0 else "-")
    return Nanophrase.build(G.words, proj)


P_MAP = {"a+": "1", "b+": "1", "a-": "-1", "b-": "-1"}


def project_p(P: Nanophrase) -> Nanophrase:
    """The projection alpha_* -> alpha_1 by crossing sign."""
    P.check_alphabet(STAR)
    return Nanophrase.build(P.words, {a: P_MAP[l] for a, l in P.proj})


def lift_one(P: Nanophrase) -> Nanophrase:
    """Section of :func:`project_p` sending ``1`` to ``a+`` and ``-1`` to ``a-``."""
    P.check_alphabet(ONE)
    return Nanophrase.build(P.words, {a: ("a+" if l == "1" else "a-") for a, l in P.proj})


@dataclass
class NanophraseInvariants:
    image: Nanophrase
    gauss: GaussPhrase
    n: tuple[int, ...]
    colored_jones: LaurentPolynomial
    realizable: bool
    khovanov: HomologyTable | None = None

    def to_json(self) -> dict:
        return {
            "image": str(self.image),
            "gauss": self.gauss.dumps().strip(),
            "n": list(self.n),
            "colored_jones": self.colored_jones.to_pairs(),
            "realizable": self.realizable,
            "khovanov": self.khovanov.to_json() if self.khovanov is not None else "not-realizable",
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def nanophrase_invariants(P: Nanophrase, profile: SignProfile | None, n: Sequence[int] | None = None,
                          framing: str = "zero", budget: int | None = None,
                          homology_budget: int | None = None, homology: bool = True) -> NanophraseInvariants:
    """Colored Jones polynomial of the image in alpha_* and, when the image is
    a planar diagram, its Khovanov homology.

    ``profile=None`` treats ``P`` as an alpha_* phrase already.  With
    ``homology=False`` only the polynomial and realizability are computed.
    """
    from ..colored import colored_jones
    from ..khovanov import khovanov_homology

    image = P if profile is None else functor_V(P, profile)
    G = to_gauss(image)
    D = G.to_abstract_pd()
    n = tuple(n) if n is not None else (1,) * len(image.words)
    J = colored_jones(D, n, framing=framing, budget=budget)
    ok = G.realizable
    table = None
    if ok and homology:
        try:
            table = khovanov_homology(D, budget=homology_budget)
        except NotRealizable:
            ok = False
    return NanophraseInvariants(image, G, n, J, ok, table)


MOVE_NAMES = {"H1": "R1", "H1-inverse": "R1", "H2": "R2", "H2-inverse": "R2", "H3": "R3", "H3-inverse": "R3",
              "shift": "basepoint", "shift-inverse": "basepoint"}


def reidemeister_neighbors(D, extra: int = 4) -> list[tuple]:
    """Planar diagrams one classical move away from ``D``.

    Moves are generated on the alpha_* phrase of ``D`` and kept when the
    result is realizable.  Returns ``(move family, phrase move, diagram)``
    triples; ``extra`` bounds the added letter occurrences.
    """
    from ..diagrams.gauss import gauss_to_pd, pd_to_gauss
    from .phrase import neighbors

    P = from_gauss(pd_to_gauss(D))
    out = []
    seen = set()
    for move, c in neighbors(P.canon(), STAR, P.length + extra):
        if c in seen:
            continue
        seen.add(c)
        G = to_gauss(Nanophrase.from_canon(c))
        if G.realizable:
            out.append((MOVE_NAMES[move], move, gauss_to_pd(G)))
    return out
