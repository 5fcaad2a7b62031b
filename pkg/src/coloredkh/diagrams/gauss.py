"""Signed Gauss phrases and their realizability.

Text format (one phrase per file)::

    # optional comments
    A:+O B:-U
    AB|BA

Header lines hold ``LETTER:<sign><pass>`` tokens, where ``<sign>`` is ``+``
or ``-`` and ``<pass>`` is ``O`` when the first occurrence of the letter is
the over-pass and ``U`` when it is the under-pass.  The single body line lists
the component words separated by ``|``.  A word is read character by
character unless it contains spaces, in which case it is split on whitespace
(use this for multi-character letters).  ``()`` or an empty slot denotes a
crossingless component.  A file without a body line is the empty phrase.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from ..errors import NotRealizable, ValidationError
from .pd import PDCode

_TOKEN = re.compile(r"^(\S+):([+-])([OU])$")


@dataclass(frozen=True)
class GaussPhrase:
    words: tuple[tuple[str, ...], ...]
    signs: tuple[tuple[str, int], ...]
    over_first: tuple[tuple[str, bool], ...]

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(tuple(w) for w in self.words))
        object.__setattr__(self, "signs", tuple(sorted(dict(self.signs).items())))
        object.__setattr__(self, "over_first", tuple(sorted(dict(self.over_first).items())))
        counts: dict[str, int] = {}
        for w in self.words:
            for letter in w:
                counts[letter] = counts.get(letter, 0) + 1
        bad = [k for k, v in counts.items() if v != 2]
        if bad:
            raise ValidationError(f"letters {sorted(bad)} do not occur exactly twice")
        signs, over = dict(self.signs), dict(self.over_first)
        if set(signs) != set(counts) or set(over) != set(counts):
            raise ValidationError("every letter needs a sign and a pass annotation")
        if any(s not in (1, -1) for s in signs.values()):
            raise ValidationError("letter signs must be +1 or -1")

    @classmethod
    def build(cls, words, signs: dict, over_first: dict) -> "GaussPhrase":
        return cls(tuple(tuple(w) for w in words), tuple(signs.items()), tuple(over_first.items()))

    @property
    def sign(self) -> dict[str, int]:
        return dict(self.signs)

    @property
    def over(self) -> dict[str, bool]:
        return dict(self.over_first)

    @property
    def letters(self) -> list[str]:
        """Letters in order of first appearance."""
        seen: dict[str, None] = {}
        for w in self.words:
            for letter in w:
                seen.setdefault(letter, None)
        return list(seen)

    def canonical(self) -> "GaussPhrase":
        """Rename letters ``X0, X1, ...`` by first appearance."""
        ren = {a: f"X{i}" for i, a in enumerate(self.letters)}
        return GaussPhrase.build(
            [[ren[a] for a in w] for w in self.words],
            {ren[a]: s for a, s in self.signs},
            {ren[a]: o for a, o in self.over_first},
        )

    def to_abstract_pd(self) -> PDCode:
        """PD tuples from the local crossing data; planar only if realizable."""
        letters = self.letters
        index = {a: i for i, a in enumerate(letters)}
        sign, over = self.sign, self.over
        slots: list[list[int | None]] = [[None] * 4 for _ in letters]
        seen: set[str] = set()
        label = 0
        free = 0
        for w in self.words:
            if not w:
                free += 1
                continue
            m = len(w)
            first_label = label + 1
            for k, letter in enumerate(w):
                arc_in = first_label + (k - 1) % m
                arc_out = first_label + k
                is_first = letter not in seen
                seen.add(letter)
                passes_over = over[letter] == is_first
                x = index[letter]
                if not passes_over:
                    slots[x][0], slots[x][2] = arc_in, arc_out
                elif sign[letter] > 0:
                    slots[x][3], slots[x][1] = arc_in, arc_out
                else:
                    slots[x][1], slots[x][3] = arc_in, arc_out
            label += m
        return PDCode(
            tuple(tuple(s) for s in slots),
            tuple(sign[a] for a in letters),
            free,
        )

    @cached_property
    def realizable(self) -> bool:
        return realizable(self)

    def dumps(self) -> str:
        sign, over = self.sign, self.over
        header = " ".join(
            f"{a}:{'+' if sign[a] > 0 else '-'}{'O' if over[a] else 'U'}" for a in self.letters
        )
        multi = any(len(a) > 1 for a in self.letters)
        body = "|".join(
            (" ".join(w) if multi else "".join(w)) if w else "()" for w in self.words
        )
        lines = [header] if header else []
        if self.words:
            lines.append(body)
        return "\n".join(lines) + "\n"


def parse_gauss(text: str | bytes) -> GaussPhrase:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    signs: dict[str, int] = {}
    over: dict[str, bool] = {}
    body = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if all(_TOKEN.match(t) for t in tokens):
            for t in tokens:
                letter, s, p = _TOKEN.match(t).groups()
                signs[letter] = 1 if s == "+" else -1
                over[letter] = p == "O"
            continue
        if body is not None:
            raise ValidationError("a Gauss phrase has exactly one body line")
        body = line
    words: list[tuple[str, ...]] = []
    if body is not None:
        for piece in body.split("|"):
            piece = piece.strip()
            if piece in ("", "()"):
                words.append(())
            elif " " in piece:
                words.append(tuple(piece.split()))
            else:
                words.append(tuple(piece))
    return GaussPhrase.build(words, signs, over)


def face_cycles(D: PDCode) -> list[list[tuple[int, int]]]:
    """Boundary cycles of the ribbon surface of ``D`` as lists of corners.

    Corner ``(x, p)`` sits between positions ``p`` and ``p + 1`` of crossing
    ``x``; leaving along position ``p + 1`` and arriving at ``(y, q)`` the
    same face continues at corner ``(y, q)``.
    """
    seen: set[tuple[int, int]] = set()
    cycles = []
    for x in range(D.n_crossings):
        for p in range(4):
            if (x, p) in seen:
                continue
            cyc = []
            cur = (x, p)
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                cx, cp = cur
                here = (cx, (cp + 1) % 4)
                s1, s2 = D.slots[D.crossings[cx][here[1]]]
                cur = s2 if s1 == here else s1
            cycles.append(cyc)
    return cycles


def _pieces(D: PDCode) -> list[list[int]]:
    parent = list(range(D.n_crossings))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (x, _), (y, _) in D.slots.values():
        parent[find(x)] = find(y)
    groups: dict[int, list[int]] = {}
    for x in range(D.n_crossings):
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


def euler_characteristics(D: PDCode) -> list[int]:
    """Euler characteristic of the Carter surface of each connected piece."""
    pieces = _pieces(D)
    owner = {x: k for k, piece in enumerate(pieces) for x in piece}
    nfaces = [0] * len(pieces)
    for cyc in face_cycles(D):
        nfaces[owner[cyc[0][0]]] += 1
    # V - E + F with E = 2V for 4-valent graphs
    return [nfaces[k] - len(piece) for k, piece in enumerate(pieces)]


def is_planar(D: PDCode) -> bool:
    return all(chi == 2 for chi in euler_characteristics(D))


def realizable(G: GaussPhrase) -> bool:
    """True iff the signed phrase is drawn on a union of spheres."""
    return is_planar(G.to_abstract_pd())


def gauss_to_pd(G: GaussPhrase) -> PDCode:
    D = G.to_abstract_pd()
    if not is_planar(D):
        raise NotRealizable("Gauss phrase is not realizable by a planar diagram")
    return D


def pd_to_gauss(D: PDCode) -> GaussPhrase:
    """Read a phrase off a diagram, one word per component.

    Crossing ``x`` becomes letter ``X<x>`` (or a single capital when there are
    at most 26 crossings).
    """
    names = (
        [chr(ord("A") + x) for x in range(D.n_crossings)]
        if D.n_crossings <= 26
        else [f"X{x}" for x in range(D.n_crossings)]
    )
    words = []
    first_pass: dict[str, bool] = {}
    for comp in D.components:
        word = []
        for arc in comp:
            x, p = D.head(arc)
            letter = names[x]
            if letter not in first_pass:
                first_pass[letter] = p != 0
            word.append(letter)
        words.append(tuple(word))
    signs = {names[x]: s for x, s in enumerate(D.signs)}
    return GaussPhrase.build(words, signs, first_pass)
