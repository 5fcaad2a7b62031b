"""Nanophrases, their text format and homotopy moves.

Phrase file format::

    letters: A=a B=b        # projection of every letter to the alphabet
    body: AB|BA             # words separated by "|"; "()" is an empty word

A bare line without a ``key:`` prefix is also accepted as the body.  Words
are read character by character unless they contain spaces.  A file with no
body line is the empty phrase (no words).  Homotopy-data lines (``alphabet``,
``tau``, ``nu``, ``S``) may be included and are then available through
:func:`parse_phrase_with_data`.

The length of a phrase is its total number of letter occurrences.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from ..errors import ValidationError
from .data import HomotopyData, parse_data

# canonical form: words of letter ids numbered by first appearance + label per id
Canon = tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]


def canonicalize(words: Sequence[Sequence], labels: Mapping) -> Canon:
    ren: dict = {}
    out_words = []
    for w in words:
        nw = []
        for a in w:
            if a not in ren:
                ren[a] = len(ren)
            nw.append(ren[a])
        out_words.append(tuple(nw))
    lab = [None] * len(ren)
    for a, k in ren.items():
        lab[k] = labels[a]
    return tuple(out_words), tuple(lab)


@dataclass(frozen=True)
class Nanophrase:
    words: tuple[tuple[str, ...], ...]
    proj: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(tuple(str(a) for a in w) for w in self.words))
        proj = dict(self.proj)
        counts: dict[str, int] = {}
        for w in self.words:
            for a in w:
                counts[a] = counts.get(a, 0) + 1
        bad = sorted(a for a, c in counts.items() if c != 2)
        if bad:
            raise ValidationError(f"letters {bad} do not occur exactly twice")
        missing = sorted(set(counts) - set(proj))
        if missing:
            raise ValidationError(f"letters {missing} have no projection")
        proj = {a: proj[a] for a in counts}
        object.__setattr__(self, "proj", tuple(sorted(proj.items())))

    @classmethod
    def build(cls, words, proj: Mapping[str, str]) -> "Nanophrase":
        return cls(tuple(tuple(w) for w in words), tuple(proj.items()))

    @classmethod
    def from_canon(cls, canon: Canon, prefix: str = "") -> "Nanophrase":
        words, labels = canon
        names = _names(len(labels), prefix)
        return cls.build([[names[a] for a in w] for w in words], {names[k]: l for k, l in enumerate(labels)})

    @property
    def projection(self) -> dict[str, str]:
        return dict(self.proj)

    def label(self, letter: str) -> str:
        return self.projection[letter]

    @property
    def letters(self) -> list[str]:
        seen: dict[str, None] = {}
        for w in self.words:
            for a in w:
                seen.setdefault(a, None)
        return list(seen)

    @property
    def length(self) -> int:
        return sum(len(w) for w in self.words)

    @property
    def n_components(self) -> int:
        return len(self.words)

    def canon(self) -> Canon:
        return canonicalize(self.words, self.projection)

    def canonical(self) -> "Nanophrase":
        return Nanophrase.from_canon(self.canon())

    def isomorphic(self, other: "Nanophrase") -> bool:
        return self.canon() == other.canon()

    def check_alphabet(self, data: HomotopyData) -> None:
        bad = sorted({l for _, l in self.proj if l not in data.tau})
        if bad:
            raise ValidationError(f"projections {bad} are not in the alphabet {list(data.alphabet)}")

    def dumps(self) -> str:
        multi = any(len(a) > 1 for a in self.letters)
        proj = self.projection
        head = "letters: " + " ".join(f"{a}={proj[a]}" for a in self.letters)
        lines = [head.rstrip()]
        if self.words:
            body = "|".join((" ".join(w) if multi else "".join(w)) if w else "()" for w in self.words)
            lines.append(f"body: {body}")
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        if not self.words:
            return "empty"
        proj = self.projection
        body = "|".join("".join(w) if w else "()" for w in self.words)
        return body + " [" + " ".join(f"{a}={proj[a]}" for a in self.letters) + "]"


def _names(n: int, prefix: str = "") -> list[str]:
    if n <= 26 and not prefix:
        return [chr(ord("A") + k) for k in range(n)]
    return [f"{prefix or 'X'}{k}" for k in range(n)]


def _split_body(body: str) -> list[tuple[str, ...]]:
    words = []
    for piece in body.split("|"):
        piece = piece.strip()
        if piece in ("", "()"):
            words.append(())
        elif " " in piece:
            words.append(tuple(piece.split()))
        else:
            words.append(tuple(piece))
    return words


def parse_phrase_with_data(text: str | bytes) -> tuple[Nanophrase, HomotopyData | None]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    proj: dict[str, str] = {}
    body = None
    data_lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if sep and key == "letters":
            for tok in value.split():
                if "=" not in tok:
                    raise ValidationError(f"bad letter annotation {tok!r} (expected LETTER=label)")
                a, l = tok.split("=", 1)
                proj[a] = l
        elif sep and key == "body":
            if body is not None:
                raise ValidationError("a phrase has exactly one body line")
            body = value.strip()
        elif sep and key in ("alphabet", "tau", "nu", "s"):
            data_lines.append(line)
        else:
            if body is not None:
                raise ValidationError("a phrase has exactly one body line")
            body = line
    words = _split_body(body) if body is not None else []
    P = Nanophrase.build(words, proj)
    data = parse_data("\n".join(data_lines)) if data_lines else None
    if data is not None:
        P.check_alphabet(data)
    return P, data


def parse_phrase(text: str | bytes) -> Nanophrase:
    return parse_phrase_with_data(text)[0]


# -- moves on canonical forms ---------------------------------------------

def _positions(words) -> dict[int, list[tuple[int, int, int]]]:
    """letter -> [(flat index, word, position)] for both occurrences."""
    occ: dict[int, list[tuple[int, int, int]]] = {}
    flat = 0
    for w, word in enumerate(words):
        for p, a in enumerate(word):
            occ.setdefault(a, []).append((flat, w, p))
            flat += 1
    return occ


def _after(words, w, p):
    """Letter right after position p in word w (same word), or None."""
    return words[w][p + 1] if p + 1 < len(words[w]) else None


def _delete(words, labels, letters) -> Canon:
    drop = set(letters)
    nw = [[a for a in w if a not in drop] for w in words]
    return canonicalize(nw, dict(enumerate(labels)))


def _swap_pairs(words, labels, sites) -> Canon:
    nw = [list(w) for w in words]
    for w, p in sites:
        nw[w][p], nw[w][p + 1] = nw[w][p + 1], nw[w][p]
    return canonicalize(nw, dict(enumerate(labels)))


def h1_sites(words) -> list[int]:
    out = []
    for w, word in enumerate(words):
        for p in range(len(word) - 1):
            if word[p] == word[p + 1]:
                out.append(word[p])
    return out


def h2_sites(words, labels, data: HomotopyData) -> list[tuple[int, int]]:
    occ = _positions(words)
    out = []
    for A, ((f1, w1, p1), (f2, w2, p2)) in occ.items():
        B = _after(words, w1, p1)
        if B is None or B == A:
            continue
        (g1, v1, q1), (g2, v2, q2) = occ[B]
        if g1 != f1 + 1:
            continue  # B must start its pair right after A's first occurrence
        if _after(words, v2, q2) != A or g2 + 1 != f2:
            continue
        if labels[A] == data.tau[labels[B]]:
            out.append((A, B))
    return out


def h3_sites(words, labels, data: HomotopyData, inverse: bool = False) -> list[tuple[int, int, int, tuple]]:
    """Sites ``(A, B, C, swaps)`` of ``xAByACzBCt`` (or ``xBAyCAzCBt`` when ``inverse``)."""
    occ = _positions(words)
    out = []
    for X, ((f1, w1, p1), (f2, w2, p2)) in occ.items():
        Y = _after(words, w1, p1)
        Z = _after(words, w2, p2)
        if Y is None or Y == X:
            continue
        if not inverse:
            if Z is None or len({X, Y, Z}) < 3:
                continue
            # X = A at both first slots: A B ... A C ... B C
            A, B, C = X, Y, Z
            (b1, bw1, bp1), (b2, bw2, bp2) = occ[B]
            (c1, cw1, cp1), (c2, cw2, cp2) = occ[C]
            if b1 != f1 + 1 or c1 != f2 + 1:
                continue
            if _after(words, bw2, bp2) != C or c2 != b2 + 1 or b2 <= c1:
                continue
            sites = ((w1, p1), (w2, p2), (bw2, bp2))
        else:
            # pattern B A ... C A ... C B: X is B here, Y = A
            B, A = X, Y
            (a1, aw1, ap1), (a2, aw2, ap2) = occ[A]
            if a1 != f1 + 1:
                continue
            # second pair "C A": the letter before A's second occurrence
            if ap2 == 0:
                continue
            C = words[aw2][ap2 - 1]
            if C in (A, B):
                continue
            (c1, cw1, cp1), (c2, cw2, cp2) = occ[C]
            if c1 != a2 - 1 or f2 != c2 + 1 or _after(words, cw2, cp2) != B or c2 <= a2:
                continue
            sites = ((w1, p1), (cw1, cp1), (cw2, cp2))
        if (labels[A], labels[B], labels[C]) in data.S:
            out.append((A, B, C, sites))
    return out


def shift_canon(words, labels, w: int, data: HomotopyData, inverse: bool = False) -> Canon:
    word = words[w]
    if not word:
        raise ValidationError("cannot shift an empty word")
    lab = dict(enumerate(labels))
    if inverse:
        a = word[-1]
        nw = (a,) + tuple(word[:-1])
    else:
        a = word[0]
        nw = tuple(word[1:]) + (a,)
    if word.count(a) == 2:
        lab[a] = data.nu[lab[a]]
    return canonicalize(list(words[:w]) + [nw] + list(words[w + 1:]), lab)


def neighbors(canon: Canon, data: HomotopyData, max_length: int) -> Iterator[tuple[str, Canon]]:
    """Every single-move neighbour (moves and their inverses) within ``max_length``."""
    words, labels = canon
    length = sum(len(w) for w in words)
    for A in h1_sites(words):
        yield "H1", _delete(words, labels, (A,))
    for A, B in h2_sites(words, labels, data):
        yield "H2", _delete(words, labels, (A, B))
    for inverse in (False, True):
        for A, B, C, sites in h3_sites(words, labels, data, inverse):
            yield ("H3-inverse" if inverse else "H3"), _swap_pairs(words, labels, sites)
    for w, word in enumerate(words):
        if word:
            yield "shift", shift_canon(words, labels, w, data)
            yield "shift-inverse", shift_canon(words, labels, w, data, inverse=True)
    n = len(labels)
    lab = dict(enumerate(labels))
    gaps = [(w, p) for w, word in enumerate(words) for p in range(len(word) + 1)]
    if length + 2 <= max_length:
        for w, p in gaps:
            for a in data.alphabet:
                nw = [list(x) for x in words]
                nw[w][p:p] = [n, n]
                yield "H1-inverse", canonicalize(nw, {**lab, n: a})
    if length + 4 <= max_length:
        for gi, (w1, p1) in enumerate(gaps):
            for w2, p2 in gaps[gi:]:
                for a in data.alphabet:
                    b = data.tau[a]
                    nw = [list(x) for x in words]
                    # insert the later pair first so earlier positions stay valid
                    nw[w2][p2:p2] = [n + 1, n]
                    nw[w1][p1:p1] = [n, n + 1]
                    yield "H2-inverse", canonicalize(nw, {**lab, n: a, n + 1: b})


# -- named-letter interface ----------------------------------------------

def _occ_named(P: Nanophrase, letter: str):
    out = []
    flat = 0
    for w, word in enumerate(P.words):
        for p, a in enumerate(word):
            if a == letter:
                out.append((flat, w, p))
            flat += 1
    if len(out) != 2:
        raise ValidationError(f"letter {letter!r} is not in the phrase")
    return out


def _next_named(P: Nanophrase, w: int, p: int):
    return P.words[w][p + 1] if p + 1 < len(P.words[w]) else None


def _fresh(P: Nanophrase, count: int) -> list[str]:
    used = set(P.letters)
    out = []
    k = 0
    while len(out) < count:
        cand = chr(ord("A") + k) if k < 26 else f"X{k}"
        if cand not in used:
            out.append(cand)
            used.add(cand)
        k += 1
    return out


def apply_move(P: Nanophrase, move: str, site, data: HomotopyData) -> Nanophrase:
    """Apply one homotopy move at a named site.

    ``H1``: site ``A``; ``H2``: ``(A, B)``; ``H3`` / ``H3-inverse``:
    ``(A, B, C)``; ``shift`` / ``shift-inverse``: word index;
    ``H1-inverse``: ``(word, position, label)``; ``H2-inverse``:
    ``((word1, pos1), (word2, pos2), label_of_A)``; ``isomorphism``: a
    letter renaming dict.
    """
    P.check_alphabet(data)
    proj = P.projection
    words = [list(w) for w in P.words]
    if move == "H1":
        (f1, w1, p1), (f2, w2, p2) = _occ_named(P, site)
        if w1 != w2 or p2 != p1 + 1:
            raise ValidationError(f"H1 needs the two occurrences of {site} to be adjacent")
        words[w1][p1:p1 + 2] = []
        del proj[site]
        return Nanophrase.build(words, proj)
    if move == "H2":
        A, B = site
        (fa1, wa1, pa1), (fa2, wa2, pa2) = _occ_named(P, A)
        (fb1, wb1, pb1), (fb2, wb2, pb2) = _occ_named(P, B)
        if not (_next_named(P, wa1, pa1) == B and fb1 == fa1 + 1 and _next_named(P, wb2, pb2) == A and fa2 == fb2 + 1):
            raise ValidationError(f"H2 pattern xAByBAz not found for {A}, {B}")
        if proj[A] != data.tau[proj[B]]:
            raise ValidationError(f"H2 needs |{A}| = tau(|{B}|)")
        words = [[a for a in w if a not in (A, B)] for w in words]
        del proj[A], proj[B]
        return Nanophrase.build(words, proj)
    if move in ("H3", "H3-inverse"):
        A, B, C = site
        if (proj[A], proj[B], proj[C]) not in data.S:
            raise ValidationError(f"H3 needs (|{A}|, |{B}|, |{C}|) in S")
        if move == "H3":
            pairs = [(A, B), (A, C), (B, C)]
        else:
            pairs = [(B, A), (C, A), (C, B)]
        flat = [(a, w, p) for w, word in enumerate(P.words) for p, a in enumerate(word)]
        found, start = [], 0
        for x, y in pairs:
            for k in range(start, len(flat) - 1):
                a, w, p = flat[k]
                if a == x and flat[k + 1][0] == y and flat[k + 1][1] == w:
                    found.append((w, p))
                    start = k + 2
                    break
            else:
                raise ValidationError(f"{move} pattern not found for {A}, {B}, {C}")
        occ_ok = all(len(_occ_named(P, l)) == 2 for l in (A, B, C))
        if not occ_ok or len(found) != 3:
            raise ValidationError(f"{move} pattern not found")
        for w, p in found:
            words[w][p], words[w][p + 1] = words[w][p + 1], words[w][p]
        return Nanophrase.build(words, proj)
    if move in ("shift", "shift-inverse"):
        w = int(site)
        if not 0 <= w < len(words) or not words[w]:
            raise ValidationError("shift needs a nonempty word")
        if move == "shift":
            a = words[w].pop(0)
            words[w].append(a)
        else:
            a = words[w].pop()
            words[w].insert(0, a)
        if words[w].count(a) == 2:
            proj[a] = data.nu[proj[a]]
        return Nanophrase.build(words, proj)
    if move == "H1-inverse":
        w, p, label = site
        if label not in data.tau:
            raise ValidationError(f"label {label!r} is not in the alphabet")
        (A,) = _fresh(P, 1)
        words[w][p:p] = [A, A]
        proj[A] = label
        return Nanophrase.build(words, proj)
    if move == "H2-inverse":
        (w1, p1), (w2, p2), label = site
        if (w1, p1) > (w2, p2):
            raise ValidationError("H2-inverse needs the first insertion point before the second")
        if label not in data.tau:
            raise ValidationError(f"label {label!r} is not in the alphabet")
        A, B = _fresh(P, 2)
        words[w2][p2:p2] = [B, A]
        words[w1][p1:p1] = [A, B]
        proj[A], proj[B] = label, data.tau[label]
        return Nanophrase.build(words, proj)
    if move == "isomorphism":
        ren = dict(site)
        if sorted(ren) != sorted(P.letters) or len(set(ren.values())) != len(ren):
            raise ValidationError("isomorphism must rename every letter bijectively")
        return Nanophrase.build([[ren[a] for a in w] for w in words], {ren[a]: l for a, l in proj.items()})
    raise ValidationError(f"unknown move {move!r}")
