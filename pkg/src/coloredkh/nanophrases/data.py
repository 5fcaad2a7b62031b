"""Homotopy data ``(alpha, S, tau, nu)`` and the built-in target alphabets.

Data file format (one item per line, ``#`` starts a comment)::

    alphabet: a b c
    tau: a<->b          # unlisted letters are fixed; "↔" is accepted too
    nu: c<->c
    S: sharp            # or "diagonal", or explicit triples "(a,a,b) (b,b,b)"

``S: sharp`` (the default) builds the knotlike triple set from ``tau`` and
``nu``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..errors import ValidationError

Triple = tuple[str, str, str]


def _check_involution(alpha: tuple[str, ...], f: Mapping[str, str], name: str) -> dict[str, str]:
    full = {a: f.get(a, a) for a in alpha}
    for a, b in full.items():
        if b not in full:
            raise ValidationError(f"{name} maps {a!r} outside the alphabet")
        if full[b] != a:
            raise ValidationError(f"{name} is not an involution ({a} -> {b} -> {full[b]})")
    return full


@dataclass(frozen=True)
class HomotopyData:
    alphabet: tuple[str, ...]
    tau: Mapping[str, str]
    nu: Mapping[str, str]
    S: frozenset = field(default_factory=frozenset)
    sharp: bool = False
    name: str = ""

    def __post_init__(self):
        alpha = tuple(self.alphabet)
        if len(set(alpha)) != len(alpha):
            raise ValidationError("alphabet letters must be distinct")
        object.__setattr__(self, "alphabet", alpha)
        object.__setattr__(self, "tau", _check_involution(alpha, self.tau, "tau"))
        object.__setattr__(self, "nu", _check_involution(alpha, self.nu, "nu"))
        S = frozenset(tuple(t) for t in self.S)
        for t in S:
            if len(t) != 3 or any(x not in self.tau for x in t):
                raise ValidationError(f"triple {t} is not in alpha^3")
        object.__setattr__(self, "S", S)
        if self.sharp and not self.commutes():
            raise ValidationError("the knotlike triple set needs nu tau = tau nu")

    def commutes(self) -> bool:
        return all(self.nu[self.tau[a]] == self.tau[self.nu[a]] for a in self.alphabet)

    def tau_nu(self, a: str) -> str:
        return self.tau[self.nu[a]]

    def covers_diagonal(self) -> bool:
        return all((a, a, a) in self.S for a in self.alphabet)

    def with_name(self, name: str) -> "HomotopyData":
        return HomotopyData(self.alphabet, self.tau, self.nu, self.S, self.sharp, name)

    def dumps(self) -> str:
        def pairs(f):
            seen, out = set(), []
            for a in self.alphabet:
                b = f[a]
                if a in seen or a == b:
                    continue
                seen.update((a, b))
                out.append(f"{a}<->{b}")
            return " ".join(out)

        lines = [f"alphabet: {' '.join(self.alphabet)}", f"tau: {pairs(self.tau)}".rstrip(),
                 f"nu: {pairs(self.nu)}".rstrip()]
        if self.sharp and self.S == s_sharp_triples(self.alphabet, self.tau, self.nu):
            lines.append("S: sharp")
        else:
            lines.append("S: " + " ".join(f"({a},{b},{c})" for a, b, c in sorted(self.S)))
        return "\n".join(lines) + "\n"


def s_sharp_triples(alpha: Iterable[str], tau: Mapping[str, str], nu: Mapping[str, str]) -> frozenset:
    out = set()
    for b in alpha:
        a = nu[tau[b]]
        out.update({(a, a, a), (a, a, b), (b, a, a), (b, b, a), (a, b, b), (b, b, b)})
    return frozenset(out)


def make_s_sharp(alpha: Iterable[str], tau: Mapping[str, str] | None = None,
                 nu: Mapping[str, str] | None = None, name: str = "") -> HomotopyData:
    """Homotopy data with the knotlike triple set built from ``tau`` and ``nu``."""
    alpha = tuple(alpha)
    tau = _check_involution(alpha, tau or {}, "tau")
    nu = _check_involution(alpha, nu or {}, "nu")
    if any(nu[tau[a]] != tau[nu[a]] for a in alpha):
        raise ValidationError("the knotlike triple set needs nu tau = tau nu")
    return HomotopyData(alpha, tau, nu, s_sharp_triples(alpha, tau, nu), True, name)


def diagonal_data(alpha: Iterable[str], tau: Mapping[str, str] | None = None,
                  nu: Mapping[str, str] | None = None, name: str = "") -> HomotopyData:
    alpha = tuple(alpha)
    return HomotopyData(alpha, tau or {}, nu or {}, frozenset((a, a, a) for a in alpha), False, name)


# -- built-in targets ------------------------------------------------------

ALPHA_STAR = ("a+", "a-", "b+", "b-")
TAU_STAR = {"a+": "b-", "b-": "a+", "a-": "b+", "b+": "a-"}
NU_STAR = {"a+": "b+", "b+": "a+", "a-": "b-", "b-": "a-"}
STAR = make_s_sharp(ALPHA_STAR, TAU_STAR, NU_STAR, "alpha_*")

ALPHA_1 = ("1", "-1")
ONE = make_s_sharp(ALPHA_1, {"1": "-1", "-1": "1"}, {}, "alpha_1")

ALPHA_2 = ("c", "d")
TWO = make_s_sharp(ALPHA_2, {}, {"c": "d", "d": "c"}, "alpha_2")

ALPHA_0 = ("a", "b")
ZERO = make_s_sharp(ALPHA_0, {"a": "b", "b": "a"}, {"a": "b", "b": "a"}, "alpha_0")

TARGETS = {"star": STAR, "1": ONE, "2": TWO, "0": ZERO}


_PAIR = re.compile(r"^([^\s<>↔]+)(?:<->|↔)([^\s<>↔]+)$")
_TRIPLE = re.compile(r"^\(([^,()\s]+),([^,()\s]+),([^,()\s]+)\)$")


def _parse_map(tokens: list[str], line: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for t in tokens:
        m = _PAIR.match(t)
        if not m:
            raise ValidationError(f"bad involution pair {t!r} in line {line!r}")
        a, b = m.groups()
        out[a], out[b] = b, a
    return out


def parse_data(text: str | bytes) -> HomotopyData:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    fields: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValidationError(f"expected 'key: value', got {line!r}")
        key, value = line.split(":", 1)
        key = key.strip().lower()
        if key not in ("alphabet", "tau", "nu", "s"):
            raise ValidationError(f"unknown homotopy-data key {key!r}")
        fields[key] = value.strip()
    if "alphabet" not in fields:
        raise ValidationError("homotopy data needs an 'alphabet:' line")
    alpha = tuple(fields["alphabet"].split())
    tau = _parse_map(fields.get("tau", "").split(), "tau")
    nu = _parse_map(fields.get("nu", "").split(), "nu")
    s = fields.get("s", "sharp")
    if s == "sharp":
        return make_s_sharp(alpha, tau, nu)
    if s == "diagonal":
        return diagonal_data(alpha, tau, nu)
    triples = []
    for t in s.split():
        m = _TRIPLE.match(t)
        if not m:
            raise ValidationError(f"bad triple {t!r}")
        triples.append(m.groups())
    return HomotopyData(alpha, tau, nu, frozenset(triples), False)
