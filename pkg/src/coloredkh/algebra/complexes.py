"""Graded cochain complexes and their homology."""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from .. import kernels
from ..errors import InvariantViolation, ValidationError
from .matrix import IntegerMatrix, invariant_factors

Key = tuple[int, ...]


def _parse_key(text: str) -> Key:
    return tuple(int(t) for t in text.strip("()").split(",") if t.strip())


def format_key(key: Key) -> str:
    return "(" + ",".join(str(k) for k in key) + ")"


@dataclass(frozen=True)
class GradedChainComplex:
    """Free modules ``ranks[key]`` with differentials raising ``key`` by ``step``.

    ``differentials[key]`` is the matrix from ``key`` to ``key + step`` (shape
    ``rank(target) x rank(source)``); missing entries are zero maps.
    """

    ranks: Mapping[Key, int]
    differentials: Mapping[Key, IntegerMatrix]
    step: Key = (1,)

    def __post_init__(self):
        ranks = {tuple(k): int(v) for k, v in self.ranks.items() if int(v) > 0}
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "step", tuple(self.step))
        diffs = {}
        for k, M in self.differentials.items():
            k = tuple(k)
            if len(k) != len(self.step):
                raise ValidationError(f"key {k} does not match the grading length {len(self.step)}")
            want = (ranks.get(self.successor(k), 0), ranks.get(k, 0))
            if M.shape != want:
                raise ValidationError(f"differential at {k} has shape {M.shape}, expected {want}")
            if not M.is_zero():
                diffs[k] = M
        object.__setattr__(self, "differentials", diffs)
        if any(len(k) != len(self.step) for k in ranks):
            raise ValidationError("all grading keys must have the same length")

    def successor(self, key: Key) -> Key:
        return tuple(a + b for a, b in zip(key, self.step))

    def predecessor(self, key: Key) -> Key:
        return tuple(a - b for a, b in zip(key, self.step))

    def rank(self, key: Key) -> int:
        return self.ranks.get(tuple(key), 0)

    def d(self, key: Key) -> IntegerMatrix:
        key = tuple(key)
        M = self.differentials.get(key)
        if M is None:
            return IntegerMatrix(self.rank(self.successor(key)), self.rank(key))
        return M

    def keys(self) -> list[Key]:
        return sorted(self.ranks)

    def check_d_squared(self) -> None:
        """Raise ``InvariantViolation`` unless every composite ``d d`` vanishes."""
        for k, M in self.differentials.items():
            N = self.differentials.get(self.successor(k))
            if N is None:
                continue
            P = N @ M
            if not P.is_zero():
                raise InvariantViolation(f"d^2 != 0 at {format_key(k)} ({P.nnz} nonzero entries)")

    def euler_characteristic(self, sign_axis: int = 0) -> dict[Key, int]:
        """Signed ranks collapsed along ``sign_axis``."""
        out: dict[Key, int] = {}
        for k, r in self.ranks.items():
            rest = k[:sign_axis] + k[sign_axis + 1:]
            out[rest] = out.get(rest, 0) + (-1) ** k[sign_axis] * r
        return {k: v for k, v in out.items() if v}

    # -- JSON debug format ---------------------------------------------
    def to_json(self) -> dict:
        return {
            "step": list(self.step),
            "ranks": {format_key(k): v for k, v in sorted(self.ranks.items())},
            "differentials": {
                format_key(k): [[r, c, v] for (r, c), v in sorted(M.entries.items())]
                for k, M in sorted(self.differentials.items())
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict | str) -> "GradedChainComplex":
        if isinstance(obj, str):
            obj = json.loads(obj)
        step = tuple(obj.get("step", (1,)))
        ranks = {_parse_key(k): v for k, v in obj["ranks"].items()}
        diffs = {}
        for k, trip in obj.get("differentials", {}).items():
            key = _parse_key(k)
            tgt = tuple(a + b for a, b in zip(key, step))
            diffs[key] = IntegerMatrix(ranks.get(tgt, 0), ranks.get(key, 0), {(r, c): v for r, c, v in trip})
        return cls(ranks, diffs, step)


@dataclass(frozen=True)
class HomologyTable:
    """``groups[key] = (free rank, torsion orders)``; trivial groups are omitted."""

    groups: Mapping[Key, tuple[int, tuple[int, ...]]] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, (r, tors) in self.groups.items():
            tors = tuple(int(t) for t in tors if int(t) != 1)
            if any(t < 2 for t in tors):
                raise ValidationError("torsion orders must be at least 2")
            if any(b % a for a, b in zip(tors, tors[1:])):
                raise ValidationError("torsion orders must form a divisibility chain")
            if r or tors:
                clean[tuple(k)] = (int(r), tors)
        object.__setattr__(self, "groups", dict(sorted(clean.items())))

    def rank(self, key: Key) -> int:
        return self.groups.get(tuple(key), (0, ()))[0]

    def torsion(self, key: Key) -> tuple[int, ...]:
        return self.groups.get(tuple(key), (0, ()))[1]

    def ranks(self) -> dict[Key, int]:
        return {k: r for k, (r, _) in self.groups.items() if r}

    def total_rank(self) -> int:
        return sum(r for r, _ in self.groups.values())

    def __iter__(self) -> Iterator[Key]:
        return iter(self.groups)

    def __eq__(self, other):
        if not isinstance(other, HomologyTable):
            return NotImplemented
        return self.groups == other.groups

    def map_keys(self, f: Callable[[Key], Key]) -> "HomologyTable":
        return HomologyTable({f(k): v for k, v in self.groups.items()})

    def free_part(self) -> "HomologyTable":
        return HomologyTable({k: (r, ()) for k, (r, _) in self.groups.items()})

    def to_json(self) -> dict:
        return {format_key(k): {"rank": r, "torsion": list(t)} for k, (r, t) in self.groups.items()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    @classmethod
    def from_json(cls, obj: dict | str) -> "HomologyTable":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls({_parse_key(k): (v["rank"], tuple(v["torsion"])) for k, v in obj.items()})

    def to_text(self) -> str:
        lines = [f"{format_key(k):>12}  Z^{r}" + "".join(f" + Z/{t}" for t in tors) for k, (r, tors) in self.groups.items()]
        return "\n".join(lines) if lines else "0"


def rank_mod_p(M: IntegerMatrix, modulus: int = kernels.DEFAULT_PRIME) -> int:
    """Rank over Q, computed modulo a large prime (``modulus=0`` for exact)."""
    if M.is_zero():
        return 0
    lows = kernels.reduce_columns(M.columns(), M.rows, modulus)
    return sum(1 for v in lows if v >= 0)


def homology(C: GradedChainComplex, coefficients: str = "Z", threads: int = 1, check: bool = True) -> HomologyTable:
    """Homology of ``C`` over ``"Z"`` (with torsion) or ``"Q"`` (ranks only).

    Raises ``InvariantViolation`` when ``d^2 != 0`` (unless ``check`` is off).
    """
    if coefficients not in ("Z", "Q"):
        raise ValidationError("coefficients must be 'Z' or 'Q'")
    if check:
        C.check_d_squared()
    keys = sorted(set(C.ranks) | {C.successor(k) for k in C.differentials})

    def analyse(k):
        M = C.differentials.get(k)
        if M is None:
            return k, 0, []
        if coefficients == "Z":
            f = invariant_factors(M)
            return k, len(f), [t for t in f if t > 1]
        return k, rank_mod_p(M), []

    work = list(C.differentials)
    if threads > 1 and len(work) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(analyse, work))
    else:
        results = [analyse(k) for k in work]
    rank_out = {k: r for k, r, _ in results}
    tors_into = {C.successor(k): t for k, _, t in results}
    groups = {}
    for k in keys:
        free = C.rank(k) - rank_out.get(k, 0) - rank_out.get(C.predecessor(k), 0)
        if free < 0:
            raise InvariantViolation(f"negative homology rank at {format_key(k)}")
        groups[k] = (free, tuple(tors_into.get(k, ())))
    return HomologyTable(groups)
