"""Bounded homotopy search between nanophrases."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import ValidationError
from .data import HomotopyData
from .phrase import Canon, Nanophrase, neighbors

YES = "yes"
NO_WITHIN_BOUND = "no-within-bound"
BUDGET_EXCEEDED = "budget-exceeded"

DEFAULT_MAX_STATES = 500_000


@dataclass
class HomotopyResult:
    verdict: str
    depth: int | None = None  # length of the witness when verdict is "yes"
    path: list = field(default_factory=list)  # [(move, Nanophrase)] from P1 to P2
    states: int = 0
    length_cap: int = 0
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verdict == YES

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "states": self.states, "length_cap": self.length_cap}
        if self.verdict == YES:
            out["depth"] = self.depth
            out["path"] = [{"move": m, "phrase": str(P)} for m, P in self.path]
        if self.reason:
            out["reason"] = self.reason
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _trace(parents: dict, node: Canon) -> list[tuple[str, Canon]]:
    """Moves from the root to ``node`` as [(move, state after move)]."""
    out = []
    while parents[node] is not None:
        move, prev = parents[node]
        out.append((move, node))
        node = prev
    out.reverse()
    return out


_INVERSE = {"H1": "H1-inverse", "H1-inverse": "H1", "H2": "H2-inverse", "H2-inverse": "H2",
            "H3": "H3-inverse", "H3-inverse": "H3", "shift": "shift-inverse", "shift-inverse": "shift"}


def homotopic(P1: Nanophrase, P2: Nanophrase, data: HomotopyData, depth: int = 6,
              length_cap: int | None = None, max_states: int = DEFAULT_MAX_STATES) -> HomotopyResult:
    """Bidirectional breadth-first search over homotopy moves.

    ``length_cap`` bounds the total number of letter occurrences of every
    intermediate phrase; by default it is four more than the longer input.
    A "yes" verdict carries a witness path; "no-within-bound" only means no
    path of at most ``depth`` moves stays under the cap.
    """
    P1.check_alphabet(data)
    P2.check_alphabet(data)
    if depth < 0:
        raise ValidationError("depth must be nonnegative")
    cap = max(P1.length, P2.length) + 4 if length_cap is None else int(length_cap)
    if cap < max(P1.length, P2.length):
        raise ValidationError("length_cap is below the length of an input phrase")
    a, b = P1.canon(), P2.canon()
    if a == b:
        return HomotopyResult(YES, 0, [], 1, cap)
    if P1.n_components != P2.n_components:
        # moves never change the number of words
        return HomotopyResult(NO_WITHIN_BOUND, states=2, length_cap=cap, reason="different numbers of words")
    sides = [{a: None}, {b: None}]
    frontiers = [[a], [b]]
    done = [0, 0]
    states = 2
    while done[0] + done[1] < depth:
        if not frontiers[0] and not frontiers[1]:
            break
        # grow the smaller frontier
        s = 0 if (len(frontiers[0]) <= len(frontiers[1]) and frontiers[0]) or not frontiers[1] else 1
        seen, other = sides[s], sides[1 - s]
        nxt = []
        for node in frontiers[s]:
            for move, nb in neighbors(node, data, cap):
                if nb in seen:
                    continue
                seen[nb] = (move, node)
                states += 1
                if nb in other:
                    return _witness(sides, nb, states, cap)
                nxt.append(nb)
                if states > max_states:
                    return HomotopyResult(BUDGET_EXCEEDED, states=states, length_cap=cap,
                                          reason=f"more than {max_states} states")
        frontiers[s] = nxt
        done[s] += 1
    return HomotopyResult(NO_WITHIN_BOUND, states=states, length_cap=cap)


def _witness(sides, meet: Canon, states: int, cap: int) -> HomotopyResult:
    first = _trace(sides[0], meet)
    second = _trace(sides[1], meet)
    # the second half runs from P2 to the meeting point; undo it step by step
    prevs = [_root(sides[1])] + [n for _, n in second[:-1]]
    back = [(_INVERSE[move], prev) for (move, _), prev in reversed(list(zip(second, prevs)))]
    path = [(m, Nanophrase.from_canon(c)) for m, c in first + back]
    return HomotopyResult(YES, len(path), path, states, cap)


def _root(parents: dict) -> Canon:
    return next(k for k, v in parents.items() if v is None)
