"""Planar-diagram (PD) codes.

A crossing is a 4-tuple of arc labels ``(a, b, c, d)`` listed counterclockwise
starting from the incoming under-strand, so the under-strand runs ``a -> c``.
The over-strand runs either ``d -> b`` (positive crossing) or ``b -> d``
(negative crossing); the crossing sign therefore also records the over-strand
direction.  Components without crossings are kept as a count of free loops.

The same structure also carries "abstract" diagrams obtained from non-planar
Gauss phrases: the local rotation at each crossing is still well defined, the
diagram simply lives on a higher-genus surface.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from ..errors import ValidationError

Slot = tuple[int, int]  # (crossing index, position 0..3)


def entry_positions(sign: int) -> tuple[int, int]:
    """Positions where an oriented strand enters a crossing of this sign."""
    return (0, 3) if sign > 0 else (0, 1)


def is_entry(pos: int, sign: int) -> bool:
    return pos == 0 or (pos == 3 and sign > 0) or (pos == 1 and sign < 0)


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]
    signs: tuple[int, ...]
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(v) for v in x) for x in self.crossings))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if len(self.signs) != len(self.crossings):
            raise ValidationError("one sign per crossing is required")
        if any(s not in (1, -1) for s in self.signs):
            raise ValidationError("crossing signs must be +1 or -1")
        if any(len(x) != 4 for x in self.crossings):
            raise ValidationError("every crossing must list exactly four arcs")
        if self.free_loops < 0:
            raise ValidationError("free_loops must be nonnegative")
        slots = self.slots
        for arc, occ in slots.items():
            if len(occ) != 2:
                raise ValidationError(f"arc {arc} appears {len(occ)} times (expected 2)")
            entries = sum(is_entry(p, self.signs[x]) for x, p in occ)
            if entries != 1:
                raise ValidationError(f"orientation inconsistency along arc {arc}")

    # -- structure -----------------------------------------------------
    @cached_property
    def slots(self) -> dict[int, list[Slot]]:
        out: dict[int, list[Slot]] = {}
        for x, tup in enumerate(self.crossings):
            for p, arc in enumerate(tup):
                out.setdefault(arc, []).append((x, p))
        return out

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def arcs(self) -> tuple[int, ...]:
        return tuple(sorted(self.slots))

    def head(self, arc: int) -> Slot:
        """Slot where ``arc`` enters a crossing."""
        for x, p in self.slots[arc]:
            if is_entry(p, self.signs[x]):
                return (x, p)
        raise AssertionError("unreachable for a validated diagram")

    def tail(self, arc: int) -> Slot:
        for x, p in self.slots[arc]:
            if not is_entry(p, self.signs[x]):
                return (x, p)
        raise AssertionError("unreachable for a validated diagram")

    def next_arc(self, arc: int) -> int:
        x, p = self.head(arc)
        return self.crossings[x][(p + 2) % 4]

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Oriented arc cycles (each starting at its smallest label), then free loops as ``()``."""
        seen: set[int] = set()
        comps = []
        for arc in self.arcs:
            if arc in seen:
                continue
            cyc = [arc]
            seen.add(arc)
            nxt = self.next_arc(arc)
            while nxt != arc:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.next_arc(nxt)
            comps.append(tuple(cyc))
        return tuple(comps) + ((),) * self.free_loops

    @property
    def n_components(self) -> int:
        return len(self.components)

    @cached_property
    def arc_component(self) -> dict[int, int]:
        return {a: i for i, comp in enumerate(self.components) for a in comp}

    def crossing_components(self, x: int) -> tuple[int, int]:
        """(under component, over component) at crossing ``x``."""
        a, b, _, _ = self.crossings[x]
        return self.arc_component[a], self.arc_component[b]

    # -- numerical invariants -----------------------------------------
    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def writhe(self) -> int:
        return sum(self.signs)

    def self_writhe(self, component: int) -> int:
        return sum(
            s for x, s in enumerate(self.signs)
            if self.crossing_components(x) == (component, component)
        )

    def linking_number(self, i: int, j: int) -> float:
        total = 0
        for x, s in enumerate(self.signs):
            if set(self.crossing_components(x)) == {i, j} and i != j:
                total += s
        return total / 2

    # -- transformations -----------------------------------------------
    def mirror(self) -> "PDCode":
        """Reflect the plane: over and under swap at every crossing."""
        return PDCode(
            tuple((a, d, c, b) for a, b, c, d in self.crossings),
            tuple(-s for s in self.signs),
            self.free_loops,
        )

    def reorient(self, reverse: Iterable[int]) -> "PDCode":
        """Reverse the orientation of the listed components."""
        rev = set(reverse)
        crossings, signs = [], []
        for x, (tup, s) in enumerate(zip(self.crossings, self.signs)):
            under, over = self.crossing_components(x)
            if under in rev:
                a, b, c, d = tup
                tup = (c, d, a, b)
                s = -s
            if over in rev:
                s = -s
            crossings.append(tup)
            signs.append(s)
        return PDCode(tuple(crossings), tuple(signs), self.free_loops)

    def relabeled(self) -> "PDCode":
        """Relabel arcs consecutively from 1 following the component order."""
        mapping = {}
        for comp in self.components:
            for a in comp:
                mapping[a] = len(mapping) + 1
        return PDCode(
            tuple(tuple(mapping[a] for a in x) for x in self.crossings),
            self.signs,
            self.free_loops,
        )

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        return {
            "crossings": [list(x) for x in self.crossings],
            "orientations": list(self.signs),
            "components": self.n_components,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


EMPTY = PDCode((), (), 0)
UNKNOT = PDCode((), (), 1)


def infer_signs(crossings: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Recover crossing signs from the under-strand directions.

    Under-strands fix the direction of every component that passes under
    somewhere.  A connected group of crossings whose over-strands are never
    pinned this way is oriented so its lowest-index crossing is positive.
    """
    n = len(crossings)
    occ: dict[int, list[Slot]] = {}
    for x, tup in enumerate(crossings):
        if len(tup) != 4:
            raise ValidationError("every crossing must list exactly four arcs")
        for p, arc in enumerate(tup):
            occ.setdefault(arc, []).append((x, p))
    for arc, o in occ.items():
        if len(o) != 2:
            raise ValidationError(f"arc {arc} appears {len(o)} times (expected 2)")

    # constraints: forced[x] = sign, or parity links between crossings
    forced: dict[int, int] = {}
    links: dict[int, list[tuple[int, int, int, int]]] = {x: [] for x in range(n)}

    def need(x, p, entry):
        s = (1 if p == 3 else -1) if entry else (-1 if p == 3 else 1)
        if forced.get(x, s) != s:
            raise ValidationError(f"orientation inconsistency at crossing {x}")
        forced[x] = s

    for arc, ((x, p), (y, q)) in occ.items():
        fixed = [(z, r) for z, r in ((x, p), (y, q)) if r in (0, 2)]
        if len(fixed) == 2:
            if {p, q} != {0, 2}:
                raise ValidationError(f"orientation inconsistency along arc {arc}")
        elif len(fixed) == 1:
            (fz, fr) = fixed[0]
            oz, orr = (y, q) if (fz, fr) == (x, p) else (x, p)
            need(oz, orr, entry=(fr == 2))
        else:
            links[x].append((p, y, q, arc))
            links[y].append((q, x, p, arc))

    signs: dict[int, int] = {}

    def spread(start, s0):
        queue = deque([(start, s0)])
        while queue:
            x, s = queue.popleft()
            if x in signs:
                if signs[x] != s:
                    raise ValidationError(f"orientation inconsistency at crossing {x}")
                continue
            signs[x] = s
            for p, y, q, _ in links[x]:
                ent = is_entry(p, s)
                # other end must be the opposite kind
                want_entry = not ent
                sy = (1 if q == 3 else -1) if want_entry else (-1 if q == 3 else 1)
                queue.append((y, sy))

    for x in sorted(forced):
        spread(x, forced[x])
    for x in range(n):
        if x not in signs:
            spread(x, 1)
    for x, s in forced.items():
        if signs[x] != s:
            raise ValidationError(f"orientation inconsistency at crossing {x}")
    return tuple(signs[x] for x in range(n))


def parse_pd(text: bytes | str | dict) -> PDCode:
    """Parse the PD JSON format.

    ``{"crossings": [[a, b, c, d], ...], "orientations": [...], "components": n}``

    ``orientations`` is optional; when present it lists, per crossing, the
    over-strand direction (+1 for ``d -> b``, -1 for ``b -> d``), which equals
    the crossing sign.  ``components`` is the total number of link components,
    including crossingless ones.
    """
    if isinstance(text, dict):
        obj = text
    else:
        try:
            obj = json.loads(text)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ValidationError(f"malformed PD JSON: {exc}") from None
    if not isinstance(obj, dict) or "crossings" not in obj:
        raise ValidationError("PD JSON must be an object with a 'crossings' list")
    raw = obj["crossings"]
    if not isinstance(raw, list) or any(not isinstance(x, list) for x in raw):
        raise ValidationError("'crossings' must be a list of 4-element lists")
    crossings = []
    for x in raw:
        if len(x) != 4 or any(not isinstance(v, int) or isinstance(v, bool) for v in x):
            raise ValidationError(f"crossing {x!r} is not a list of four integer arc labels")
        crossings.append(tuple(x))
    if obj.get("orientations") is not None:
        signs = obj["orientations"]
        if not isinstance(signs, list) or len(signs) != len(crossings):
            raise ValidationError("'orientations' must list one direction per crossing")
        signs = tuple(signs)
    else:
        signs = infer_signs(crossings)
    probe = PDCode(tuple(crossings), signs, 0)
    declared = obj.get("components")
    found = len(probe.components)
    if declared is None:
        declared = max(found, 1) if not crossings else found
    if not isinstance(declared, int) or declared < found:
        raise ValidationError(
            f"'components' = {declared!r} but the crossings already form {found} components"
        )
    return PDCode(probe.crossings, probe.signs, declared - found)


def load_pd(path) -> PDCode:
    with open(path, "rb") as fh:
        return parse_pd(fh.read())
