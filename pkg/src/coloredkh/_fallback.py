"""Pure-Python versions of the hot kernels.

These define the reference behaviour; the compiled module in ``_kernels.pyx``
must agree with them exactly.
"""
from __future__ import annotations

from fractions import Fraction


def state_loop_counts(zero, one, narcs: int) -> list[int]:
    """Loop counts (excluding free loops) for all ``2^c`` smoothing states.

    ``zero[x]`` / ``one[x]`` hold the two arc-index pairs ``(p, q, r, s)``
    joined by the 0- and 1-smoothing of crossing ``x``.  States are visited by
    depth-first search over crossings with a rollback union-find, so each
    crossing's unions are shared by all states with the same prefix.
    """
    c = len(zero)
    out = [0] * (1 << c)
    parent = list(range(narcs))
    size = [1] * narcs
    undo: list[tuple[int, int]] = []

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru == rv:
            return 0
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        undo.append((rv, ru))
        return 1

    def rollback(mark):
        while len(undo) > mark:
            rv, ru = undo.pop()
            parent[rv] = rv
            size[ru] -= size[rv]

    def visit(x, bits, merged):
        if x == c:
            out[bits] = narcs - merged
            return
        for b in (0, 1):
            mark = len(undo)
            p, q, r, s = one[x] if b else zero[x]
            m = merged + union(p, q) + union(r, s)
            visit(x + 1, bits | (b << x), m)
            rollback(mark)

    visit(0, 0, 0)
    return out


def reduce_columns(columns, nrows: int, modulus: int = 0) -> list[int]:
    """Column-reduce a sparse matrix, returning the pivot row ("low") per column.

    ``columns`` is a sequence of ``(rows, values)`` pairs.  The low of a
    column is its largest row index after reduction, ``-1`` for a zero column.
    Arithmetic is exact over Q when ``modulus`` is 0, otherwise over GF(p).
    """
    pivots: dict[int, dict[int, object]] = {}
    lows: list[int] = []
    exact = modulus == 0
    for rows, vals in columns:
        if exact:
            col = {int(r): Fraction(int(v)) for r, v in zip(rows, vals) if v}
        else:
            col = {}
            for r, v in zip(rows, vals):
                v = int(v) % modulus
                if v:
                    col[int(r)] = (col.get(int(r), 0) + v) % modulus
            col = {r: v for r, v in col.items() if v}
        while col:
            low = max(col)
            pc = pivots.get(low)
            if pc is None:
                break
            f = col[low]
            for r, v in pc.items():
                nv = col.get(r, 0) - f * v
                if not exact:
                    nv %= modulus
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
        if col:
            low = max(col)
            lead = col[low]
            if exact:
                col = {r: v / lead for r, v in col.items()}
            else:
                inv = pow(lead, modulus - 2, modulus)
                col = {r: v * inv % modulus for r, v in col.items()}
            pivots[low] = col
            lows.append(low)
        else:
            lows.append(-1)
    return lows
