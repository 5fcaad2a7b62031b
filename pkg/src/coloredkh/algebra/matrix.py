"""Sparse integer matrices and the Smith normal form."""
from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from ..errors import ValidationError


class IntegerMatrix:
    """Immutable sparse integer matrix in triplet form.

    Entries are kept as numpy int64 triplets when they fit (the common case for
    chain-complex differentials) and as Python ints otherwise.
    """

    __slots__ = ("rows", "cols", "_r", "_c", "_v", "_dict")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], int] | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        if self.rows < 0 or self.cols < 0:
            raise ValidationError("matrix dimensions must be nonnegative")
        clean = {}
        for (r, c), v in (entries or {}).items():
            v = int(v)
            if not v:
                continue
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValidationError(f"entry ({r}, {c}) outside a {self.rows}x{self.cols} matrix")
            clean[(int(r), int(c))] = v
        self._dict = clean
        self._r = self._c = self._v = None

    @classmethod
    def from_coo(cls, rows: int, cols: int, r, c, v) -> "IntegerMatrix":
        """Build from triplet arrays, summing duplicates."""
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if r.size and (r.min() < 0 or r.max() >= rows or c.min() < 0 or c.max() >= cols):
            raise ValidationError("triplet index outside matrix bounds")
        self = cls.__new__(cls)
        self.rows, self.cols = int(rows), int(cols)
        self._dict = None
        if r.size:
            key = r * max(cols, 1) + c
            order = np.argsort(key, kind="stable")
            key, v = key[order], v[order]
            uniq, start = np.unique(key, return_index=True)
            sums = np.add.reduceat(v, start) if v.size else v
            keep = sums != 0
            uniq, sums = uniq[keep], sums[keep]
            self._r = uniq // max(cols, 1)
            self._c = uniq % max(cols, 1)
            self._v = sums
        else:
            self._r = self._c = self._v = np.zeros(0, dtype=np.int64)
        return self

    @classmethod
    def from_dense(cls, rows: Iterable[Iterable[int]]) -> "IntegerMatrix":
        data = [list(r) for r in rows]
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValidationError("ragged dense matrix")
        return cls(len(data), ncols, {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r) if v})

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols)

    # -- views ---------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        if self._dict is None:
            self._dict = {
                (int(r), int(c)): int(v) for r, c, v in zip(self._r, self._c, self._v)
            }
        return self._dict

    def triplets(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Row, column and value arrays (values as object dtype if they overflow int64)."""
        if self._r is None:
            items = sorted(self._dict.items())
            r = np.array([k[0] for k, _ in items], dtype=np.int64)
            c = np.array([k[1] for k, _ in items], dtype=np.int64)
            vals = [v for _, v in items]
            if all(abs(v) < 2**62 for v in vals):
                v = np.array(vals, dtype=np.int64)
            else:
                v = np.array(vals, dtype=object)
            self._r, self._c, self._v = r, c, v
        return self._r, self._c, self._v

    @property
    def nnz(self) -> int:
        return len(self._dict) if self._dict is not None else int(self._v.size)

    def is_zero(self) -> bool:
        return self.nnz == 0

    def max_abs(self) -> int:
        _, _, v = self.triplets()
        return int(max((abs(int(x)) for x in v), default=0))

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def columns(self) -> list[tuple[list[int], list[int]]]:
        """Per-column ``(rows, values)`` lists."""
        cols: list[tuple[list[int], list[int]]] = [([], []) for _ in range(self.cols)]
        r, c, v = self.triplets()
        for rr, cc, vv in zip(r.tolist(), c.tolist(), v.tolist()):
            cols[cc][0].append(rr)
            cols[cc][1].append(vv)
        return cols

    def transpose(self) -> "IntegerMatrix":
        r, c, v = self.triplets()
        if v.dtype == object:
            return IntegerMatrix(self.cols, self.rows, {(cc, rr): vv for (rr, cc), vv in self.entries.items()})
        return IntegerMatrix.from_coo(self.cols, self.rows, c, r, v)

    def submatrix(self, row_index: np.ndarray, col_index: np.ndarray) -> "IntegerMatrix":
        """Rows/columns selected by integer index arrays, renumbered in order."""
        rmap = np.full(self.rows, -1, dtype=np.int64)
        rmap[np.asarray(row_index, dtype=np.int64)] = np.arange(len(row_index))
        cmap = np.full(self.cols, -1, dtype=np.int64)
        cmap[np.asarray(col_index, dtype=np.int64)] = np.arange(len(col_index))
        r, c, v = self.triplets()
        keep = (rmap[r] >= 0) & (cmap[c] >= 0)
        return IntegerMatrix.from_coo(len(row_index), len(col_index), rmap[r[keep]], cmap[c[keep]], v[keep])

    # -- arithmetic ----------------------------------------------------
    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValidationError(f"shape mismatch {self.shape} @ {other.shape}")
        a, b = self.max_abs(), other.max_abs()
        if a * b * max(self.cols, 1) < 2**62 and self.triplets()[2].dtype != object and other.triplets()[2].dtype != object:
            import scipy.sparse as sp

            r1, c1, v1 = self.triplets()
            r2, c2, v2 = other.triplets()
            A = sp.csr_matrix((v1, (r1, c1)), shape=self.shape, dtype=np.int64)
            B = sp.csr_matrix((v2, (r2, c2)), shape=other.shape, dtype=np.int64)
            P = (A @ B).tocoo()
            return IntegerMatrix.from_coo(self.rows, other.cols, P.row, P.col, P.data)
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + v * w
        return IntegerMatrix(self.rows, other.cols, out)

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValidationError(f"shape mismatch {self.shape} + {other.shape}")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return IntegerMatrix(self.rows, self.cols, out)

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, v] for (r, c), v in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IntegerMatrix":
        return cls(obj["rows"], obj["cols"], {(r, c): v for r, c, v in obj["entries"]})


def determinant(M: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValidationError("determinant of a non-square matrix")
    n = M.rows
    a = M.to_dense()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def smith_normal_form(M: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` and ``d1 | d2 | ...``.

    Dense elimination with Python integers, always pivoting on the entry of
    smallest absolute value.  ``U`` and ``V`` are unimodular.
    """
    m, n = M.rows, M.cols
    A = M.to_dense()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
            # a nonzero remainder in the pivot row/column gives a smaller pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if cand:
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            # divisibility of the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(bad[0], t, 1)
                done = False
            if done:
                break
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    D = IntegerMatrix.from_dense(A) if m and n else IntegerMatrix(m, n)
    return D, IntegerMatrix(m, m, _sparse(U)), IntegerMatrix(n, n, _sparse(V))


def _sparse(dense):
    return {(i, j): v for i, row in enumerate(dense) for j, v in enumerate(row) if v}


def _dense_invariant_factors(rows: list[dict[int, int]], ncols: int) -> list[int]:
    A = [[row.get(j, 0) for j in range(ncols)] for row in rows]
    M = IntegerMatrix.from_dense(A) if A and ncols else IntegerMatrix(len(A), ncols)
    D, _, _ = smith_normal_form(M)
    return [D.entries[(k, k)] for k in range(min(D.rows, D.cols)) if (k, k) in D.entries]


def invariant_factors(M: IntegerMatrix) -> list[int]:
    """Nonzero Smith invariants of ``M`` (without the transforms).

    Unit pivots are eliminated sparsely first (each elimination removes one
    row and one column and a factor 1); the small remainder goes through the
    dense algorithm.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in M.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)
    ones = 0
    changed = True
    while changed:
        changed = False
        # visit rows shortest first to limit fill-in
        for r in sorted(rows, key=lambda k: len(rows[k])):
            row = rows.get(r)
            if not row:
                rows.pop(r, None)
                continue
            piv = None
            for c, v in row.items():
                if v in (1, -1) and (piv is None or len(cols[c]) < len(cols[piv])):
                    piv = c
            if piv is None:
                continue
            pv = row[piv]
            for r2 in list(cols[piv]):
                if r2 == r:
                    continue
                row2 = rows[r2]
                f = row2[piv] * pv  # pv = +-1 so pv^-1 = pv
                for c, v in row.items():
                    nv = row2.get(c, 0) - f * v
                    if nv:
                        if c not in row2:
                            cols[c].add(r2)
                        row2[c] = nv
                    else:
                        if c in row2:
                            del row2[c]
                            cols[c].discard(r2)
                if not row2:
                    del rows[r2]
            for c in row:
                cols[c].discard(r)
            del cols[piv]
            del rows[r]
            ones += 1
            changed = True
    rest = [row for row in rows.values() if row]
    factors = [1] * ones
    if rest:
        used = sorted({c for row in rest for c in row})
        idx = {c: k for k, c in enumerate(used)}
        factors += _dense_invariant_factors([{idx[c]: v for c, v in row.items()} for row in rest], len(used))
    factors.sort()
    return factors
