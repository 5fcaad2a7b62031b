# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_fallback``."""
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from libcpp.utility cimport pair
from libc.stdint cimport int64_t

import numpy as np
cimport numpy as cnp


cdef int _find(int* parent, int i) nogil:
    while parent[i] != i:
        i = parent[i]
    return i


def state_loop_counts(zero, one, int narcs):
    cdef int c = len(zero)
    cdef Py_ssize_t nstates = (<Py_ssize_t>1) << c
    out = np.zeros(nstates, dtype=np.int32)
    cdef int[::1] outv = out
    cdef vector[int] pairs
    pairs.resize(8 * c)
    cdef int x, k
    for x in range(c):
        for k in range(4):
            pairs[8 * x + k] = zero[x][k]
            pairs[8 * x + 4 + k] = one[x][k]
    cdef vector[int] parent, size, undo_child, undo_root
    parent.resize(narcs)
    size.resize(narcs)
    for k in range(narcs):
        parent[k] = k
        size[k] = 1
    # explicit DFS: branch[x] is the bit currently explored at depth x
    cdef vector[int] branch, mark, merged
    branch.resize(c + 1)
    mark.resize(c + 1)
    merged.resize(c + 1)
    cdef int depth = 0
    cdef Py_ssize_t bits = 0
    cdef int ru, rv, u, v, b, t, base, m
    with nogil:
        if c == 0:
            outv[0] = narcs
        else:
            branch[0] = -1
            merged[0] = 0
            while depth >= 0:
                # undo the unions of the previous branch at this depth
                while <int>undo_child.size() > mark[depth] and branch[depth] >= 0:
                    rv = undo_child.back()
                    ru = undo_root.back()
                    undo_child.pop_back()
                    undo_root.pop_back()
                    parent[rv] = rv
                    size[ru] -= size[rv]
                if branch[depth] >= 1:
                    depth -= 1
                    continue
                if branch[depth] < 0:
                    mark[depth] = undo_child.size()
                branch[depth] += 1
                b = branch[depth]
                if b:
                    bits |= (<Py_ssize_t>1) << depth
                else:
                    bits &= ~((<Py_ssize_t>1) << depth)
                base = 8 * depth + 4 * b
                m = merged[depth]
                for t in range(2):
                    u = pairs[base + 2 * t]
                    v = pairs[base + 2 * t + 1]
                    ru = _find(&parent[0], u)
                    rv = _find(&parent[0], v)
                    if ru != rv:
                        if size[ru] < size[rv]:
                            ru, rv = rv, ru
                        parent[rv] = ru
                        size[ru] += size[rv]
                        undo_child.push_back(rv)
                        undo_root.push_back(ru)
                        m += 1
                if depth + 1 == c:
                    outv[bits] = narcs - m
                else:
                    depth += 1
                    branch[depth] = -1
                    merged[depth] = m
    return out


cdef inline int64_t _mod(int64_t a, int64_t p) nogil:
    a %= p
    if a < 0:
        a += p
    return a


cdef int64_t _inv(int64_t a, int64_t p) nogil:
    cdef int64_t result = 1, e = p - 2
    a = _mod(a, p)
    while e:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result


def reduce_columns(columns, Py_ssize_t nrows, long long modulus):
    """Modular column reduction; see ``_fallback.reduce_columns``."""
    if modulus <= 0 or modulus >= (1 << 31):
        raise ValueError("compiled reduction needs a prime modulus below 2^31")
    cdef int64_t p = modulus
    cdef unordered_map[Py_ssize_t, vector[pair[Py_ssize_t, int64_t]]] pivots
    cdef vector[pair[Py_ssize_t, int64_t]] col, tmp
    cdef Py_ssize_t i, j, na, nb, r
    cdef int64_t f, v, inv
    lows = []
    for rows, vals in columns:
        rows_a = np.asarray(rows, dtype=np.int64)
        vals_a = np.asarray(vals, dtype=np.int64)
        order = np.argsort(rows_a, kind="stable")
        rows_a = rows_a[order]
        vals_a = vals_a[order]
        col.clear()
        for i in range(rows_a.shape[0]):
            v = _mod(vals_a[i], p)
            r = rows_a[i]
            if col.size() and col.back().first == r:
                col.back().second = (col.back().second + v) % p
                if col.back().second == 0:
                    col.pop_back()
            elif v:
                col.push_back(pair[Py_ssize_t, int64_t](r, v))
        with nogil:
            while col.size():
                r = col.back().first
                if pivots.count(r) == 0:
                    break
                f = col.back().second
                tmp.clear()
                i = 0
                j = 0
                na = col.size()
                nb = pivots[r].size()
                while i < na or j < nb:
                    if j >= nb or (i < na and col[i].first < pivots[r][j].first):
                        tmp.push_back(col[i])
                        i += 1
                    elif i >= na or pivots[r][j].first < col[i].first:
                        v = _mod(-f * pivots[r][j].second, p)
                        tmp.push_back(pair[Py_ssize_t, int64_t](pivots[r][j].first, v))
                        j += 1
                    else:
                        v = _mod(col[i].second - f * pivots[r][j].second, p)
                        if v:
                            tmp.push_back(pair[Py_ssize_t, int64_t](col[i].first, v))
                        i += 1
                        j += 1
                col.swap(tmp)
            if col.size():
                r = col.back().first
                inv = _inv(col.back().second, p)
                for i in range(<Py_ssize_t>col.size()):
                    col[i].second = col[i].second * inv % p
                pivots[r] = col
        lows.append(col.back().first if col.size() else -1)
    return lows
