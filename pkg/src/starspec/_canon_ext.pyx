# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled canonical labelling kernel (graphs of order at most 64).

Mirrors ``starspec._canon`` step for step; see that module for the algorithm.
"""

from libc.stdint cimport uint64_t
from libc.string cimport memcpy

cdef extern from * nogil:
    int popcount "__builtin_popcountll"(unsigned long long)
    int ctz "__builtin_ctzll"(unsigned long long)

cdef enum:
    MAXN = 64

ctypedef struct State:
    int n
    uint64_t rows[MAXN]
    uint64_t best[MAXN]
    int best_order[MAXN]
    int have_best


cdef int _refine(const uint64_t* rows, uint64_t* cells, int ncells) nogil:
    cdef int s = 0, ci, k, v, ng, c
    cdef uint64_t w, cell, m, low
    cdef uint64_t grp[MAXN + 1]
    cdef int split
    while s < ncells:
        w = cells[s]
        split = 0
        for ci in range(ncells):
            cell = cells[ci]
            if (cell & (cell - 1)) == 0:
                continue
            for k in range(MAXN + 1):
                grp[k] = 0
            m = cell
            while m:
                low = m & (~m + 1)
                v = ctz(low)
                m ^= low
                grp[popcount(rows[v] & w)] |= low
            ng = 0
            for k in range(MAXN + 1):
                if grp[k]:
                    ng += 1
            if ng > 1:
                # shift the tail right to make room for ng - 1 extra cells
                k = ncells - 1
                while k > ci:
                    cells[k + ng - 1] = cells[k]
                    k -= 1
                c = ci
                for k in range(MAXN + 1):
                    if grp[k]:
                        cells[c] = grp[k]
                        c += 1
                ncells += ng - 1
                split = 1
                break
        if split:
            s = 0
        else:
            s += 1
    return ncells


cdef int _homogeneous(const uint64_t* rows, const uint64_t* cells, int ncells) nogil:
    cdef int i, j, v, c, size
    for i in range(ncells):
        v = ctz(cells[i])
        for j in range(ncells):
            c = popcount(rows[v] & cells[j])
            size = popcount(cells[j])
            if i == j:
                if c != 0 and c != size - 1:
                    return 0
            elif c != 0 and c != size:
                return 0
    return 1


cdef void _leaf(State* st, const uint64_t* cells, int ncells) nogil:
    cdef int order[MAXN]
    cdef int pos[MAXN]
    cdef uint64_t code[MAXN]
    cdef int p = 0, i, v, u, n = st.n, better
    cdef uint64_t m, low, r
    for i in range(ncells):
        m = cells[i]
        while m:
            low = m & (~m + 1)
            v = ctz(low)
            m ^= low
            order[p] = v
            pos[v] = p
            p += 1
    for p in range(n):
        r = 0
        m = st.rows[order[p]]
        while m:
            low = m & (~m + 1)
            u = ctz(low)
            m ^= low
            r |= (<uint64_t>1) << pos[u]
        code[p] = r
    if st.have_best:
        better = 0
        for p in range(n):
            if code[p] != st.best[p]:
                better = code[p] < st.best[p]
                break
        if not better:
            return
    st.have_best = 1
    memcpy(st.best, code, n * sizeof(uint64_t))
    memcpy(st.best_order, order, n * sizeof(int))


cdef void _search(State* st, const uint64_t* cells_in, int ncells) nogil:
    cdef uint64_t cells[MAXN]
    cdef uint64_t child[MAXN]
    cdef int t, i
    cdef uint64_t target, m, low
    memcpy(cells, cells_in, ncells * sizeof(uint64_t))
    ncells = _refine(st.rows, cells, ncells)
    if ncells == st.n or _homogeneous(st.rows, cells, ncells):
        _leaf(st, cells, ncells)
        return
    t = 0
    while (cells[t] & (cells[t] - 1)) == 0:
        t += 1
    target = cells[t]
    m = target
    while m:
        low = m & (~m + 1)
        m ^= low
        for i in range(t):
            child[i] = cells[i]
        child[t] = low
        child[t + 1] = target ^ low
        for i in range(t + 1, ncells):
            child[i + 1] = cells[i]
        _search(st, child, ncells + 1)


def refine(rows, cells):
    """Compiled counterpart of ``starspec._canon.refine``."""
    cdef uint64_t r[MAXN]
    cdef uint64_t c[MAXN]
    cdef int n = len(rows), k, nc = len(cells)
    if n > MAXN:
        raise ValueError("compiled kernel supports at most 64 vertices")
    for k in range(n):
        r[k] = rows[k]
    for k in range(nc):
        c[k] = cells[k]
    nc = _refine(r, c, nc)
    return [c[k] for k in range(nc)]


def canonical_labelling(rows, cells=None):
    """Compiled counterpart of ``starspec._canon.canonical_labelling``."""
    cdef State st
    cdef uint64_t c[MAXN]
    cdef int n = len(rows), k, nc
    if n > MAXN:
        raise ValueError("compiled kernel supports at most 64 vertices")
    if n == 0:
        return (), []
    st.n = n
    st.have_best = 0
    for k in range(n):
        st.rows[k] = rows[k]
    if cells is None:
        nc = 1
        c[0] = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    else:
        nc = len(cells)
        for k in range(nc):
            c[k] = cells[k]
    with nogil:
        _search(&st, c, nc)
    return tuple(st.best[k] for k in range(n)), [st.best_order[k] for k in range(n)]
