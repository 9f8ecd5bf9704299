# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False, nonecheck=False
"""Compiled hot loops: codeword enumeration and row reduction over GF(p).

Mirrors ``_pykernels`` function for function.  All loops run without the GIL
so distance searches may fan out over threads.
"""
import numpy as np

from libc.stdint cimport int64_t, uint16_t
from libc.stdlib cimport free, malloc

ctypedef uint16_t elem_t


cdef struct Walk:
    const elem_t* table
    int k
    int r
    int p
    int w
    int lead_hi
    elem_t* acc
    int* rows
    int* coefs
    int best
    int64_t* best_msg
    int64_t* hist
    int hist_max
    int64_t count


cdef void _record(Walk* st) noexcept nogil:
    cdef int j
    for j in range(st.k):
        st.best_msg[j] = 0
    for j in range(st.w):
        st.best_msg[st.rows[j]] = st.coefs[j]


cdef void _walk(Walk* st, int depth, int start) noexcept nogil:
    cdef int r = st.r
    cdef int p = st.p
    cdef int i, m, c, s, wt, stop, m_hi
    cdef const elem_t* row
    cdef const elem_t* prev = st.acc + depth * r
    cdef elem_t* cur = st.acc + (depth + 1) * r
    stop = st.k - (st.w - 1 - depth)
    if depth == 0 and st.lead_hi < stop:
        stop = st.lead_hi
    m_hi = p - 1 if depth > 0 else 1
    if depth == st.w - 1:
        for i in range(start, stop):
            for m in range(1, m_hi + 1):
                row = st.table + (i * p + m) * r
                wt = 0
                for c in range(r):
                    s = prev[c] + row[c]
                    wt += (s != 0) & (s != p)
                wt += st.w
                st.count += 1
                if st.hist != NULL and wt <= st.hist_max:
                    st.hist[wt] += 1
                if wt < st.best:
                    st.best = wt
                    st.rows[depth] = i
                    st.coefs[depth] = m
                    _record(st)
    else:
        for i in range(start, stop):
            st.rows[depth] = i
            for m in range(1, m_hi + 1):
                st.coefs[depth] = m
                row = st.table + (i * p + m) * r
                for c in range(r):
                    s = prev[c] + row[c]
                    if s >= p:
                        s -= p
                    cur[c] = <elem_t>s
                _walk(st, depth + 1, i + 1)


def enum_level(const elem_t[:, :, ::1] table, int w, int lead_lo, int lead_hi, int best,
               int64_t[::1] best_msg, int64_t[::1] hist=None):
    """Enumerate projective combinations of exactly ``w`` rows.

    ``table[i, m]`` holds ``m`` times the non-pivot part of row ``i``.  The
    codeword weight is ``w`` plus the weight of the combined non-pivot part.
    The first chosen row lies in ``[lead_lo, lead_hi)`` and carries
    coefficient 1.  Returns ``(best, count)``; ``best_msg`` is overwritten
    whenever a weight below the incoming ``best`` is found.
    """
    cdef Walk st
    cdef int k = table.shape[0]
    cdef int p = table.shape[1]
    cdef int r = table.shape[2]
    cdef elem_t dummy_tab = 0
    if w < 1 or w > k or lead_lo >= lead_hi:
        return best, 0
    st.table = &table[0, 0, 0] if r > 0 else &dummy_tab
    st.k = k
    st.r = r
    st.p = p
    st.w = w
    st.lead_hi = lead_hi
    st.best = best
    st.count = 0
    st.best_msg = &best_msg[0]
    if hist is None:
        st.hist = NULL
        st.hist_max = -1
    else:
        st.hist = &hist[0]
        st.hist_max = hist.shape[0] - 1
    st.acc = <elem_t*>malloc(sizeof(elem_t) * (w + 1) * (r + 1))
    st.rows = <int*>malloc(sizeof(int) * w)
    st.coefs = <int*>malloc(sizeof(int) * w)
    if st.acc == NULL or st.rows == NULL or st.coefs == NULL:
        free(st.acc)
        free(st.rows)
        free(st.coefs)
        raise MemoryError()
    for i in range(r):
        st.acc[i] = 0
    with nogil:
        _walk(&st, 0, lead_lo)
    free(st.acc)
    free(st.rows)
    free(st.coefs)
    return st.best, st.count


def gray_min_weight(const elem_t[:, ::1] gen, int p, int64_t[::1] best_msg):
    """Minimum weight over all projective messages, by reflected p-ary Gray code.

    Messages are grouped by their leading nonzero position, which is fixed to
    1; the tail digits walk a Gray code so each step adds or subtracts a
    single generator row.  Returns ``(best, count)``.
    """
    cdef int k = gen.shape[0]
    cdef int n = gen.shape[1]
    cdef int best = n + 1
    cdef int64_t count = 0
    cdef int lead, t, j, c, wt, nd, s
    cdef int* acc = <int*>malloc(sizeof(int) * (n + 1))
    cdef int* digits = <int*>malloc(sizeof(int) * (k + 1))
    cdef int* dirs = <int*>malloc(sizeof(int) * (k + 1))
    if acc == NULL or digits == NULL or dirs == NULL:
        free(acc)
        free(digits)
        free(dirs)
        raise MemoryError()
    with nogil:
        for lead in range(k):
            t = k - 1 - lead
            for c in range(n):
                acc[c] = gen[lead, c]
            for j in range(t):
                digits[j] = 0
                dirs[j] = 1
            while True:
                wt = 0
                for c in range(n):
                    wt += acc[c] != 0
                count += 1
                if wt < best:
                    best = wt
                    for j in range(k):
                        best_msg[j] = 0
                    best_msg[lead] = 1
                    for j in range(t):
                        best_msg[lead + 1 + j] = digits[j]
                j = 0
                nd = 0
                while j < t:
                    nd = digits[j] + dirs[j]
                    if nd >= 0 and nd < p:
                        break
                    dirs[j] = -dirs[j]
                    j += 1
                if j == t:
                    break
                digits[j] = nd
                if dirs[j] > 0:
                    for c in range(n):
                        s = acc[c] + gen[lead + 1 + j, c]
                        if s >= p:
                            s -= p
                        acc[c] = s
                else:
                    for c in range(n):
                        s = acc[c] - gen[lead + 1 + j, c]
                        if s < 0:
                            s += p
                        acc[c] = s
    free(acc)
    free(digits)
    free(dirs)
    return best, count


def rref_inplace(int64_t[:, ::1] g, const int64_t[::1] order, int p,
                 const int64_t[::1] inv_table, int64_t[::1] pivots):
    """Row reduce ``g`` in place, taking pivot columns in ``order``.

    Returns the number of pivots; ``pivots[:rank]`` receives the pivot
    columns with row ``i`` holding the leading 1 of ``pivots[i]``.
    """
    cdef Py_ssize_t rows = g.shape[0]
    cdef Py_ssize_t cols = g.shape[1]
    cdef Py_ssize_t r = 0
    cdef Py_ssize_t oi, i, j, c, piv
    cdef int64_t f, tmp
    with nogil:
        for oi in range(order.shape[0]):
            if r == rows:
                break
            c = order[oi]
            piv = -1
            for i in range(r, rows):
                if g[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    tmp = g[r, j]
                    g[r, j] = g[piv, j]
                    g[piv, j] = tmp
            f = inv_table[g[r, c]]
            if f != 1:
                for j in range(cols):
                    g[r, j] = g[r, j] * f % p
            for i in range(rows):
                if i != r and g[i, c] != 0:
                    f = p - g[i, c]
                    for j in range(cols):
                        g[i, j] = (g[i, j] + f * g[r, j]) % p
            pivots[r] = c
            r += 1
    return r
