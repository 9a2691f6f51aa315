# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled clustering kernels.

Mirrors _pycore.py operation-for-operation: identical update expressions
(compiled with FP contraction disabled), identical lowest-index argmin tie
handling, and an inline binary heap that performs the same operation
sequence as heap.MinPriorityQueue, so both backends produce bit-identical
output on the same input.  See _pycore.py for the kernel contract.

``check_invariants`` is accepted for signature compatibility but only the
pure-Python backend executes the invariant assertions.
"""

import numpy as np

cimport cython
from libc.math cimport INFINITY, fabs

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define AGGLO_PREFETCH(p) __builtin_prefetch((p), 0, 1)
    #else
    #define AGGLO_PREFETCH(p)
    #endif
    """
    void AGGLO_PREFETCH(const double *p) nogil

BACKEND_NAME = "cython"

DEF PREFETCH_AHEAD = 16


cdef inline double _upd(int code, double d_ik, double d_jk, double d_ij,
                        double n_i, double n_j, double n_k,
                        double a_i, double a_j, double beta, double gamma) noexcept nogil:
    cdef double s
    if code == 0:  # single
        return d_ik if d_ik < d_jk else d_jk
    if code == 1:  # complete
        return d_ik if d_ik > d_jk else d_jk
    if code == 2:  # average
        return (n_i * d_ik + n_j * d_jk) / (n_i + n_j)
    if code == 3:  # weighted
        return 0.5 * (d_ik + d_jk)
    if code == 4:  # ward (squared)
        return ((n_i + n_k) * d_ik + (n_j + n_k) * d_jk - n_k * d_ij) / (n_i + n_j + n_k)
    if code == 5:  # centroid (squared)
        s = n_i + n_j
        return (n_i * d_ik + n_j * d_jk) / s - ((n_i * n_j) * d_ij) / (s * s)
    if code == 6:  # median (squared)
        return 0.5 * d_ik + 0.5 * d_jk - 0.25 * d_ij
    # flexible
    return a_i * d_ik + a_j * d_jk + beta * d_ij + gamma * fabs(d_ik - d_jk)


cdef inline Py_ssize_t _row_argmin(double[:, ::1] mat, Py_ssize_t r, Py_ssize_t lo, Py_ssize_t n) noexcept nogil:
    # lowest index on ties, matching np.argmin
    cdef Py_ssize_t best = lo, s
    cdef double bestd = mat[r, lo]
    for s in range(lo + 1, n):
        if mat[r, s] < bestd:
            best = s
            bestd = mat[r, s]
    return best


cdef inline Py_ssize_t _cond_idx(Py_ssize_t n, Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    # condensed offset of the unordered pair (i, j), i != j
    cdef Py_ssize_t lo, hi
    if i < j:
        lo = i
        hi = j
    else:
        lo = j
        hi = i
    return n * lo - lo * (lo + 1) // 2 + (hi - lo - 1)


cdef inline Py_ssize_t _cond_argmin_alive(double[::1] dd, Py_ssize_t n, Py_ssize_t a,
                                          Py_ssize_t[::1] alive, Py_ssize_t m_alive,
                                          double* out_key) noexcept nogil:
    # lowest index on ties; alive holds the live slots in ascending order,
    # so scanning it with a strict < keeps np.argmin's tie behavior
    cdef Py_ssize_t best = -1, s, t
    cdef double bd = INFINITY, v
    for t in range(m_alive):
        if t + PREFETCH_AHEAD < m_alive:
            AGGLO_PREFETCH(&dd[_cond_idx(n, a, alive[t + PREFETCH_AHEAD])])
        s = alive[t]
        if s == a:
            continue
        v = dd[_cond_idx(n, a, s)]
        if v < bd:
            bd = v
            best = s
    out_key[0] = bd
    return best


# ---------------------------------------------------------------------------
# inline indexed binary min-heap (same operation sequence as heap.py)

cdef void _sift_up(double* key, Py_ssize_t* heap, Py_ssize_t* pos, Py_ssize_t slot) noexcept nogil:
    cdef Py_ssize_t i = heap[slot], parent, p
    cdef double k = key[i]
    while slot > 0:
        parent = (slot - 1) >> 1
        p = heap[parent]
        if key[p] <= k:
            break
        heap[slot] = p
        pos[p] = slot
        slot = parent
    heap[slot] = i
    pos[i] = slot


cdef void _sift_down(double* key, Py_ssize_t* heap, Py_ssize_t* pos,
                     Py_ssize_t size, Py_ssize_t slot) noexcept nogil:
    cdef Py_ssize_t i = heap[slot], child, right, c
    cdef double k = key[i]
    while True:
        child = 2 * slot + 1
        if child >= size:
            break
        right = child + 1
        if right < size and key[heap[right]] < key[heap[child]]:
            child = right
        c = heap[child]
        if k <= key[c]:
            break
        heap[slot] = c
        pos[c] = slot
        slot = child
    heap[slot] = i
    pos[i] = slot


cdef void _heap_update(double* key, Py_ssize_t* heap, Py_ssize_t* pos,
                       Py_ssize_t size, Py_ssize_t i, double newkey) noexcept nogil:
    cdef double old = key[i]
    key[i] = newkey
    if newkey < old:
        _sift_up(key, heap, pos, pos[i])
    elif newkey > old:
        _sift_down(key, heap, pos, size, pos[i])


cdef Py_ssize_t _heap_remove_min(double* key, Py_ssize_t* heap, Py_ssize_t* pos,
                                 Py_ssize_t* size) noexcept nogil:
    cdef Py_ssize_t i = heap[0], last
    pos[i] = -1
    size[0] -= 1
    last = heap[size[0]]
    if 0 != size[0]:
        heap[0] = last
        pos[last] = 0
        _sift_down(key, heap, pos, size[0], 0)
        _sift_up(key, heap, pos, 0)
    return i


# ---------------------------------------------------------------------------


def mst_core(const double[::1] values, Py_ssize_t n, Py_ssize_t start=0):
    rows_arr = np.empty((n - 1, 3))
    cdef double[:, ::1] rows = rows_arr
    dist_arr = np.full(n, np.inf)
    cdef double[::1] dist = dist_arr
    in_set_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] in_set = in_set_arr
    cdef Py_ssize_t c = start, i, s, nxt, idx
    cdef double d
    with nogil:
        for i in range(n - 1):
            in_set[c] = 1
            dist[c] = INFINITY
            for s in range(n):
                if not in_set[s]:
                    if s < c:
                        idx = n * s - s * (s + 1) // 2 + (c - s - 1)
                    else:
                        idx = n * c - c * (c + 1) // 2 + (s - c - 1)
                    d = values[idx]
                    if d < dist[s]:
                        dist[s] = d
            nxt = 0
            d = dist[0]
            for s in range(1, n):
                if dist[s] < d:
                    nxt = s
                    d = dist[s]
            rows[i, 0] = <double> c
            rows[i, 1] = <double> nxt
            rows[i, 2] = dist[nxt]
            c = nxt
    return rows_arr


def nnchain_core(double[::1] dd, Py_ssize_t n, int code,
                 double a_i=0.0, double a_j=0.0, double beta=0.0, double gamma=0.0,
                 check_invariants=False):
    rows_arr = np.empty((n - 1, 3))
    cdef double[:, ::1] rows = rows_arr
    size_arr = np.ones(n)
    cdef double[::1] size = size_arr
    active_arr = np.ones(n, dtype=np.uint8)
    cdef unsigned char[::1] active = active_arr
    alive_arr = np.arange(n, dtype=np.intp)  # live slots, ascending
    cdef Py_ssize_t[::1] alive = alive_arr
    chain_arr = np.empty(n + 4, dtype=np.intp)
    cdef Py_ssize_t[::1] chain = chain_arr
    cdef Py_ssize_t chain_len = 0, m_alive = n, nrow = 0
    cdef Py_ssize_t a, b, best, c, s, t, lo, hi
    cdef double bestd, cd, dab
    with nogil:
        while m_alive > 1:
            if chain_len <= 3:
                a = alive[0]
                chain[0] = a
                chain_len = 1
                b = alive[1]
            else:
                a = chain[chain_len - 4]
                b = chain[chain_len - 3]
                chain_len -= 3
            while True:
                if active[b]:
                    best = b
                    bestd = dd[_cond_idx(n, a, b)]
                else:
                    best = -1
                    bestd = INFINITY
                c = _cond_argmin_alive(dd, n, a, alive, m_alive, &cd)
                if cd < bestd:
                    best = c
                    bestd = cd
                b = a
                a = best
                chain[chain_len] = a
                chain_len += 1
                if chain_len >= 3 and a == chain[chain_len - 3]:
                    break
            dab = dd[_cond_idx(n, a, b)]
            rows[nrow, 0] = <double> a
            rows[nrow, 1] = <double> b
            rows[nrow, 2] = dab
            nrow += 1
            if a < b:
                lo = a
                hi = b
            else:
                lo = b
                hi = a
            active[lo] = 0
            t = 0
            while alive[t] != lo:
                t += 1
            while t < m_alive - 1:
                alive[t] = alive[t + 1]
                t += 1
            m_alive -= 1
            for t in range(m_alive):
                if t + PREFETCH_AHEAD < m_alive:
                    s = alive[t + PREFETCH_AHEAD]
                    AGGLO_PREFETCH(&dd[_cond_idx(n, a, s)])
                    AGGLO_PREFETCH(&dd[_cond_idx(n, b, s)])
                s = alive[t]
                if s != hi:
                    dd[_cond_idx(n, hi, s)] = _upd(code, dd[_cond_idx(n, a, s)],
                                                   dd[_cond_idx(n, b, s)], dab,
                                                   size[a], size[b], size[s],
                                                   a_i, a_j, beta, gamma)
            size[hi] = size[a] + size[b]
    return rows_arr


def generic_core(double[:, ::1] mat, Py_ssize_t n, int code,
                 double a_i=0.0, double a_j=0.0, double beta=0.0, double gamma=0.0,
                 check_invariants=False):
    rows_arr = np.empty((n - 1, 3))
    cdef double[:, ::1] rows = rows_arr
    size_arr = np.ones(n)
    cdef double[::1] size = size_arr
    active_arr = np.ones(n, dtype=np.uint8)
    cdef unsigned char[::1] active = active_arr
    nnghbr_arr = np.full(n, -1, dtype=np.intp)
    cdef Py_ssize_t[::1] nnghbr = nnghbr_arr
    mindist_arr = np.full(n, np.inf)
    cdef double[::1] mindist = mindist_arr
    key_arr = np.zeros(max(n - 1, 1))
    heap_arr = np.empty(max(n - 1, 1), dtype=np.intp)
    pos_arr = np.full(max(n - 1, 1), -1, dtype=np.intp)
    cdef double[::1] key = key_arr
    cdef Py_ssize_t[::1] heap = heap_arr
    cdef Py_ssize_t[::1] pos = pos_arr
    cdef Py_ssize_t hsize = n - 1
    cdef Py_ssize_t recalcs = 0
    cdef Py_ssize_t i, x, a, b, slot
    cdef double delta, dab
    with nogil:
        for x in range(n - 1):
            nnghbr[x] = _row_argmin(mat, x, x + 1, n)
            mindist[x] = mat[x, nnghbr[x]]
            key[x] = mindist[x]
            heap[x] = x
            pos[x] = x
        for slot in range(hsize // 2 - 1, -1, -1):
            _sift_down(&key[0], &heap[0], &pos[0], hsize, slot)
        for i in range(n - 1):
            a = heap[0]
            b = nnghbr[a]
            delta = mindist[a]
            while delta != mat[a, b]:
                # stale lower bound: recompute the true nearest neighbor of a
                nnghbr[a] = _row_argmin(mat, a, a + 1, n)
                mindist[a] = mat[a, nnghbr[a]]
                _heap_update(&key[0], &heap[0], &pos[0], hsize, a, mindist[a])
                recalcs += 1
                a = heap[0]
                b = nnghbr[a]
                delta = mindist[a]
            _heap_remove_min(&key[0], &heap[0], &pos[0], &hsize)
            rows[i, 0] = <double> a
            rows[i, 1] = <double> b
            rows[i, 2] = delta
            dab = mat[a, b]
            active[a] = 0
            for x in range(n):
                if active[x] and x != b:
                    mat[b, x] = _upd(code, mat[a, x], mat[b, x], dab,
                                     size[a], size[b], size[x], a_i, a_j, beta, gamma)
                    mat[x, b] = mat[b, x]
            size[b] = size[a] + size[b]
            for x in range(n):
                mat[a, x] = INFINITY
                mat[x, a] = INFINITY
            for x in range(a):
                if active[x] and nnghbr[x] == a:
                    nnghbr[x] = b
            for x in range(b):
                if active[x]:
                    if mat[x, b] < mindist[x]:
                        nnghbr[x] = b
                        mindist[x] = mat[x, b]
                        _heap_update(&key[0], &heap[0], &pos[0], hsize, x, mindist[x])
            if b < n - 1 and pos[b] != -1:
                nnghbr[b] = _row_argmin(mat, b, b + 1, n)
                mindist[b] = mat[b, nnghbr[b]]
                _heap_update(&key[0], &heap[0], &pos[0], hsize, b, mindist[b])
    return rows_arr, int(recalcs)


def anderberg_core(double[:, ::1] mat, Py_ssize_t n, int code,
                   double a_i=0.0, double a_j=0.0, double beta=0.0, double gamma=0.0):
    rows_arr = np.empty((n - 1, 3))
    cdef double[:, ::1] rows = rows_arr
    size_arr = np.ones(n)
    cdef double[::1] size = size_arr
    active_arr = np.ones(n, dtype=np.uint8)
    cdef unsigned char[::1] active = active_arr
    nn_arr = np.full(n, -1, dtype=np.intp)
    cdef Py_ssize_t[::1] nn = nn_arr
    mindist_arr = np.full(n, np.inf)
    cdef double[::1] mindist = mindist_arr
    cdef Py_ssize_t recalcs = 0
    cdef Py_ssize_t i, x, a, b, s
    cdef double dab, best
    cdef bint any_later
    with nogil:
        for x in range(n - 1):
            nn[x] = _row_argmin(mat, x, x + 1, n)
            mindist[x] = mat[x, nn[x]]
        for i in range(n - 1):
            a = 0
            best = mindist[0]
            for x in range(1, n):
                if mindist[x] < best:
                    a = x
                    best = mindist[x]
            b = nn[a]
            rows[i, 0] = <double> a
            rows[i, 1] = <double> b
            rows[i, 2] = mat[a, b]
            dab = mat[a, b]
            active[a] = 0
            mindist[a] = INFINITY
            for x in range(n):
                if active[x] and x != b:
                    mat[b, x] = _upd(code, mat[a, x], mat[b, x], dab,
                                     size[a], size[b], size[x], a_i, a_j, beta, gamma)
                    mat[x, b] = mat[b, x]
            size[b] = size[a] + size[b]
            for x in range(n):
                mat[a, x] = INFINITY
                mat[x, a] = INFINITY
            for x in range(b):
                if active[x]:
                    if nn[x] == a or nn[x] == b:
                        nn[x] = _row_argmin(mat, x, x + 1, n)
                        mindist[x] = mat[x, nn[x]]
                        recalcs += 1
                    elif mat[x, b] < mindist[x]:
                        nn[x] = b
                        mindist[x] = mat[x, b]
            any_later = False
            for s in range(b + 1, n):
                if active[s]:
                    any_later = True
                    break
            if any_later:
                nn[b] = _row_argmin(mat, b, b + 1, n)
                mindist[b] = mat[b, nn[b]]
            else:
                nn[b] = -1
                mindist[b] = INFINITY
    return rows_arr, int(recalcs)
