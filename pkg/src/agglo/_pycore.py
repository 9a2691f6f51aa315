"""Pure-Python (numpy-assisted) clustering kernels.

Fallback backend used when the compiled extension is unavailable; the
compiled kernels in _speedups.pyx mirror these loops operation-for-operation
so both backends produce bit-identical output.

Kernel contract:

* ``generic_core`` and ``anderberg_core`` receive a writable full
  dissimilarity matrix with +inf on the diagonal (already squared for
  ward/centroid/median) and destroy it.
* ``nnchain_core`` receives a writable condensed array (squared for the
  squared-form methods) and destroys it.
* ``mst_core`` receives the read-only condensed array and never writes it.
* Merge rows carry cluster *representatives* (original point indices).
  ``generic_core`` and ``anderberg_core`` emit rows in merge order;
  ``nnchain_core`` and ``mst_core`` emit unsorted rows.
* Recalculation counters count deferred/invalidated nearest-neighbor row
  searches only; the unconditional search for the merged cluster's new
  neighbor is excluded on both sides so the counters are comparable.
"""

from __future__ import annotations

import numpy as np

from .heap import MinPriorityQueue

BACKEND_NAME = "python"


def _update(code, d_ik, d_jk, d_ij, n_i, n_j, n_k, a_i, a_j, beta, gamma):
    # Operation order must match the compiled kernel exactly.
    if code == 0:  # single
        return np.minimum(d_ik, d_jk)
    if code == 1:  # complete
        return np.maximum(d_ik, d_jk)
    if code == 2:  # average
        return (n_i * d_ik + n_j * d_jk) / (n_i + n_j)
    if code == 3:  # weighted
        return 0.5 * (d_ik + d_jk)
    if code == 4:  # ward (squared)
        return ((n_i + n_k) * d_ik + (n_j + n_k) * d_jk - n_k * d_ij) / (n_i + n_j + n_k)
    if code == 5:  # centroid (squared)
        s = n_i + n_j
        return (n_i * d_ik + n_j * d_jk) / s - (n_i * n_j * d_ij) / (s * s)
    if code == 6:  # median (squared)
        return 0.5 * d_ik + 0.5 * d_jk - 0.25 * d_ij
    # flexible
    return a_i * d_ik + a_j * d_jk + beta * d_ij + gamma * np.abs(d_ik - d_jk)


def mst_core(values: np.ndarray, n: int, start: int = 0) -> np.ndarray:
    """Prim-style single linkage scan: reads each condensed entry once,
    never mutates the input, keeps only O(n) scratch."""
    rows = np.empty((n - 1, 3))
    dist_to_set = np.full(n, np.inf)
    in_set = np.zeros(n, dtype=bool)
    c = start
    for i in range(n - 1):
        in_set[c] = True
        dist_to_set[c] = np.inf
        row = _condensed_row(values, n, c)
        np.minimum(dist_to_set, row, where=~in_set, out=dist_to_set)
        nxt = int(np.argmin(dist_to_set))  # lowest index on ties
        rows[i] = (c, nxt, dist_to_set[nxt])
        c = nxt
    return rows


def _condensed_row(values, n, c):
    """Distances from point c to every point, gathered from the condensed
    upper triangle.  Entry c itself is +inf so it never wins a min."""
    row = np.empty(n)
    if c > 0:
        i = np.arange(c)
        row[:c] = values[n * i - i * (i + 1) // 2 + (c - i - 1)]
    row[c] = np.inf
    if c < n - 1:
        base = n * c - c * (c + 1) // 2
        row[c + 1 :] = values[base : base + (n - c - 1)]
    return row


def _condensed_indices(n, c, s):
    """Condensed offsets of the pairs (c, s) for an index array s != c."""
    lo = np.minimum(s, c)
    hi = np.maximum(s, c)
    return n * lo - lo * (lo + 1) // 2 + (hi - lo - 1)


def nnchain_core(dd, n, code, a_i=0.0, a_j=0.0, beta=0.0, gamma=0.0, check_invariants=False):
    """Reciprocal-nearest-neighbor chains on the condensed array (half the
    memory of a full matrix); requires a reducible, order-independent
    update scheme for correct output."""
    rows = np.empty((n - 1, 3))
    size = np.ones(n)
    active = np.ones(n, dtype=bool)
    n_active = n
    chain: list[int] = []
    b = -1
    nrow = 0
    while n_active > 1:
        if len(chain) <= 3:
            live = np.flatnonzero(active)
            a = int(live[0])
            chain = [a]
            b = int(live[1])
        else:
            a = chain[-4]
            b = chain[-3]
            del chain[-3:]
        # grow the chain until it ends in a reciprocal pair
        while True:
            row = np.where(active, _condensed_row(dd, n, a), np.inf)  # dead slots skipped
            if active[b]:
                best, bestd = b, row[b]
            else:
                best, bestd = -1, np.inf
            c = int(np.argmin(row))  # slot a itself stays +inf
            if row[c] < bestd:
                best, bestd = c, row[c]
            if check_invariants:
                assert active[best] and best != a
                assert bestd == np.min(row)
            a, b = best, a
            chain.append(a)
            if len(chain) >= 3 and a == chain[-3]:
                break
        dab = float(dd[_condensed_indices(n, a, np.array([b]))[0]])
        rows[nrow] = (a, b, dab)
        nrow += 1
        lo, hi = (a, b) if a < b else (b, a)
        active[lo] = False
        n_active -= 1
        act = np.flatnonzero(active)
        act = act[act != hi]
        if act.size:
            d_a = dd[_condensed_indices(n, a, act)]
            d_b = dd[_condensed_indices(n, b, act)]
            new = _update(code, d_a, d_b, dab, size[a], size[b], size[act], a_i, a_j, beta, gamma)
            dd[_condensed_indices(n, hi, act)] = new
        size[hi] = size[a] + size[b]
    return rows


def generic_core(mat, n, code, a_i=0.0, a_j=0.0, beta=0.0, gamma=0.0, check_invariants=False):
    """Candidate nearest neighbors with lower-bound distances in a priority
    queue; handles every update scheme, including inverting ones.  Returns
    (rows in merge order, recalculation count)."""
    rows = np.empty((n - 1, 3))
    size = np.ones(n)
    active = np.ones(n, dtype=bool)
    nnghbr = np.full(n, -1, dtype=np.intp)
    mindist = np.full(n, np.inf)
    for x in range(n - 1):
        j = int(np.argmin(mat[x, x + 1 :]))
        nnghbr[x] = x + 1 + j
        mindist[x] = mat[x, nnghbr[x]]
    queue = MinPriorityQueue.from_keys(mindist[: n - 1])
    recalcs = 0
    for i in range(n - 1):
        if check_invariants:
            _assert_lower_bounds(mat, active, mindist, queue, n)
        a = queue.argmin()
        b = int(nnghbr[a])
        delta = mindist[a]
        while delta != mat[a, b]:
            # stale lower bound: recompute the true nearest neighbor of a
            j = int(np.argmin(mat[a, a + 1 :]))
            nnghbr[a] = a + 1 + j
            mindist[a] = mat[a, nnghbr[a]]
            queue.update(a, mindist[a])
            recalcs += 1
            a = queue.argmin()
            b = int(nnghbr[a])
            delta = mindist[a]
        queue.remove_min()
        rows[i] = (a, b, delta)
        dab = mat[a, b]
        active[a] = False
        act = np.flatnonzero(active)
        act = act[act != b]
        if act.size:
            new = _update(code, mat[a, act], mat[b, act], dab, size[a], size[b], size[act], a_i, a_j, beta, gamma)
            mat[b, act] = new
            mat[act, b] = new
        size[b] = size[a] + size[b]
        mat[a, :] = np.inf
        mat[:, a] = np.inf
        below_a = act[act < a]
        repair = below_a[nnghbr[below_a] == a]
        nnghbr[repair] = b
        for x in act[act < b]:
            if mat[x, b] < mindist[x]:
                nnghbr[x] = b
                mindist[x] = mat[x, b]
                queue.update(x, mindist[x])
        if b in queue:
            j = int(np.argmin(mat[b, b + 1 :]))
            nnghbr[b] = b + 1 + j
            mindist[b] = mat[b, nnghbr[b]]
            queue.update(b, mindist[b])
    return rows, recalcs


def _assert_lower_bounds(mat, active, mindist, queue, n):
    for x in range(n - 1):
        if active[x] and x in queue:
            true_min = np.min(mat[x, x + 1 :])
            assert mindist[x] <= true_min, (x, mindist[x], true_min)


def anderberg_core(mat, n, code, a_i=0.0, a_j=0.0, beta=0.0, gamma=0.0):
    """Exact per-node nearest-neighbor lists with eager re-searching after
    each merge.  Returns (rows in merge order, recalculation count)."""
    rows = np.empty((n - 1, 3))
    size = np.ones(n)
    active = np.ones(n, dtype=bool)
    nn = np.full(n, -1, dtype=np.intp)
    mindist = np.full(n, np.inf)
    for x in range(n - 1):
        j = int(np.argmin(mat[x, x + 1 :]))
        nn[x] = x + 1 + j
        mindist[x] = mat[x, nn[x]]
    recalcs = 0
    for i in range(n - 1):
        a = int(np.argmin(mindist))
        b = int(nn[a])
        rows[i] = (a, b, mat[a, b])
        dab = mat[a, b]
        active[a] = False
        mindist[a] = np.inf
        act = np.flatnonzero(active)
        act = act[act != b]
        if act.size:
            new = _update(code, mat[a, act], mat[b, act], dab, size[a], size[b], size[act], a_i, a_j, beta, gamma)
            mat[b, act] = new
            mat[act, b] = new
        size[b] = size[a] + size[b]
        mat[a, :] = np.inf
        mat[:, a] = np.inf
        for x in act[act < b]:
            if nn[x] == a or nn[x] == b:
                j = int(np.argmin(mat[x, x + 1 :]))
                nn[x] = x + 1 + j
                mindist[x] = mat[x, nn[x]]
                recalcs += 1
            elif mat[x, b] < mindist[x]:
                nn[x] = b
                mindist[x] = mat[x, b]
        if b < n - 1 and np.any(active[b + 1 :]):
            j = int(np.argmin(mat[b, b + 1 :]))
            nn[b] = b + 1 + j
            mindist[b] = mat[b, nn[b]]
        else:
            nn[b] = -1
            mindist[b] = np.inf
    return rows, recalcs
