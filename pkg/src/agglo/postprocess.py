"""Postprocessing shared by the NN-chain and MST cores: stable sort by
merge dissimilarity, then union-find relabeling of cluster representatives
into unique node labels (SciPy numbering)."""

from __future__ import annotations

import numpy as np

from .core import StepwiseDendrogram, UnsortedDendrogram


def stable_sort_by_delta(u: UnsortedDendrogram) -> UnsortedDendrogram:
    """Rows in nondecreasing delta order; equal-delta rows keep their input
    order.  Stability is load-bearing for tie correctness, not cosmetic."""
    order = np.argsort(u.rows[:, 2], kind="stable")
    return UnsortedDendrogram(u.rows[order])


class UnionFind:
    """Forest over 2N-1 labels; each union retires both roots under a fresh
    label, numbered consecutively from N."""

    def __init__(self, n: int):
        self.n = n
        # plain list: scalar indexing here is hot in label() below
        self.parent = [-1] * (2 * n - 1)
        self.next_label = n

    def union(self, m: int, k: int) -> int:
        lab = self.next_label
        self.parent[m] = lab
        self.parent[k] = lab
        self.next_label += 1
        return lab

    def find(self, x: int) -> int:
        """Root label of x, with path compression."""
        if not 0 <= x < self.next_label:
            raise ValueError(f"label {x} out of range")
        root = x
        parent = self.parent
        while parent[root] != -1:
            root = parent[root]
        while parent[x] != -1:
            nxt = parent[x]
            parent[x] = root
            x = nxt
        return int(root)

    def find_naive(self, x: int) -> int:
        # Walk-to-root without compression; kept as a differential oracle.
        if not 0 <= x < self.next_label:
            raise ValueError(f"label {x} out of range")
        parent = self.parent
        while parent[x] != -1:
            x = parent[x]
        return int(x)


def label(sorted_dendrogram: UnsortedDendrogram, n: int) -> StepwiseDendrogram:
    """Map representative point indices to unique node labels row by row.
    Rows must already be in final (e.g. stably sorted) order."""
    rows = sorted_dendrogram.rows
    if rows.shape[0] != n - 1:
        raise ValueError(f"expected {n - 1} rows for n={n}, got {rows.shape[0]}")
    out = rows.copy()
    uf = UnionFind(n)
    find, union = uf.find, uf.union
    for i, (a, b, _) in enumerate(rows.tolist()):
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"row {i}: representative out of range")
        la, lb = find(a), find(b)
        out[i, 0] = la
        out[i, 1] = lb
        union(la, lb)
    return StepwiseDendrogram(n, out, "scipy")


def sort_and_label(u: UnsortedDendrogram, n: int) -> StepwiseDendrogram:
    return label(stable_sort_by_delta(u), n)
