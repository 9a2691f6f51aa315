"""Clustering directly from stored points: on-the-fly MST single linkage
for arbitrary metrics, a variant of generic linkage for the three geometric
schemes (ward/centroid/median) driven by cluster centers, and a
chain-over-centroids mode for ward.

Center semantics: ward and centroid maintain the size-weighted mean of the
member points; median maintains the recursive midpoint.  Inter-cluster
dissimilarities come from the centers alone:

* centroid: ||c_A - c_B||
* median:   ||w_A - w_B||
* ward:     sqrt(2|A||B| / (|A|+|B|)) * ||c_A - c_B||
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist

from .core import CondensedMatrix, DataError, Method, MethodError, StepwiseDendrogram, UnsortedDendrogram
from .heap import MinPriorityQueue
from .postprocess import sort_and_label

CENTER_METHODS = ("ward", "centroid", "median")


@dataclass(frozen=True)
class VectorDataset:
    """n points in a dim-dimensional real vector space."""

    coords: np.ndarray = field()

    def __post_init__(self):
        coords = np.ascontiguousarray(self.coords, dtype=np.float64)
        if coords.ndim == 1:
            coords = coords.reshape(-1, 1)
        if coords.ndim != 2 or coords.shape[0] < 1 or coords.shape[1] < 1:
            raise ValueError("coordinates must form an (n, dim) array with n, dim >= 1")
        if not np.all(np.isfinite(coords)):
            raise DataError("coordinates must be finite")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]


def _metric_row(coords: np.ndarray, c: int, metric) -> np.ndarray:
    """Dissimilarities from point c to every point (entry c is 0)."""
    if metric == "euclidean":
        diff = coords - coords[c]
        return np.sqrt(np.einsum("ij,ij->i", diff, diff))
    if metric in ("sqeuclidean", "squared_euclidean"):
        diff = coords - coords[c]
        return np.einsum("ij,ij->i", diff, diff)
    row = np.array([float(metric(coords[c], coords[j])) for j in range(coords.shape[0])])
    if not np.all(np.isfinite(row)) or np.any(row < 0):
        raise DataError("metric must return finite nonnegative values")
    return row


def pairwise_dissimilarity(ds: VectorDataset, metric="euclidean") -> CondensedMatrix:
    """Materialize the condensed matrix of pairwise dissimilarities."""
    if metric == "euclidean":
        vals = pdist(ds.coords, "euclidean") if ds.n > 1 else np.empty(0)
    elif metric in ("sqeuclidean", "squared_euclidean"):
        vals = pdist(ds.coords, "sqeuclidean") if ds.n > 1 else np.empty(0)
    elif callable(metric):
        n = ds.n
        vals = np.empty(n * (n - 1) // 2)
        k = 0
        for i in range(n - 1):
            for j in range(i + 1, n):
                vals[k] = float(metric(ds.coords[i], ds.coords[j]))
                k += 1
    else:
        raise ValueError(f"unknown metric {metric!r}")
    return CondensedMatrix(ds.n, vals)


def mst_linkage_vectors(ds: VectorDataset, metric="euclidean") -> StepwiseDendrogram:
    """Single linkage with distances computed on the fly; auxiliary memory
    stays O(n) and the full matrix is never materialized."""
    n = ds.n
    if n == 1:
        return StepwiseDendrogram(1, np.empty((0, 3)))
    rows = np.empty((n - 1, 3))
    dist_to_set = np.full(n, np.inf)
    in_set = np.zeros(n, dtype=bool)
    c = 0
    for i in range(n - 1):
        in_set[c] = True
        dist_to_set[c] = np.inf
        row = _metric_row(ds.coords, c, metric)
        row[c] = np.inf
        np.minimum(dist_to_set, row, where=~in_set, out=dist_to_set)
        nxt = int(np.argmin(dist_to_set))  # lowest index on ties
        rows[i] = (c, nxt, dist_to_set[nxt])
        c = nxt
    return sort_and_label(UnsortedDendrogram(rows), n)


def _check_center_method(m: Method) -> None:
    if m.kind not in CENTER_METHODS:
        raise MethodError(
            f"center-based clustering supports only {CENTER_METHODS}; "
            f"{m.kind!r} has no cluster-center representation"
        )


def _center_dist(kind: str, center_a, centers, size_a, sizes):
    """Dissimilarity from one cluster to each of a batch of clusters."""
    diff = centers - center_a
    d = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    if kind == "ward":
        d = np.sqrt(2.0 * size_a * sizes / (size_a + sizes)) * d
    return d


def _merged_center(kind: str, center_a, center_b, size_a, size_b):
    if kind == "median":
        return 0.5 * (center_a + center_b)
    return (size_a * center_a + size_b * center_b) / (size_a + size_b)


def generic_linkage_variant(
    ds: VectorDataset, m: Method, return_centers: bool = False
) -> StepwiseDendrogram:
    """Generic linkage over cluster centers.  Every merge creates a fresh
    cluster that ranks below all existing ones in the candidate ordering,
    so the candidate-repair loops of the matrix algorithm disappear: a
    queue entry is stale exactly when its recorded neighbor is dead, and
    inter-cluster distances never change while both clusters live."""
    _check_center_method(m)
    n = ds.n
    nslots = 2 * n - 1
    centers = np.empty((nslots, ds.dim))
    centers[:n] = ds.coords
    sizes = np.ones(nslots)
    active = np.zeros(nslots, dtype=bool)
    active[:n] = True
    # rank orders the candidate sets: cluster x is responsible for the pair
    # (x, y) iff rank[y] > rank[x]; fresh clusters get ever-smaller ranks
    rank = np.empty(nslots, dtype=np.int64)
    rank[:n] = np.arange(n)
    nnghbr = np.full(nslots, -1, dtype=np.intp)
    queue = MinPriorityQueue(nslots)
    for x in range(n - 1):
        d = _center_dist(m.kind, centers[x], centers[x + 1 : n], sizes[x], sizes[x + 1 : n])
        k = int(np.argmin(d))
        nnghbr[x] = x + 1 + k
        queue.insert(x, d[k])
    rows = np.empty((n - 1, 3))
    for j in range(n - 1):
        while True:
            a = queue.argmin()
            b = int(nnghbr[a])
            if active[b]:
                break
            cand = np.flatnonzero(active & (rank > rank[a]))
            cand = cand[cand != a]
            if cand.size == 0:
                # every pair involving a is owned by a lower-ranked cluster
                queue.remove(a)
                continue
            d = _center_dist(m.kind, centers[a], centers[cand], sizes[a], sizes[cand])
            k = int(np.argmin(d))
            nnghbr[a] = cand[k]
            queue.update(a, d[k])
        delta = queue.key(a)
        queue.remove_min()
        if b in queue:
            queue.remove(b)
        rows[j] = (a, b, delta)
        s = n + j  # slot index doubles as the output node label
        active[a] = active[b] = False
        centers[s] = _merged_center(m.kind, centers[a], centers[b], sizes[a], sizes[b])
        sizes[s] = sizes[a] + sizes[b]
        rank[s] = -(j + 1)
        active[s] = True
        others = np.flatnonzero(active)
        others = others[others != s]
        if others.size:
            d = _center_dist(m.kind, centers[s], centers[others], sizes[s], sizes[others])
            k = int(np.argmin(d))
            nnghbr[s] = others[k]
            queue.insert(s, d[k])
    out = StepwiseDendrogram(n, rows, "scipy")
    if return_centers:
        return out, centers
    return out


def nn_chain_linkage_vectors(ds: VectorDataset, m: Method = Method("ward")) -> StepwiseDendrogram:
    """Chain-of-nearest-neighbors linkage fed by center distances instead
    of a stored matrix.  Ward only: among the center-based schemes it is
    the only reducible, order-independent one."""
    if m.kind != "ward":
        raise MethodError("vector-mode chain linkage supports ward only")
    n = ds.n
    if n == 1:
        return StepwiseDendrogram(1, np.empty((0, 3)))
    centers = ds.coords.copy()
    sizes = np.ones(n)
    active = np.ones(n, dtype=bool)
    n_active = n
    rows = np.empty((n - 1, 3))
    nrow = 0
    chain: list[int] = []
    b = -1

    def dist_row(a):
        d = _center_dist("ward", centers[a], centers, sizes[a], sizes)
        d[~active] = np.inf
        d[a] = np.inf
        return d

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
        while True:
            row = dist_row(a)
            if active[b]:
                best, bestd = b, row[b]
            else:
                best, bestd = -1, np.inf
            c = int(np.argmin(row))
            if row[c] < bestd:
                best, bestd = c, row[c]
            a, b = best, a
            chain.append(a)
            if len(chain) >= 3 and a == chain[-3]:
                break
        dab = float(dist_row(a)[b])
        rows[nrow] = (a, b, dab)
        nrow += 1
        lo, hi = (a, b) if a < b else (b, a)
        centers[hi] = _merged_center("ward", centers[a], centers[b], sizes[a], sizes[b])
        sizes[hi] = sizes[a] + sizes[b]
        active[lo] = False
        n_active -= 1
    return sort_and_label(UnsortedDendrogram(rows), n)
