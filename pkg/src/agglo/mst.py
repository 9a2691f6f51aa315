"""Single linkage via a Prim-style minimum-spanning-tree scan: every
condensed entry is read exactly once, the input is never written, and the
working memory is a handful of length-n arrays (no full matrix is ever
materialized)."""

from __future__ import annotations

import numpy as np

from .backend import get_kernels
from .core import CondensedMatrix, StepwiseDendrogram, UnsortedDendrogram
from .postprocess import sort_and_label


def mst_linkage_core(d0: CondensedMatrix, start: int = 0, backend: str | None = None) -> UnsortedDendrogram:
    n = d0.n
    if not 0 <= start < n:
        raise ValueError(f"start point {start} out of range for n={n}")
    if n == 1:
        return UnsortedDendrogram(np.empty((0, 3)))
    kernels = get_kernels(backend)
    return UnsortedDendrogram(kernels.mst_core(d0.values, n, start))


def mst_linkage(d0: CondensedMatrix, start: int = 0, backend: str | None = None) -> StepwiseDendrogram:
    if d0.n == 1:
        return StepwiseDendrogram(1, np.empty((0, 3)))
    return sort_and_label(mst_linkage_core(d0, start, backend), d0.n)
