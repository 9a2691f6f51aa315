"""Generic linkage: candidate nearest neighbors with lower-bound distances
in a min-priority queue.  Works for every update scheme, including the
inverting ones (centroid, median, flexible); output rows appear in merge
order, so inversions are representable."""

from __future__ import annotations

import numpy as np

from .backend import get_kernels, working_matrix
from .core import CondensedMatrix, Method, StepwiseDendrogram, UnsortedDendrogram
from .formulas import method_code_and_coeffs
from .postprocess import label


def generic_linkage_with_stats(
    d0: CondensedMatrix, m: Method, backend: str | None = None, check_invariants: bool = False
):
    """(dendrogram, recalculation count).  The counter is the number of
    deferred nearest-neighbor recomputations triggered by stale lower
    bounds; it stays 0 for single linkage."""
    n = d0.n
    if n == 1:
        return StepwiseDendrogram(1, np.empty((0, 3))), 0
    kernels = get_kernels(backend)
    mat = working_matrix(d0, m)
    code, a_i, a_j, beta, gamma = method_code_and_coeffs(m)
    rows, recalcs = kernels.generic_core(mat, n, code, a_i, a_j, beta, gamma, check_invariants=check_invariants)
    if m.uses_squared:
        rows[:, 2] = np.sqrt(rows[:, 2])
    return label(UnsortedDendrogram(rows), n), recalcs


def generic_linkage(d0: CondensedMatrix, m: Method, backend: str | None = None) -> StepwiseDendrogram:
    return generic_linkage_with_stats(d0, m, backend)[0]
