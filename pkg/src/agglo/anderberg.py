"""Nearest-neighbor-list baseline: exact per-node nearest neighbors with
eager re-searching after every merge.  Correct for all schemes, but the
eager re-searches blow up cubically on centroid/median workloads; the
benchmark module uses it as the comparison point for generic linkage."""

from __future__ import annotations

import numpy as np

from .backend import get_kernels, working_matrix
from .core import CondensedMatrix, Method, StepwiseDendrogram, UnsortedDendrogram
from .formulas import method_code_and_coeffs
from .postprocess import label


def anderberg_linkage_with_stats(d0: CondensedMatrix, m: Method, backend: str | None = None):
    """(dendrogram, recalculation count); the counter has the same meaning
    as the generic-linkage one, so the two are directly comparable."""
    n = d0.n
    if n == 1:
        return StepwiseDendrogram(1, np.empty((0, 3))), 0
    kernels = get_kernels(backend)
    mat = working_matrix(d0, m)
    code, a_i, a_j, beta, gamma = method_code_and_coeffs(m)
    rows, recalcs = kernels.anderberg_core(mat, n, code, a_i, a_j, beta, gamma)
    if m.uses_squared:
        rows[:, 2] = np.sqrt(rows[:, 2])
    return label(UnsortedDendrogram(rows), n), recalcs


def anderberg_linkage(d0: CondensedMatrix, m: Method, backend: str | None = None) -> StepwiseDendrogram:
    return anderberg_linkage_with_stats(d0, m, backend)[0]
