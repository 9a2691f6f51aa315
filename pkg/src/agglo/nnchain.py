"""Nearest-neighbor-chain linkage: reciprocal-nearest-neighbor chains for
the five schemes whose update formulas are reducible and order-independent
(single, complete, average, weighted, ward).  Centroid and median are
rejected: without reducibility the chain can merge a non-minimal pair and
produce an invalid dendrogram.  Flexible coefficients are rejected even
when reducible, because order-independence cannot be checked mechanically
and reducibility alone is insufficient."""

from __future__ import annotations

import numpy as np

from .backend import get_kernels, working_condensed
from .core import CondensedMatrix, Method, MethodError, StepwiseDendrogram, UnsortedDendrogram
from .formulas import method_code_and_coeffs
from .postprocess import sort_and_label

CHAIN_METHODS = ("single", "complete", "average", "weighted", "ward")


def _check_method(m: Method) -> None:
    if m.kind not in CHAIN_METHODS:
        raise MethodError(
            f"nn-chain linkage requires a reducible, order-independent update scheme; "
            f"{m.kind!r} is not one of {CHAIN_METHODS}"
        )


def nn_chain_core(d0: CondensedMatrix, m: Method, backend: str | None = None) -> UnsortedDendrogram:
    """Unsorted merge triples with representative labels (the larger
    representative of each merged pair carries the cluster onward)."""
    _check_method(m)
    return _nn_chain_core_unchecked(d0, m, backend)


def _nn_chain_core_unchecked(d0, m, backend=None, check_invariants=False):
    # Whitelist bypass for negative fixtures that demonstrate why
    # non-order-independent schemes are rejected.
    n = d0.n
    if n == 1:
        return UnsortedDendrogram(np.empty((0, 3)))
    kernels = get_kernels(backend)
    mat = working_condensed(d0, m)
    code, a_i, a_j, beta, gamma = method_code_and_coeffs(m)
    rows = kernels.nnchain_core(mat, n, code, a_i, a_j, beta, gamma, check_invariants=check_invariants)
    if m.uses_squared:
        rows[:, 2] = np.sqrt(rows[:, 2])
    return UnsortedDendrogram(rows)


def nn_chain_linkage(d0: CondensedMatrix, m: Method, backend: str | None = None) -> StepwiseDendrogram:
    """Chain core, stably sorted by merge dissimilarity, relabeled."""
    _check_method(m)
    return sort_and_label(_nn_chain_core_unchecked(d0, m, backend), d0.n)


def _nn_chain_linkage_unchecked(d0, m, backend=None) -> StepwiseDendrogram:
    return sort_and_label(_nn_chain_core_unchecked(d0, m, backend), d0.n)
