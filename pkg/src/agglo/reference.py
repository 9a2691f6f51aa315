"""Reference machinery: the O(n^3) primitive clustering algorithm, a replay
validator that decides whether a candidate dendrogram is one of its possible
outputs, and exhaustive enumeration of all tie resolutions for small inputs.

The validator is the correctness oracle for every advanced algorithm in this
package: an output is correct iff the primitive algorithm could have produced
it under some resolution of ties.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CondensedMatrix, Method, StepwiseDendrogram, check_structure, convert_convention
from .formulas import update_distance

#: Methods whose update arithmetic stays exact on integer-valued input
#: (min/max and halving only), so replays match bit-for-bit.
_EXACT_ON_INTEGERS = ("single", "complete", "weighted")


def default_tolerance(d0: CondensedMatrix, m: Method) -> float:
    """Zero only where reordered replays cannot introduce rounding; 1e-12
    relative otherwise."""
    if d0.is_integer_valued and m.kind in _EXACT_ON_INTEGERS:
        return 0.0
    return 1e-12


def _working_matrix(d0: CondensedMatrix, m: Method) -> np.ndarray:
    mat = d0.square(squared=m.uses_squared)
    np.fill_diagonal(mat, np.inf)
    return mat


def _emit_delta(value: float, m: Method) -> float:
    return float(np.sqrt(value)) if m.uses_squared else float(value)


def _minimal_label_pairs(mat, labels, active):
    """All (label_a, label_b, slot_a, slot_b) pairs attaining the current
    minimum, sorted lexicographically by label pair."""
    m = mat.min()
    si, sj = np.nonzero(np.triu(mat == m, k=1))
    pairs = []
    for a, b in zip(si, sj):
        la, lb = int(labels[a]), int(labels[b])
        if la > lb:
            la, lb, a, b = lb, la, b, a
        pairs.append((la, lb, int(a), int(b)))
    pairs.sort()
    return pairs, m


def _apply_merge(mat, labels, sizes, m: Method, sa: int, sb: int, new_label: int):
    """Merge the clusters in slots sa, sb; the merged cluster keeps slot sa."""
    dab = mat[sa, sb]
    alive = np.isfinite(mat).any(axis=1)
    alive[sa] = alive[sb] = False
    act = np.flatnonzero(alive)
    if act.size:
        new = update_distance(m, mat[sa, act], mat[sb, act], dab, sizes[sa], sizes[sb], sizes[act])
        mat[sa, act] = new
        mat[act, sa] = new
    sizes[sa] = sizes[sa] + sizes[sb]
    labels[sa] = new_label
    mat[sb, :] = np.inf
    mat[:, sb] = np.inf


def primitive_clustering(d0: CondensedMatrix, m: Method, tie_break=None) -> StepwiseDendrogram:
    """Procedural definition, executed literally: n-1 global argmin scans
    with Lance-Williams updates.  Ties default to the lexicographically
    smallest label pair; pass a callable (pairs -> pair) to override."""
    n = d0.n
    mat = _working_matrix(d0, m)
    labels = np.arange(n, dtype=np.int64)
    sizes = np.ones(n)
    rows = np.empty((n - 1, 3))
    for step in range(n - 1):
        pairs, _ = _minimal_label_pairs(mat, labels, None)
        if tie_break is None:
            la, lb, sa, sb = pairs[0]
        else:
            la, lb, sa, sb = tie_break(pairs)
        rows[step] = (la, lb, _emit_delta(mat[sa, sb], m))
        _apply_merge(mat, labels, sizes, m, sa, sb, n + step)
    return StepwiseDendrogram(n, rows, "scipy")


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    step: int | None = None
    reason: str | None = None

    def __bool__(self):
        return self.valid


def validate_dendrogram(
    d0: CondensedMatrix, m: Method, cand: StepwiseDendrogram, tol: float | None = None
) -> ValidationResult:
    """Replay the primitive algorithm with the merge choices dictated by
    the candidate.  Valid iff at every step both labels are alive, the
    merged pair attains the global minimum within tol, and the recorded
    delta matches the replayed dissimilarity within tol."""
    if cand.n != d0.n:
        return ValidationResult(False, 0, f"structure: candidate is for n={cand.n}, matrix has n={d0.n}")
    cand = convert_convention(cand, "scipy")
    try:
        check_structure(cand)
    except ValueError as exc:
        return ValidationResult(False, 0, f"structure: {exc}")
    if tol is None:
        tol = default_tolerance(d0, m)

    n = d0.n
    mat = _working_matrix(d0, m)
    sizes = np.ones(n)
    labels = np.arange(n, dtype=np.int64)
    node_slot = np.full(2 * n - 1, -1, dtype=np.intp)
    node_slot[:n] = np.arange(n)
    for step in range(n - 1):
        a, b = int(cand.rows[step, 0]), int(cand.rows[step, 1])
        delta = float(cand.rows[step, 2])
        sa, sb = int(node_slot[a]), int(node_slot[b])
        dab = mat[sa, sb]
        current_min = mat.min()
        if dab > current_min * (1.0 + tol):
            return ValidationResult(
                False, step, f"pair ({a},{b}) has dissimilarity {dab!r}, not minimal (min is {current_min!r})"
            )
        recorded = delta * delta if m.uses_squared else delta
        if abs(recorded - dab) > tol * max(abs(recorded), abs(dab)):
            return ValidationResult(False, step, f"recorded delta {delta!r} does not match replayed value")
        # pass (d[a,x], size[a]) / (d[b,x], size[b]) in the candidate's own
        # pair order so the replay arithmetic matches the producer's
        dab_val = mat[sa, sb]
        alive = np.isfinite(mat).any(axis=1)
        alive[sa] = alive[sb] = False
        act = np.flatnonzero(alive)
        if act.size:
            new = update_distance(m, mat[sa, act], mat[sb, act], dab_val, sizes[sa], sizes[sb], sizes[act])
            mat[sa, act] = new
            mat[act, sa] = new
        sizes[sa] = sizes[sa] + sizes[sb]
        mat[sb, :] = np.inf
        mat[:, sb] = np.inf
        node_slot[n + step] = sa
        labels[sa] = n + step
    return ValidationResult(True)


def enumerate_valid_dendrograms(d0: CondensedMatrix, m: Method, max_points: int = 8):
    """Every dendrogram obtainable from the primitive algorithm under any
    tie resolution.  Exponential in the number of ties; guarded to small n."""
    n = d0.n
    if n > max_points:
        raise ValueError(f"enumeration is limited to n <= {max_points}, got n={n}")
    results: list[StepwiseDendrogram] = []
    mat = _working_matrix(d0, m)
    labels = np.arange(n, dtype=np.int64)
    sizes = np.ones(n)

    def recurse(mat, labels, sizes, step, rows):
        if step == n - 1:
            results.append(StepwiseDendrogram(n, np.array(rows).reshape(n - 1, 3), "scipy"))
            return
        pairs, _ = _minimal_label_pairs(mat, labels, None)
        for la, lb, sa, sb in pairs:
            mat2, labels2, sizes2 = mat.copy(), labels.copy(), sizes.copy()
            delta = _emit_delta(mat2[sa, sb], m)
            _apply_merge(mat2, labels2, sizes2, m, sa, sb, n + step)
            recurse(mat2, labels2, sizes2, step + 1, rows + [(la, lb, delta)])

    recurse(mat, labels, sizes, 0, [])
    return results


def canonical_rows(d: StepwiseDendrogram) -> np.ndarray:
    """Rows with each label pair in ascending order (within-row pair order
    is not significant)."""
    rows = convert_convention(d, "scipy").rows.copy()
    lo = np.minimum(rows[:, 0], rows[:, 1])
    hi = np.maximum(rows[:, 0], rows[:, 1])
    rows[:, 0], rows[:, 1] = lo, hi
    return rows


def same_dendrogram(d1: StepwiseDendrogram, d2: StepwiseDendrogram, tol: float = 1e-12) -> bool:
    if d1.n != d2.n:
        return False
    r1, r2 = canonical_rows(d1), canonical_rows(d2)
    if not np.array_equal(r1[:, :2], r2[:, :2]):
        return False
    scale = np.maximum(np.abs(r1[:, 2]), np.abs(r2[:, 2]))
    return bool(np.all(np.abs(r1[:, 2] - r2[:, 2]) <= tol * scale))


def dendrogram_in(d: StepwiseDendrogram, collection, tol: float = 1e-12) -> bool:
    return any(same_dendrogram(d, other, tol) for other in collection)
