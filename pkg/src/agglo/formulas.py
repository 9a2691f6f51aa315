"""Lance-Williams distance updates for all schemes, closed-form cluster
dissimilarities used as brute-force oracles, and reducibility sampling.

For ward/centroid/median the update runs on SQUARED dissimilarities and the
result stays squared; callers take the square root only when a merge row is
emitted.  The pure-Python and compiled kernels mirror the exact operation
order used here so that replays agree bit-for-bit on exact inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CondensedMatrix, Method, MethodError

#: Integer codes shared with the compiled kernels.
METHOD_CODES = {
    "single": 0,
    "complete": 1,
    "average": 2,
    "weighted": 3,
    "ward": 4,
    "centroid": 5,
    "median": 6,
    "flexible": 7,
}


def method_code_and_coeffs(m: Method):
    """(code, alpha_i, alpha_j, beta, gamma) for kernel dispatch; the four
    coefficients are only meaningful for the flexible family."""
    code = METHOD_CODES[m.kind]
    if m.kind == "flexible":
        return code, m.alpha_i, m.alpha_j, m.beta, m.gamma
    return code, 0.0, 0.0, 0.0, 0.0


def update_distance(m: Method, d_ik, d_jk, d_ij, n_i, n_j, n_k):
    """Dissimilarity from the merged cluster I u J to K.  Accepts scalars or
    numpy arrays in the K slots (d_ik, d_jk, n_k).  Squared in/out for
    ward/centroid/median."""
    _check_sizes(n_i, n_j, n_k)
    kind = m.kind
    if kind == "single":
        return np.minimum(d_ik, d_jk)
    if kind == "complete":
        return np.maximum(d_ik, d_jk)
    if kind == "average":
        return (n_i * d_ik + n_j * d_jk) / (n_i + n_j)
    if kind == "weighted":
        return 0.5 * (d_ik + d_jk)
    if kind == "ward":
        return ((n_i + n_k) * d_ik + (n_j + n_k) * d_jk - n_k * d_ij) / (n_i + n_j + n_k)
    if kind == "centroid":
        s = n_i + n_j
        return (n_i * d_ik + n_j * d_jk) / s - (n_i * n_j * d_ij) / (s * s)
    if kind == "median":
        return 0.5 * d_ik + 0.5 * d_jk - 0.25 * d_ij
    # flexible
    return m.alpha_i * d_ik + m.alpha_j * d_jk + m.beta * d_ij + m.gamma * np.abs(d_ik - d_jk)


def _check_sizes(n_i, n_j, n_k):
    if np.any(np.asarray(n_i) < 1) or np.any(np.asarray(n_j) < 1) or np.any(np.asarray(n_k) < 1):
        raise ValueError("cluster sizes must be positive")


def flexible_coefficients(kind: str, n_i: int, n_j: int, n_k: int):
    """Coefficients (alpha_i, alpha_j, beta, gamma) of the combined
    four-term formula for a named scheme at the given cluster sizes.
    Squared-dissimilarity semantics for ward/centroid/median."""
    _check_sizes(n_i, n_j, n_k)
    if kind == "single":
        return (0.5, 0.5, 0.0, -0.5)
    if kind == "complete":
        return (0.5, 0.5, 0.0, 0.5)
    if kind == "average":
        s = n_i + n_j
        return (n_i / s, n_j / s, 0.0, 0.0)
    if kind == "weighted":
        return (0.5, 0.5, 0.0, 0.0)
    if kind == "ward":
        s = n_i + n_j + n_k
        return ((n_i + n_k) / s, (n_j + n_k) / s, -n_k / s, 0.0)
    if kind == "centroid":
        s = n_i + n_j
        return (n_i / s, n_j / s, -(n_i * n_j) / (s * s), 0.0)
    if kind == "median":
        return (0.5, 0.5, -0.25, 0.0)
    if kind == "flexible":
        raise ValueError("flexible already carries explicit coefficients")
    raise ValueError(f"unknown method kind {kind!r}")


def closed_form_dissimilarity(m: Method, a_set, b_set, d0: CondensedMatrix) -> float:
    """Non-iterative cluster dissimilarity between disjoint point sets;
    order-independence oracle.  Supports single/complete/average/ward only
    (the remaining schemes are order-dependent or need vector input)."""
    a_set = sorted(set(int(x) for x in a_set))
    b_set = sorted(set(int(x) for x in b_set))
    if not a_set or not b_set:
        raise ValueError("clusters must be nonempty")
    if set(a_set) & set(b_set):
        raise ValueError("clusters must be disjoint")
    for x in a_set + b_set:
        if not 0 <= x < d0.n:
            raise ValueError(f"point index {x} out of range")
    if m.kind not in ("single", "complete", "average", "ward"):
        raise MethodError(f"no closed form for method {m.kind!r}")

    sq = d0.square()
    cross = sq[np.ix_(a_set, b_set)]
    if m.kind == "single":
        return float(cross.min())
    if m.kind == "complete":
        return float(cross.max())
    if m.kind == "average":
        return float(cross.mean())
    # ward: within-cluster double sums include both orders and the zero
    # diagonal, matching the sum over all (a, a') pairs
    na, nb = len(a_set), len(b_set)
    cross2 = float((cross * cross).sum())
    within_a = sq[np.ix_(a_set, a_set)]
    within_b = sq[np.ix_(b_set, b_set)]
    wa2 = float((within_a * within_a).sum())
    wb2 = float((within_b * within_b).sum())
    val = (2.0 * cross2 - (nb / na) * wa2 - (na / nb) * wb2) / (na + nb)
    return float(np.sqrt(max(val, 0.0)))


@dataclass(frozen=True)
class ReducibilityReport:
    ok: bool
    counterexample: tuple | None = None

    def __bool__(self):
        return self.ok


def check_reducibility(m: Method, trials: int = 10_000, seed: int = 0) -> ReducibilityReport:
    """Sample random triples satisfying d(I,J) <= min(d(I,K), d(J,K)) and
    test whether min(d(I,K), d(J,K)) <= d(I u J, K).  Returns the first
    counterexample found, if any."""
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        d_ik = float(rng.uniform(0.0, 2.0))
        d_jk = float(rng.uniform(0.0, 2.0))
        lo = min(d_ik, d_jk)
        d_ij = float(rng.uniform(0.0, 1.0)) * lo
        n_i, n_j, n_k = (int(x) for x in rng.integers(1, 5, size=3))
        updated = float(update_distance(m, d_ik, d_jk, d_ij, n_i, n_j, n_k))
        if updated < lo * (1.0 - 1e-9):
            return ReducibilityReport(False, (d_ik, d_jk, d_ij, n_i, n_j, n_k, updated))
    return ReducibilityReport(True)
