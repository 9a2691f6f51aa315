"""Shared domain types: condensed dissimilarity matrix, linkage method
descriptor, stepwise and unsorted dendrograms, label conventions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import squareform

NAMED_METHODS = ("single", "complete", "average", "weighted", "ward", "centroid", "median")

#: Methods whose Lance-Williams recurrence operates on squared dissimilarities.
SQUARED_METHODS = frozenset({"ward", "centroid", "median"})

CONVENTIONS = ("scipy", "r", "matlab")


class MethodError(ValueError):
    """Linkage method not usable with the requested algorithm."""


class DataError(ValueError):
    """Input values violate the dissimilarity-index contract."""


def condensed_index(i: int, j: int, n: int) -> int:
    """Offset of the pair (i, j), i < j, in the strict upper triangle
    stored row-major."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got i={i}, j={j}, n={n}")
    return n * i - i * (i + 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class Method:
    """Distance update scheme: one of the seven named schemes, or the
    parameterized 'flexible' family with explicit coefficients."""

    kind: str
    alpha_i: float | None = None
    alpha_j: float | None = None
    beta: float | None = None
    gamma: float | None = None

    def __post_init__(self):
        coeffs = (self.alpha_i, self.alpha_j, self.beta, self.gamma)
        if self.kind == "flexible":
            if any(c is None for c in coeffs):
                raise ValueError("flexible method requires all four coefficients")
        elif self.kind in NAMED_METHODS:
            if any(c is not None for c in coeffs):
                raise ValueError(f"named method {self.kind!r} carries no coefficients")
        else:
            raise ValueError(f"unknown method kind {self.kind!r}")

    @classmethod
    def flexible(cls, alpha_i: float, alpha_j: float, beta: float, gamma: float) -> "Method":
        return cls("flexible", float(alpha_i), float(alpha_j), float(beta), float(gamma))

    @property
    def may_invert(self) -> bool:
        """True for schemes that can produce inversions in the dendrogram."""
        return self.kind in ("centroid", "median", "flexible")

    @property
    def uses_squared(self) -> bool:
        """True if internal updates run on squared dissimilarities."""
        return self.kind in SQUARED_METHODS


class CondensedMatrix:
    """Pairwise dissimilarities for n points, stored as the strict upper
    triangle in row-major order.  Values are immutable after construction;
    symmetry and a zero diagonal are implied by the storage."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values):
        if n < 1:
            raise ValueError("point count must be positive")
        values = np.ascontiguousarray(values, dtype=np.float64)
        expected = n * (n - 1) // 2
        if values.shape != (expected,):
            raise ValueError(f"expected {expected} values for n={n}, got {values.shape}")
        if expected and not np.all(np.isfinite(values)):
            raise DataError("dissimilarities must be finite")
        if expected and np.any(values < 0):
            raise DataError("dissimilarities must be nonnegative")
        values.setflags(write=False)
        self.n = int(n)
        self.values = values

    @classmethod
    def from_square(cls, sq) -> "CondensedMatrix":
        sq = np.asarray(sq, dtype=np.float64)
        return cls(sq.shape[0], squareform(sq, checks=False))

    def value(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        if i > j:
            i, j = j, i
        return float(self.values[condensed_index(i, j, self.n)])

    def square(self, squared: bool = False) -> np.ndarray:
        """Fresh writable full matrix; with squared=True the entries are
        the squares of the stored dissimilarities."""
        vals = self.values * self.values if squared else self.values
        if self.n == 1:
            return np.zeros((1, 1))
        return squareform(vals)

    @property
    def is_integer_valued(self) -> bool:
        return bool(np.all(self.values == np.floor(self.values)))

    def __eq__(self, other):
        return (
            isinstance(other, CondensedMatrix)
            and self.n == other.n
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return f"CondensedMatrix(n={self.n})"


def _as_rows(rows) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.float64)
    if rows.size == 0:
        return rows.reshape(0, 3)
    if rows.ndim != 2 or rows.shape[1] != 3:
        raise ValueError("merge rows must form an (m, 3) array")
    return rows


@dataclass(frozen=True)
class UnsortedDendrogram:
    """Core-algorithm output: merge triples whose first two columns hold
    cluster representatives (original point indices), pre-sort and
    pre-relabel."""

    rows: np.ndarray = field(default_factory=lambda: np.empty((0, 3)))

    def __post_init__(self):
        object.__setattr__(self, "rows", _as_rows(self.rows))


@dataclass(frozen=True)
class StepwiseDendrogram:
    """List of n-1 merge triples (a, b, delta) under a label convention."""

    n: int
    rows: np.ndarray
    convention: str = "scipy"

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")
        object.__setattr__(self, "rows", _as_rows(self.rows))

    def pairs(self):
        """Iterate (a, b) label pairs as ints."""
        for a, b, _ in self.rows:
            yield int(a), int(b)

    def deltas(self) -> np.ndarray:
        return self.rows[:, 2]


def check_structure(d: StepwiseDendrogram) -> None:
    """Structural validity: n-1 rows, labels in the convention's range,
    no label merged twice.  Raises ValueError on violation."""
    n = d.n
    if d.rows.shape[0] != n - 1:
        raise ValueError(f"expected {n - 1} rows, got {d.rows.shape[0]}")
    labels = d.rows[:, :2]
    if not np.all(labels == np.floor(labels)):
        raise ValueError("node labels must be integers")
    if np.any(d.rows[:, 2] < 0):
        raise ValueError("merge dissimilarities must be nonnegative")
    merged = set()
    for i, (a, b) in enumerate(d.pairs()):
        if a == b:
            raise ValueError(f"row {i} merges a label with itself")
        for lab in (a, b):
            if not _label_in_range(lab, i, n, d.convention):
                raise ValueError(f"row {i}: label {lab} out of range for {d.convention}")
            if lab in merged:
                raise ValueError(f"row {i}: label {lab} merged twice")
            merged.add(lab)


def _label_in_range(lab: int, row: int, n: int, convention: str) -> bool:
    if convention == "scipy":
        return 0 <= lab < n + row
    if convention == "r":
        return -n <= lab <= -1 or 1 <= lab <= row
    # matlab
    return 1 <= lab < n + row + 1


def _to_scipy_label(lab: int, n: int, convention: str) -> int:
    if convention == "scipy":
        return lab
    if convention == "r":
        return -lab - 1 if lab < 0 else n + lab - 1
    return lab - 1  # matlab shifts every label by one


def _from_scipy_label(lab: int, n: int, convention: str) -> int:
    if convention == "scipy":
        return lab
    if convention == "r":
        return -(lab + 1) if lab < n else lab - n + 1
    return lab + 1


def convert_convention(d: StepwiseDendrogram, target: str) -> StepwiseDendrogram:
    """Relabel singletons and new nodes per the target convention; deltas
    and row order are unchanged."""
    if target not in CONVENTIONS:
        raise ValueError(f"unknown convention {target!r}")
    if target == d.convention:
        return d
    rows = d.rows.copy()
    for i in range(rows.shape[0]):
        for col in (0, 1):
            lab = _to_scipy_label(int(rows[i, col]), d.n, d.convention)
            rows[i, col] = _from_scipy_label(lab, d.n, target)
    return StepwiseDendrogram(d.n, rows, target)
