"""Synthetic workload generation and timing harness.

Workloads: Gaussian mixtures in low or high dimension, and i.i.d. uniform
dissimilarity matrices.  Each plan cell runs one (algorithm, method, n)
combination for a number of repeats; one record is emitted per repeat so
min/max bands can be recomputed downstream.  Timing excludes data
generation and result validation.  Outputs are spot-checked against the
replay validator (every run for n <= 200, one in ten above).
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass

import numpy as np

from .anderberg import anderberg_linkage_with_stats
from .core import CondensedMatrix, Method, MethodError, NAMED_METHODS
from .generic import generic_linkage_with_stats
from .mst import mst_linkage
from .nnchain import CHAIN_METHODS, nn_chain_linkage
from .reference import primitive_clustering, validate_dendrogram
from .vector import CENTER_METHODS, VectorDataset, generic_linkage_variant, pairwise_dissimilarity

CSV_HEADER = ("algorithm", "method", "n", "dim", "modes", "seed", "repeat", "seconds", "recalculations")

#: algorithm name -> set of legal method kinds
ALGORITHM_METHODS = {
    "primitive": set(NAMED_METHODS) | {"flexible"},
    "generic": set(NAMED_METHODS) | {"flexible"},
    "nnchain": set(CHAIN_METHODS),
    "mst": {"single"},
    "anderberg": set(NAMED_METHODS) | {"flexible"},
    "generic-variant": set(CENTER_METHODS),
}

#: algorithms that must be fed points, not a matrix
VECTOR_ALGORITHMS = {"generic-variant"}

VALIDATE_ALL_BELOW = 200
SPOT_SAMPLE_EVERY = 10


@dataclass(frozen=True)
class BenchmarkRecord:
    algorithm: str
    method: str
    n: int
    dim: int | None
    modes: int | None
    seed: int
    repeat: int
    seconds: float
    recalculations: int


def gen_gaussian_mixture(n: int, dim: int, modes: int, seed: int, center_spread: float | None = None) -> VectorDataset:
    """n points from a mixture of `modes` unit-covariance Gaussians whose
    centers are themselves Gaussian with per-coordinate standard deviation
    center_spread (default sqrt(modes), for moderate overlap)."""
    if n < 1 or dim < 1 or modes < 1:
        raise ValueError("n, dim and modes must be positive")
    if center_spread is None:
        center_spread = float(np.sqrt(modes))
    rng = np.random.default_rng(seed)
    centers = rng.normal(0.0, center_spread, size=(modes, dim))
    assignment = rng.integers(0, modes, size=n)
    coords = centers[assignment] + rng.normal(0.0, 1.0, size=(n, dim))
    return VectorDataset(coords)


def gen_uniform_dissimilarities(n: int, seed: int) -> CondensedMatrix:
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    return CondensedMatrix(n, rng.uniform(0.0, 1.0, size=n * (n - 1) // 2))


def _run_one(algorithm: str, method: Method, matrix, dataset):
    """(dendrogram, recalculation count); timing wraps this call only."""
    if algorithm == "primitive":
        return primitive_clustering(matrix, method), 0
    if algorithm == "generic":
        return generic_linkage_with_stats(matrix, method)
    if algorithm == "nnchain":
        return nn_chain_linkage(matrix, method), 0
    if algorithm == "mst":
        return mst_linkage(matrix), 0
    if algorithm == "anderberg":
        return anderberg_linkage_with_stats(matrix, method)
    if algorithm == "generic-variant":
        return generic_linkage_variant(dataset, method), 0
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _check_plan(plan) -> None:
    for i, cell in enumerate(plan):
        algorithm = cell["algorithm"]
        kind = cell["method"]
        if algorithm not in ALGORITHM_METHODS:
            raise ValueError(f"plan cell {i}: unknown algorithm {algorithm!r}")
        if kind not in ALGORITHM_METHODS[algorithm]:
            raise MethodError(
                f"plan cell {i}: method {kind!r} is not legal for {algorithm!r} "
                f"(allowed: {sorted(ALGORITHM_METHODS[algorithm])})"
            )
        if cell.get("generator", "gaussian") not in ("gaussian", "uniform"):
            raise ValueError(f"plan cell {i}: unknown generator {cell['generator']!r}")
        if algorithm in VECTOR_ALGORITHMS and cell.get("generator", "gaussian") != "gaussian":
            raise ValueError(f"plan cell {i}: {algorithm} needs point data, not a matrix generator")


def run_benchmark(plan, validate: bool = True) -> list[BenchmarkRecord]:
    """Run every cell sequentially.  Cell keys: algorithm, method, n,
    generator ('gaussian' default, or 'uniform'), dim, modes, seed,
    repeats (default 3), center_spread (optional)."""
    _check_plan(plan)
    records: list[BenchmarkRecord] = []
    run_index = 0
    for cell in plan:
        algorithm = cell["algorithm"]
        kind = cell["method"]
        method = Method(kind)
        n = int(cell["n"])
        seed = int(cell.get("seed", 0))
        repeats = int(cell.get("repeats", 3))
        generator = cell.get("generator", "gaussian")
        if generator == "gaussian":
            dim = int(cell.get("dim", 3))
            modes = int(cell.get("modes", 5))
            dataset = gen_gaussian_mixture(n, dim, modes, seed, cell.get("center_spread"))
            matrix = None
            if algorithm not in VECTOR_ALGORITHMS:
                matrix = pairwise_dissimilarity(dataset, "euclidean")
        else:
            dim = modes = None
            dataset = None
            matrix = gen_uniform_dissimilarities(n, seed)
        for repeat in range(repeats):
            t0 = time.perf_counter()
            dendrogram, recalcs = _run_one(algorithm, method, matrix, dataset)
            seconds = time.perf_counter() - t0
            if validate and (n <= VALIDATE_ALL_BELOW or run_index % SPOT_SAMPLE_EVERY == 0):
                check_matrix = matrix if matrix is not None else pairwise_dissimilarity(dataset)
                tol = 1e-9 if algorithm in VECTOR_ALGORITHMS else None
                result = validate_dendrogram(check_matrix, method, dendrogram, tol=tol)
                if not result:
                    raise AssertionError(
                        f"benchmark output failed validation: {algorithm}/{kind} n={n} "
                        f"seed={seed} step={result.step}: {result.reason}"
                    )
            run_index += 1
            records.append(
                BenchmarkRecord(algorithm, kind, n, dim, modes, seed, repeat, seconds, int(recalcs))
            )
    return records


def write_csv(records, fileobj) -> None:
    """One row per record; empty cells for absent dim/modes."""
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            [
                r.algorithm,
                r.method,
                r.n,
                "" if r.dim is None else r.dim,
                "" if r.modes is None else r.modes,
                r.seed,
                r.repeat,
                repr(r.seconds),
                r.recalculations,
            ]
        )


def median_seconds(records, algorithm: str, method: str, n: int) -> float:
    vals = [r.seconds for r in records if (r.algorithm, r.method, r.n) == (algorithm, method, n)]
    if not vals:
        raise ValueError(f"no records for {algorithm}/{method}/n={n}")
    return float(np.median(vals))
