"""Command-line front end.

Subcommands: cluster (matrix or vector input -> dendrogram on stdout or a
file), validate (matrix + candidate dendrogram -> verdict), bench (JSON
plan -> CSV).  Exit codes: 0 success, 1 I/O or parse errors, 2 illegal
algorithm/method combination, 3 validation rejected the candidate.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .anderberg import anderberg_linkage
from .bench import run_benchmark, write_csv
from .core import (
    CondensedMatrix,
    DataError,
    Method,
    MethodError,
    NAMED_METHODS,
    StepwiseDendrogram,
    convert_convention,
)
from .generic import generic_linkage
from .mst import mst_linkage
from .nnchain import CHAIN_METHODS, nn_chain_linkage
from .reference import primitive_clustering, validate_dendrogram
from .vector import CENTER_METHODS, VectorDataset, generic_linkage_variant, mst_linkage_vectors, pairwise_dissimilarity

EXIT_OK = 0
EXIT_IO = 1
EXIT_ILLEGAL_PAIR = 2
EXIT_INVALID = 3


class ParseError(ValueError):
    pass


def parse_matrix_file(path: str) -> CondensedMatrix:
    """First token: point count n; then exactly n(n-1)/2 whitespace-
    separated nonnegative reals in condensed row-major order.  Lines
    starting with # are comments."""
    with open(path, encoding="utf-8") as fh:
        tokens = []
        for line in fh:
            stripped = line.strip()
            if stripped.startswith("#"):
                continue
            tokens.extend(stripped.split())
    if not tokens:
        raise ParseError(f"{path}: empty matrix file")
    try:
        n = int(tokens[0])
    except ValueError:
        raise ParseError(f"{path}: first token must be the point count, got {tokens[0]!r}") from None
    if n < 1:
        raise ParseError(f"{path}: point count must be positive, got {n}")
    expected = n * (n - 1) // 2
    values = tokens[1:]
    if len(values) != expected:
        raise ParseError(f"{path}: expected {expected} dissimilarities for n={n}, found {len(values)}")
    out = np.empty(expected)
    for pos, tok in enumerate(values, start=1):
        try:
            v = float(tok)
        except ValueError:
            raise ParseError(f"{path}: value {pos} is not a number: {tok!r}") from None
        if not np.isfinite(v) or v < 0:
            raise DataError(f"{path}: value {pos} must be finite and nonnegative, got {tok}")
        out[pos - 1] = v
    return CondensedMatrix(n, out)


def parse_vectors_csv(path: str) -> VectorDataset:
    """One point per line, comma-separated coordinates; a header line is
    detected by a non-numeric first field and skipped."""
    rows = []
    arity = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            fields = [f.strip() for f in stripped.split(",")]
            if not rows and arity is None:
                try:
                    float(fields[0])
                except ValueError:
                    arity = len(fields)  # header; fixes the expected arity
                    continue
            if arity is None:
                arity = len(fields)
            if len(fields) != arity:
                raise ParseError(f"{path}: line {lineno}: expected {arity} coordinates, found {len(fields)}")
            try:
                rows.append([float(f) for f in fields])
            except ValueError:
                raise ParseError(f"{path}: line {lineno}: non-numeric coordinate") from None
    if not rows:
        raise ParseError(f"{path}: no points found")
    return VectorDataset(np.array(rows))


def parse_dendrogram_file(path: str, n: int) -> StepwiseDendrogram:
    """TSV rows a<TAB>b<TAB>delta in scipy labels."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            fields = stripped.split()
            if len(fields) != 3:
                raise ParseError(f"{path}: line {lineno}: expected 3 columns, found {len(fields)}")
            try:
                rows.append([float(fields[0]), float(fields[1]), float(fields[2])])
            except ValueError:
                raise ParseError(f"{path}: line {lineno}: non-numeric entry") from None
    return StepwiseDendrogram(n, np.array(rows).reshape(len(rows), 3))


def parse_method(text: str) -> Method:
    if text in NAMED_METHODS:
        return Method(text)
    if text.startswith("flexible:"):
        parts = text[len("flexible:") :].split(",")
        if len(parts) != 4:
            raise ParseError(f"flexible method needs 4 comma-separated coefficients, got {text!r}")
        try:
            return Method.flexible(*(float(p) for p in parts))
        except ValueError:
            raise ParseError(f"non-numeric flexible coefficient in {text!r}") from None
    raise ParseError(f"unknown method {text!r} (named methods: {', '.join(NAMED_METHODS)})")


#: recommended algorithm per method for --algorithm auto
AUTO_ALGORITHM = {"single": "mst", "complete": "nnchain", "average": "nnchain", "weighted": "nnchain",
                  "ward": "nnchain", "centroid": "generic", "median": "generic", "flexible": "generic"}


def format_dendrogram(d: StepwiseDendrogram) -> str:
    lines = []
    for a, b, delta in d.rows:
        lines.append(f"{int(a)}\t{int(b)}\t{delta:.17g}")
    return "\n".join(lines) + ("\n" if lines else "")


def _cmd_cluster(args) -> int:
    method = parse_method(args.method)
    algorithm = args.algorithm
    if algorithm == "auto":
        algorithm = AUTO_ALGORITHM[method.kind]

    if args.vectors is not None:
        dataset = parse_vectors_csv(args.vectors)
        if algorithm == "generic-variant":
            if method.kind not in CENTER_METHODS:
                raise MethodError(f"generic-variant supports {CENTER_METHODS}, not {method.kind!r}")
            dendrogram = generic_linkage_variant(dataset, method)
        elif algorithm == "mst":
            if method.kind != "single":
                raise MethodError("mst computes single linkage only")
            dendrogram = mst_linkage_vectors(dataset)
        else:
            dendrogram = _run_matrix_algorithm(algorithm, pairwise_dissimilarity(dataset), method)
    else:
        if algorithm == "generic-variant":
            raise MethodError("generic-variant needs point input (--vectors), not a matrix")
        matrix = parse_matrix_file(args.input)
        dendrogram = _run_matrix_algorithm(algorithm, matrix, method)

    dendrogram = convert_convention(dendrogram, args.labels)
    text = format_dendrogram(dendrogram)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK


def _run_matrix_algorithm(algorithm: str, matrix: CondensedMatrix, method: Method) -> StepwiseDendrogram:
    if algorithm == "primitive":
        return primitive_clustering(matrix, method)
    if algorithm == "generic":
        return generic_linkage(matrix, method)
    if algorithm == "nnchain":
        if method.kind not in CHAIN_METHODS:
            raise MethodError(
                f"nnchain needs a reducible, order-independent scheme; "
                f"supports {CHAIN_METHODS}, not {method.kind!r}")
        return nn_chain_linkage(matrix, method)
    if algorithm == "mst":
        if method.kind != "single":
            raise MethodError("mst computes single linkage only")
        return mst_linkage(matrix)
    if algorithm == "anderberg":
        return anderberg_linkage(matrix, method)
    raise MethodError(f"unknown algorithm {algorithm!r}")


def _cmd_validate(args) -> int:
    method = parse_method(args.method)
    matrix = parse_matrix_file(args.input)
    cand = parse_dendrogram_file(args.dendrogram, matrix.n)
    result = validate_dendrogram(matrix, method, cand, tol=args.tol)
    if result:
        print("Valid")
        return EXIT_OK
    print(f"Invalid at step {result.step}: {result.reason}")
    return EXIT_INVALID


def _cmd_bench(args) -> int:
    with open(args.plan, encoding="utf-8") as fh:
        plan = json.load(fh)
    records = run_benchmark(plan)
    if args.out == "-":
        write_csv(records, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="agglo", description="Agglomerative hierarchical clustering.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cluster = sub.add_parser("cluster", help="cluster a matrix or point file")
    p_cluster.add_argument("--method", required=True,
                           help="single|complete|average|weighted|ward|centroid|median|flexible:aI,aJ,b,g")
    p_cluster.add_argument("--algorithm", default="auto",
                           choices=["auto", "primitive", "generic", "nnchain", "mst", "anderberg", "generic-variant"])
    group = p_cluster.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", help="condensed matrix file")
    group.add_argument("--vectors", help="CSV of point coordinates")
    p_cluster.add_argument("--labels", default="scipy", choices=["scipy", "r", "matlab"])
    p_cluster.add_argument("--output", default="-")
    p_cluster.set_defaults(func=_cmd_cluster)

    p_validate = sub.add_parser("validate", help="check a candidate dendrogram")
    p_validate.add_argument("--input", required=True)
    p_validate.add_argument("--method", required=True)
    p_validate.add_argument("--dendrogram", required=True)
    p_validate.add_argument("--tol", type=float, default=None)
    p_validate.set_defaults(func=_cmd_validate)

    p_bench = sub.add_parser("bench", help="run a benchmark plan")
    p_bench.add_argument("--plan", required=True, help="JSON list of plan cells")
    p_bench.add_argument("--out", default="-")
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MethodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ILLEGAL_PAIR
    except (OSError, ParseError, DataError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
