"""Agglomerative hierarchical clustering: reference algorithm and replay
validator, generic priority-queue linkage, nearest-neighbor-chain linkage,
MST single linkage, a nearest-neighbor-list baseline, and vector-data
variants, with a compiled kernel backend and a pure-Python fallback."""

from .anderberg import anderberg_linkage, anderberg_linkage_with_stats
from .backend import available_backends, default_backend_name, get_kernels
from .core import (
    CondensedMatrix,
    DataError,
    Method,
    MethodError,
    NAMED_METHODS,
    StepwiseDendrogram,
    UnsortedDendrogram,
    check_structure,
    condensed_index,
    convert_convention,
)
from .formulas import (
    check_reducibility,
    closed_form_dissimilarity,
    flexible_coefficients,
    update_distance,
)
from .generic import generic_linkage, generic_linkage_with_stats
from .heap import MinPriorityQueue
from .mst import mst_linkage, mst_linkage_core
from .nnchain import CHAIN_METHODS, nn_chain_core, nn_chain_linkage
from .postprocess import UnionFind, label, sort_and_label, stable_sort_by_delta
from .reference import (
    ValidationResult,
    enumerate_valid_dendrograms,
    primitive_clustering,
    validate_dendrogram,
)
from .vector import (
    CENTER_METHODS,
    VectorDataset,
    generic_linkage_variant,
    mst_linkage_vectors,
    nn_chain_linkage_vectors,
    pairwise_dissimilarity,
)

__version__ = "0.1.0"

__all__ = [
    "CondensedMatrix",
    "DataError",
    "Method",
    "MethodError",
    "NAMED_METHODS",
    "CHAIN_METHODS",
    "CENTER_METHODS",
    "StepwiseDendrogram",
    "UnsortedDendrogram",
    "UnionFind",
    "MinPriorityQueue",
    "ValidationResult",
    "VectorDataset",
    "anderberg_linkage",
    "anderberg_linkage_with_stats",
    "available_backends",
    "check_reducibility",
    "check_structure",
    "closed_form_dissimilarity",
    "condensed_index",
    "convert_convention",
    "default_backend_name",
    "enumerate_valid_dendrograms",
    "flexible_coefficients",
    "generic_linkage",
    "generic_linkage_with_stats",
    "generic_linkage_variant",
    "get_kernels",
    "label",
    "mst_linkage",
    "mst_linkage_core",
    "mst_linkage_vectors",
    "nn_chain_core",
    "nn_chain_linkage",
    "nn_chain_linkage_vectors",
    "pairwise_dissimilarity",
    "primitive_clustering",
    "sort_and_label",
    "stable_sort_by_delta",
    "update_distance",
    "validate_dendrogram",
]
