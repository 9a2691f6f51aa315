"""Kernel backend selection.

The compiled extension (_speedups) and the pure-Python module (_pycore)
implement the same kernels with the same operation order; the compiled one
is preferred when importable.  Set AGGLO_BACKEND=python or AGGLO_BACKEND=cython
to force a choice.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pycore

try:
    from . import _speedups
except ImportError:  # pragma: no cover - depends on build environment
    _speedups = None

_BACKENDS = {"python": _pycore}
if _speedups is not None:
    _BACKENDS["cython"] = _speedups


def available_backends():
    return sorted(_BACKENDS)


def get_kernels(backend: str | None = None):
    """The kernel module for the requested backend, or the default one."""
    if backend is None:
        backend = os.environ.get("AGGLO_BACKEND")
    if backend is None:
        backend = "cython" if _speedups is not None else "python"
    try:
        return _BACKENDS[backend]
    except KeyError:
        raise ValueError(f"unknown backend {backend!r}; available: {available_backends()}") from None


def default_backend_name() -> str:
    return get_kernels().BACKEND_NAME


def working_matrix(d0, m) -> np.ndarray:
    """Writable full matrix for the in-place kernels: +inf diagonal, squared
    entries for the squared-form methods."""
    mat = d0.square(squared=m.uses_squared)
    np.fill_diagonal(mat, np.inf)
    return mat


def working_condensed(d0, m) -> np.ndarray:
    """Writable condensed copy (half the memory of working_matrix), squared
    entries for the squared-form methods."""
    vals = d0.values.copy()
    if m.uses_squared:
        vals *= vals
    return vals
