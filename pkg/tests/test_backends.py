import numpy as np
import pytest

from agglo import (
    CHAIN_METHODS,
    Method,
    NAMED_METHODS,
    anderberg_linkage_with_stats,
    available_backends,
    generic_linkage_with_stats,
    get_kernels,
    mst_linkage,
    nn_chain_linkage,
)
from agglo.backend import default_backend_name
from helpers import real_matrix, tie_rich_matrix

pytestmark = pytest.mark.skipif(
    "cython" not in available_backends(), reason="compiled backend not built"
)


class TestSelection:
    def test_compiled_backend_is_default_when_built(self):
        assert default_backend_name() == "cython"

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("AGGLO_BACKEND", "python")
        assert get_kernels().BACKEND_NAME == "python"

    def test_explicit_request_beats_environment(self, monkeypatch):
        monkeypatch.setenv("AGGLO_BACKEND", "python")
        assert get_kernels("cython").BACKEND_NAME == "cython"

    def test_unknown_backend_rejected(self):
        with pytest.raises(ValueError, match="unknown backend"):
            get_kernels("fortran")


class TestBitwiseParity:
    """Both kernel sets follow the same operation order (and the compiled
    one is built without FP contraction), so outputs must be identical to
    the last bit, not merely close."""

    def _matrices(self, rng):
        for _ in range(6):
            yield tie_rich_matrix(rng, int(rng.integers(2, 16)))
        for _ in range(6):
            yield real_matrix(rng, int(rng.integers(16, 40)))

    def test_generic_identical(self, rng):
        for d in self._matrices(rng):
            for kind in NAMED_METHODS:
                m = Method(kind)
                out_py, rec_py = generic_linkage_with_stats(d, m, backend="python")
                out_cy, rec_cy = generic_linkage_with_stats(d, m, backend="cython")
                assert rec_py == rec_cy
                assert np.array_equal(out_py.rows, out_cy.rows), kind

    def test_nnchain_identical(self, rng):
        for d in self._matrices(rng):
            for kind in CHAIN_METHODS:
                m = Method(kind)
                out_py = nn_chain_linkage(d, m, backend="python")
                out_cy = nn_chain_linkage(d, m, backend="cython")
                assert np.array_equal(out_py.rows, out_cy.rows), kind

    def test_mst_identical(self, rng):
        for d in self._matrices(rng):
            for start in (0, d.n - 1):
                out_py = mst_linkage(d, start=start, backend="python")
                out_cy = mst_linkage(d, start=start, backend="cython")
                assert np.array_equal(out_py.rows, out_cy.rows)

    def test_anderberg_identical(self, rng):
        for d in self._matrices(rng):
            for kind in NAMED_METHODS:
                m = Method(kind)
                out_py, rec_py = anderberg_linkage_with_stats(d, m, backend="python")
                out_cy, rec_cy = anderberg_linkage_with_stats(d, m, backend="cython")
                assert rec_py == rec_cy
                assert np.array_equal(out_py.rows, out_cy.rows), kind

    def test_flexible_identical(self, rng):
        m = Method.flexible(0.6, 0.4, -0.2, 0.1)
        for d in self._matrices(rng):
            out_py, _ = generic_linkage_with_stats(d, m, backend="python")
            out_cy, _ = generic_linkage_with_stats(d, m, backend="cython")
            assert np.array_equal(out_py.rows, out_cy.rows)
