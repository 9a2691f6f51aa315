import numpy as np
import pytest

from agglo import (
    CondensedMatrix,
    Method,
    NAMED_METHODS,
    anderberg_linkage,
    anderberg_linkage_with_stats,
    generic_linkage_with_stats,
    validate_dendrogram,
)
from helpers import real_matrix, tie_rich_matrix

DATASET_A = CondensedMatrix(3, [2.0, 2.0, 3.0])
TRIANGLE = CondensedMatrix(3, [1.0, 1.0, 1.0])


class TestExamples:
    def test_two_points(self):
        d = CondensedMatrix(2, [3.5])
        assert anderberg_linkage(d, Method("complete")).rows.tolist() == [[0, 1, 3.5]]

    def test_single_point(self):
        assert anderberg_linkage(CondensedMatrix(1, []), Method("single")).rows.shape == (0, 3)

    def test_triangle_centroid_matches_generic_by_validation(self):
        m = Method("centroid")
        out = anderberg_linkage(TRIANGLE, m)
        assert validate_dendrogram(TRIANGLE, m, out).valid
        assert out.deltas()[1] == pytest.approx(np.sqrt(0.75))

    def test_dataset_a_single(self):
        assert validate_dendrogram(DATASET_A, Method("single"), anderberg_linkage(DATASET_A, Method("single"))).valid


class TestValidity:
    @pytest.mark.parametrize("kind", NAMED_METHODS)
    def test_random_battery_sample(self, kind, rng):
        m = Method(kind)
        for _ in range(30):
            n = int(rng.integers(2, 13))
            d = tie_rich_matrix(rng, n)
            res = validate_dendrogram(d, m, anderberg_linkage(d, m))
            assert res.valid, (kind, n, res)
        for _ in range(8):
            n = int(rng.integers(13, 30))
            d = real_matrix(rng, n)
            res = validate_dendrogram(d, m, anderberg_linkage(d, m))
            assert res.valid, (kind, n, res)


class TestCounterDominance:
    @pytest.mark.parametrize("kind", ["single", "average", "ward", "centroid", "median"])
    def test_generic_never_recalculates_more(self, kind, rng):
        m = Method(kind)
        for _ in range(15):
            n = int(rng.integers(3, 30))
            d = real_matrix(rng, n)
            _, generic_count = generic_linkage_with_stats(d, m)
            _, anderberg_count = anderberg_linkage_with_stats(d, m)
            assert generic_count <= anderberg_count
