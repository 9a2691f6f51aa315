import numpy as np
import pytest

from agglo import (
    CENTER_METHODS,
    DataError,
    Method,
    MethodError,
    VectorDataset,
    generic_linkage,
    generic_linkage_variant,
    mst_linkage,
    mst_linkage_vectors,
    nn_chain_linkage_vectors,
    pairwise_dissimilarity,
    validate_dendrogram,
)
from agglo.reference import same_dendrogram

TRIANGLE = VectorDataset(np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]]))


class TestVectorDataset:
    def test_one_dimensional_input_is_promoted(self):
        ds = VectorDataset(np.array([0.0, 1.0, 3.0]))
        assert (ds.n, ds.dim) == (3, 1)

    def test_rejects_nonfinite(self):
        with pytest.raises(DataError):
            VectorDataset(np.array([[0.0], [np.nan]]))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            VectorDataset(np.empty((0, 2)))


class TestPairwiseDissimilarity:
    def test_line_points(self):
        d = pairwise_dissimilarity(VectorDataset(np.array([0.0, 1.0, 3.0])))
        assert d.values.tolist() == [1.0, 3.0, 2.0]

    def test_identical_points_all_zero(self):
        d = pairwise_dissimilarity(VectorDataset(np.zeros((4, 2))))
        assert np.all(d.values == 0)

    def test_unit_square_corner(self):
        d = pairwise_dissimilarity(VectorDataset(np.array([[0, 0], [1, 0], [0, 1]], dtype=float)))
        assert d.values == pytest.approx([1.0, 1.0, np.sqrt(2.0)])

    def test_squared_euclidean(self):
        d = pairwise_dissimilarity(VectorDataset(np.array([0.0, 3.0])), metric="sqeuclidean")
        assert d.values.tolist() == [9.0]

    def test_callable_metric(self):
        d = pairwise_dissimilarity(
            VectorDataset(np.array([0.0, 1.0, 4.0])), metric=lambda p, q: abs(p[0] - q[0])
        )
        assert d.values.tolist() == [1.0, 4.0, 3.0]

    def test_negative_metric_rejected(self):
        with pytest.raises(DataError):
            pairwise_dissimilarity(VectorDataset(np.array([0.0, 1.0])), metric=lambda p, q: -1.0)


class TestMstVectors:
    def test_line_matches_matrix_path(self):
        ds = VectorDataset(np.array([0.0, 1.0, 3.0]))
        out = mst_linkage_vectors(ds)
        want = mst_linkage(pairwise_dissimilarity(ds))
        assert same_dendrogram(out, want)

    def test_two_points_callable_metric(self):
        ds = VectorDataset(np.array([[0.0, 0.0], [3.0, 4.0]]))
        out = mst_linkage_vectors(ds, metric=lambda p, q: float(np.linalg.norm(p - q)))
        assert out.rows.tolist() == [[0, 1, 5.0]]

    def test_random_cloud_validates_against_matrix(self, rng):
        ds = VectorDataset(rng.normal(size=(100, 2)))
        out = mst_linkage_vectors(ds)
        d = pairwise_dissimilarity(ds)
        assert validate_dendrogram(d, Method("single"), out, tol=1e-9).valid


class TestGenericVariant:
    def test_triangle_centroid_inversion(self):
        out = generic_linkage_variant(TRIANGLE, Method("centroid"))
        assert out.deltas()[0] == pytest.approx(1.0)
        assert out.deltas()[1] == pytest.approx(np.sqrt(3.0) / 2.0, abs=1e-9)

    def test_triangle_ward_no_inversion(self):
        out = generic_linkage_variant(TRIANGLE, Method("ward"))
        assert out.deltas() == pytest.approx([1.0, 1.0])

    def test_two_points_ward_distance_is_point_distance(self):
        ds = VectorDataset(np.array([[0.0], [7.0]]))
        out = generic_linkage_variant(ds, Method("ward"))
        assert out.rows.tolist() == [[0, 1, 7.0]]

    @pytest.mark.parametrize("kind", ["single", "complete", "average", "weighted"])
    def test_combinatorial_methods_rejected(self, kind):
        with pytest.raises(MethodError, match="center"):
            generic_linkage_variant(TRIANGLE, Method(kind))

    def test_differential_against_matrix_algorithms(self, rng):
        for _ in range(25):
            n = int(rng.integers(2, 25))
            dim = int(rng.choice([1, 2, 5]))
            ds = VectorDataset(rng.normal(size=(n, dim)))
            d = pairwise_dissimilarity(ds)
            for kind in CENTER_METHODS:
                out = generic_linkage_variant(ds, Method(kind))
                res = validate_dendrogram(d, Method(kind), out, tol=1e-9)
                assert res.valid, (kind, n, dim, res)

    def test_incremental_centroid_equals_member_mean(self, rng):
        ds = VectorDataset(rng.normal(size=(20, 3)))
        out, centers = generic_linkage_variant(ds, Method("centroid"), return_centers=True)
        members = {i: [i] for i in range(20)}
        for idx, (a, b) in enumerate(out.pairs()):
            node = 20 + idx
            members[node] = members[a] + members[b]
            mean = ds.coords[members[node]].mean(axis=0)
            assert centers[node] == pytest.approx(mean, abs=1e-12)


class TestChainVectors:
    def test_ward_only(self):
        with pytest.raises(MethodError):
            nn_chain_linkage_vectors(TRIANGLE, Method("centroid"))

    def test_triangle_ward(self):
        out = nn_chain_linkage_vectors(TRIANGLE)
        assert out.deltas() == pytest.approx([1.0, 1.0])

    def test_differential_against_matrix_ward(self, rng):
        m = Method("ward")
        for _ in range(15):
            n = int(rng.integers(2, 25))
            ds = VectorDataset(rng.normal(size=(n, 2)))
            d = pairwise_dissimilarity(ds)
            res = validate_dendrogram(d, m, nn_chain_linkage_vectors(ds), tol=1e-9)
            assert res.valid, (n, res)

    def test_agrees_with_matrix_ward_on_generic_positions(self, rng):
        ds = VectorDataset(rng.normal(size=(12, 3)))
        d = pairwise_dissimilarity(ds)
        vec = nn_chain_linkage_vectors(ds)
        mat = generic_linkage(d, Method("ward"))
        assert same_dendrogram(vec, mat, tol=1e-9)
