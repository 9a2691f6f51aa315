import numpy as np
import pytest

from agglo import (
    CondensedMatrix,
    DataError,
    Method,
    StepwiseDendrogram,
    check_structure,
    condensed_index,
    convert_convention,
)


class TestCondensedIndex:
    def test_row_major_order(self):
        # n=4 upper triangle: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
        pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        assert [condensed_index(i, j, 4) for i, j in pairs] == list(range(6))

    def test_rejects_bad_pairs(self):
        with pytest.raises(ValueError):
            condensed_index(2, 2, 4)
        with pytest.raises(ValueError):
            condensed_index(3, 1, 4)
        with pytest.raises(ValueError):
            condensed_index(0, 4, 4)


class TestCondensedMatrix:
    def test_value_lookup_is_symmetric(self):
        d = CondensedMatrix(3, [1.0, 2.0, 3.0])
        assert d.value(0, 1) == 1.0
        assert d.value(1, 0) == 1.0
        assert d.value(1, 2) == 3.0
        assert d.value(2, 2) == 0.0

    def test_square_round_trip(self, rng):
        n = 7
        vals = rng.uniform(0, 1, n * (n - 1) // 2)
        d = CondensedMatrix(n, vals)
        sq = d.square()
        assert sq.shape == (n, n)
        assert np.array_equal(sq, sq.T)
        assert CondensedMatrix.from_square(sq) == d

    def test_square_squared_form(self):
        d = CondensedMatrix(3, [1.0, 2.0, 3.0])
        sq = d.square(squared=True)
        assert sq[0, 2] == 4.0 and sq[1, 2] == 9.0

    def test_values_are_immutable(self):
        d = CondensedMatrix(3, [1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            d.values[0] = 5.0

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            CondensedMatrix(4, [1.0, 2.0, 3.0])

    def test_rejects_bad_values(self):
        with pytest.raises(DataError):
            CondensedMatrix(3, [1.0, -2.0, 3.0])
        with pytest.raises(DataError):
            CondensedMatrix(3, [1.0, np.nan, 3.0])
        with pytest.raises(DataError):
            CondensedMatrix(3, [1.0, np.inf, 3.0])

    def test_integer_valued_flag(self):
        assert CondensedMatrix(3, [1.0, 2.0, 3.0]).is_integer_valued
        assert not CondensedMatrix(3, [1.0, 2.5, 3.0]).is_integer_valued

    def test_single_point(self):
        d = CondensedMatrix(1, [])
        assert d.n == 1 and d.square().shape == (1, 1)


class TestMethod:
    def test_named_methods(self):
        m = Method("ward")
        assert m.uses_squared and not m.may_invert

    def test_inverting_flags(self):
        assert Method("centroid").may_invert
        assert Method("median").may_invert
        assert not Method("single").may_invert
        assert Method.flexible(0.5, 0.5, 0.0, 0.0).may_invert

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            Method("complete-ish")

    def test_flexible_needs_coefficients(self):
        with pytest.raises(ValueError):
            Method("flexible")
        with pytest.raises(ValueError):
            Method("average", alpha_i=0.5)


class TestConventions:
    def setup_method(self):
        # 4 points: merge (0,1) at 1, then (2,3) at 2, then the two clusters at 3
        self.scipy = StepwiseDendrogram(4, [[0, 1, 1.0], [2, 3, 2.0], [4, 5, 3.0]], "scipy")

    def test_to_r(self):
        r = convert_convention(self.scipy, "r")
        assert r.rows[:, :2].tolist() == [[-1, -2], [-3, -4], [1, 2]]

    def test_to_matlab(self):
        m = convert_convention(self.scipy, "matlab")
        assert m.rows[:, :2].tolist() == [[1, 2], [3, 4], [5, 6]]

    def test_round_trip(self):
        for target in ("r", "matlab"):
            there = convert_convention(self.scipy, target)
            back = convert_convention(there, "scipy")
            assert np.array_equal(back.rows, self.scipy.rows)

    def test_deltas_unchanged(self):
        r = convert_convention(self.scipy, "r")
        assert np.array_equal(r.deltas(), self.scipy.deltas())


class TestCheckStructure:
    def test_valid_passes(self):
        check_structure(StepwiseDendrogram(3, [[0, 1, 1.0], [2, 3, 2.0]]))

    def test_wrong_row_count(self):
        with pytest.raises(ValueError, match="rows"):
            check_structure(StepwiseDendrogram(4, [[0, 1, 1.0]]))

    def test_label_merged_twice(self):
        with pytest.raises(ValueError, match="twice"):
            check_structure(StepwiseDendrogram(3, [[0, 1, 1.0], [0, 3, 2.0]]))

    def test_self_merge(self):
        with pytest.raises(ValueError, match="itself"):
            check_structure(StepwiseDendrogram(3, [[0, 0, 1.0], [2, 3, 2.0]]))

    def test_label_out_of_range(self):
        # node 4 does not exist until row 1 has been emitted
        with pytest.raises(ValueError, match="range"):
            check_structure(StepwiseDendrogram(3, [[0, 4, 1.0], [1, 2, 2.0]]))

    def test_r_convention_ranges(self):
        d = StepwiseDendrogram(3, [[-1, -2, 1.0], [1, -3, 2.0]], "r")
        check_structure(d)
        with pytest.raises(ValueError):
            check_structure(StepwiseDendrogram(3, [[0, -2, 1.0], [1, -3, 2.0]], "r"))
