import numpy as np
import pytest

from agglo import (
    CHAIN_METHODS,
    CondensedMatrix,
    Method,
    MethodError,
    closed_form_dissimilarity,
    enumerate_valid_dendrograms,
    nn_chain_core,
    nn_chain_linkage,
    validate_dendrogram,
)
from agglo.nnchain import _nn_chain_core_unchecked, _nn_chain_linkage_unchecked
from agglo.postprocess import sort_and_label
from agglo.reference import dendrogram_in
from helpers import real_matrix, tie_rich_matrix

FOOTNOTE = CondensedMatrix(5, [3, 4, 6, 15, 5, 7, 12, 1, 13, 14])
FOOTNOTE_METHOD = Method.flexible(1.0, 1.0, 1.0, 0.0)


class TestWhitelist:
    @pytest.mark.parametrize("kind", ["centroid", "median"])
    def test_inverting_methods_rejected(self, kind):
        d = CondensedMatrix(2, [1.0])
        with pytest.raises(MethodError, match="reducib"):
            nn_chain_linkage(d, Method(kind))
        with pytest.raises(MethodError):
            nn_chain_core(d, Method(kind))

    def test_flexible_rejected_even_if_reducible(self):
        # the additive footnote formula is reducible yet order-dependent,
        # so the whole flexible family stays out
        with pytest.raises(MethodError):
            nn_chain_linkage(FOOTNOTE, FOOTNOTE_METHOD)

    @pytest.mark.parametrize("kind", CHAIN_METHODS)
    def test_whitelisted_methods_accepted(self, kind):
        d = CondensedMatrix(2, [1.0])
        assert nn_chain_linkage(d, Method(kind)).rows.tolist() == [[0, 1, 1.0]]


class TestExamples:
    def test_three_point_average(self):
        # d01=1 d02=2 d12=4; chain finds the reciprocal pair (0,1), then
        # the merged cluster meets point 2 at (2+4)/2 = 3
        d = CondensedMatrix(3, [1.0, 2.0, 4.0])
        m = Method("average")
        core = nn_chain_core(d, m)
        assert sorted(core.rows[:, 2].tolist()) == [1.0, 3.0]
        out = nn_chain_linkage(d, m)
        assert out.rows.tolist() == [[0, 1, 1.0], [3, 2, 3.0]]

    def test_dataset_c_member_of_valid_set(self):
        d = CondensedMatrix(3, [3.0, 2.0, 2.0])
        m = Method("single")
        out = nn_chain_linkage(d, m)
        assert dendrogram_in(out, enumerate_valid_dendrograms(d, m))

    def test_single_point(self):
        assert nn_chain_linkage(CondensedMatrix(1, []), Method("ward")).rows.shape == (0, 3)


class TestFootnoteNegativeFixture:
    def test_chain_produces_the_wrong_dendrogram(self):
        # seeded at the first point, the chain merges (CD,E) at 28 and then
        # (AB,CDE) at 87, although the true third merge is (AB,CD) at 27
        out = _nn_chain_linkage_unchecked(FOOTNOTE, FOOTNOTE_METHOD)
        assert out.deltas().tolist() == [1.0, 3.0, 28.0, 87.0]
        res = validate_dendrogram(FOOTNOTE, FOOTNOTE_METHOD, out, tol=0.0)
        assert not res.valid and res.step == 2

    def test_core_chain_invariants_hold_for_admissible_methods(self, rng):
        for _ in range(10):
            n = int(rng.integers(3, 12))
            d = tie_rich_matrix(rng, n)
            for kind in CHAIN_METHODS:
                core = _nn_chain_core_unchecked(d, Method(kind), backend="python", check_invariants=True)
                out = sort_and_label(core, n)
                assert validate_dendrogram(d, Method(kind), out).valid


class TestWardOrderIndependence:
    def test_emitted_deltas_match_closed_form(self, rng):
        m = Method("ward")
        for _ in range(30):
            n = int(rng.integers(3, 12))
            d = real_matrix(rng, n)
            out = nn_chain_linkage(d, m)
            members = {i: [i] for i in range(n)}
            for idx, (a, b) in enumerate(out.pairs()):
                want = closed_form_dissimilarity(m, members[a], members[b], d)
                assert out.rows[idx, 2] == pytest.approx(want, rel=1e-9)
                members[n + idx] = members[a] + members[b]


class TestValidity:
    @pytest.mark.parametrize("kind", CHAIN_METHODS)
    def test_random_battery_sample(self, kind, rng):
        m = Method(kind)
        for _ in range(30):
            n = int(rng.integers(2, 13))
            d = tie_rich_matrix(rng, n)
            res = validate_dendrogram(d, m, nn_chain_linkage(d, m))
            assert res.valid, (kind, n, res)
        for _ in range(10):
            n = int(rng.integers(13, 30))
            d = real_matrix(rng, n)
            res = validate_dendrogram(d, m, nn_chain_linkage(d, m))
            assert res.valid, (kind, n, res)
