from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from variant import analysis
from variant.analysis import cluster, dendrogram, level_boxplot
from variant.embedding import HashedBowEncoder
from variant.errors import BadK, TooFewConcepts
from variant.levels import AbstractionLevel, default_weights
from variant.rqid import assess


def block_matrix(sizes, within=0.0, across=1.0):
    labels = []
    for g, size in enumerate(sizes):
        labels.extend([g] * size)
    n = len(labels)
    d = np.full((n, n), across)
    for i in range(n):
        for j in range(n):
            if labels[i] == labels[j]:
                d[i, j] = within
    np.fill_diagonal(d, 0.0)
    return d


def pam_cost(d, medoids):
    return d[:, list(medoids)].min(axis=1).sum()


def best_two_partition_cost(d):
    """Brute-force optimum of the k=2 medoid objective."""
    n = d.shape[0]
    best = None
    for pair in combinations(range(n), 2):
        cost = pam_cost(d, pair)
        if best is None or cost < best:
            best = cost
    return best


class TestSplitCurve:
    def test_even_split_values(self):
        points = {p.x: p.scores for p in analysis.testcase1_curve(20)}
        even = points["10/10"]
        assert even["hhid"] == pytest.approx(0.5, abs=1e-12)
        assert even["gsid"] == pytest.approx(float(Fraction(10, 19)), abs=1e-12)

    def test_skewed_split_values(self):
        points = {p.x: p.scores for p in analysis.testcase1_curve(20)}
        skew = points["5/15"]
        assert skew["hhid"] == pytest.approx(0.375, abs=1e-12)
        assert skew["gsid"] == pytest.approx(float(Fraction(15, 38)), abs=1e-12)

    def test_collapsed_split(self):
        points = {p.x: p.scores for p in analysis.testcase1_curve(20)}
        end = points["0/20"]
        assert end["svs"] == 0.0
        assert end["nm"] == 0.0
        assert end["hhid"] == 0.0
        assert end["gsid"] == 0.0
        assert end["ihi"] == pytest.approx(0.05, abs=1e-15)

    def test_branch_metrics_flat_when_both_sides_live(self):
        points = [p for p in analysis.testcase1_curve(20) if not p.x.startswith("0/")]
        svs_values = {round(p.scores["svs"], 12) for p in points}
        nm_values = {round(p.scores["nm"], 12) for p in points}
        assert len(svs_values) == 1
        assert len(nm_values) == 1

    def test_distribution_metrics_monotone_with_evenness(self):
        points = analysis.testcase1_curve(20)  # ordered 0/20 ... 10/10
        for metric in ("ihi", "hhid", "gsid"):
            values = [p.scores[metric] for p in points]
            assert all(a <= b + 1e-12 for a, b in zip(values, values[1:])), metric

    def test_bad_split_rejected(self):
        with pytest.raises(ValueError):
            analysis.testcase1_curve(10, splits=[(3, 4)])


class TestGrowthCurve:
    def test_two_concepts(self):
        point = analysis.testcase2_curve([2])[0]
        assert point.scores["gsid"] == pytest.approx(1.0, abs=1e-15)
        assert point.scores["svs"] == pytest.approx(1.0, abs=1e-15)
        assert point.scores["nm"] == pytest.approx(1.0, abs=1e-15)
        assert point.scores["ihi"] == pytest.approx(1.0, abs=1e-15)
        assert point.scores["hhid"] == pytest.approx(0.5, abs=1e-15)

    def test_exact_growth_law(self):
        for point in analysis.testcase2_curve(range(2, 42, 2)):
            n = int(point.x)
            assert point.scores["gsid"] == pytest.approx(0.5 + 0.5 / (n - 1), abs=1e-12)
            assert point.scores["hhid"] == pytest.approx(0.5, abs=1e-12)

    def test_known_midpoints(self):
        points = {p.x: p.scores for p in analysis.testcase2_curve([4, 40])}
        assert points["4"]["gsid"] == pytest.approx(2 / 3, abs=1e-12)
        assert points["40"]["svs"] == pytest.approx(0.05, abs=1e-12)

    def test_legacy_metrics_decay(self):
        points = analysis.testcase2_curve(range(2, 42, 2))
        for metric in ("svs", "nm", "ihi"):
            values = [p.scores[metric] for p in points]
            assert values[0] == pytest.approx(1.0, abs=1e-12)
            assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))
            assert values[-1] < 0.15

    def test_odd_n_rejected(self):
        with pytest.raises(ValueError):
            analysis.testcase2_curve([3])


class TestBoxPlots:
    def test_degenerate_box(self):
        stats = level_boxplot({"action": [0.4, 0.4, 0.4, 0.4]}, [1, 2, 3, 4])[0]
        assert stats.q1 == stats.median == stats.q3 == 0.4
        assert stats.outliers == ()
        assert stats.whisker_low == stats.whisker_high == 0.4

    def test_single_high_point_flagged(self):
        stats = level_boxplot({"action": [0.1, 0.1, 0.1, 0.9]}, [1, 2, 3, 4])[0]
        assert stats.outliers == ((4, 0.9),)
        # linear-interpolation quartiles of the sorted values
        assert stats.q1 == pytest.approx(0.1, abs=1e-15)
        assert stats.q3 == pytest.approx(0.3, abs=1e-12)
        assert stats.whisker_high == pytest.approx(0.1, abs=1e-15)

    def test_quartiles_match_percentile_oracle(self):
        rng = np.random.default_rng(2)
        values = rng.uniform(0, 1, size=17)
        stats = level_boxplot({"part": values}, list(range(1, 18)))[0]
        q1, q2, q3 = np.percentile(values, [25, 50, 75])
        assert stats.q1 == pytest.approx(q1, abs=1e-12)
        assert stats.median == pytest.approx(q2, abs=1e-12)
        assert stats.q3 == pytest.approx(q3, abs=1e-12)
        assert stats.mean == pytest.approx(values.mean(), abs=1e-12)

    def test_every_outlier_is_outside_fences(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            values = rng.uniform(0, 1, size=rng.integers(4, 15))
            stats = level_boxplot({"input": values}, list(range(1, len(values) + 1)))[0]
            iqr = stats.q3 - stats.q1
            for _cid, v in stats.outliers:
                assert v < stats.q1 - 1.5 * iqr or v > stats.q3 + 1.5 * iqr
            assert stats.whisker_low >= stats.q1 - 1.5 * iqr - 1e-12
            assert stats.whisker_high <= stats.q3 + 1.5 * iqr + 1e-12

    def test_worked_space_state_level_outlier(self, boil_water_space):
        result = assess(boil_water_space, HashedBowEncoder(), default_weights())
        stats = level_boxplot(result.per_concept_per_level, result.concept_ids)
        by_level = {s.level: s for s in stats}
        state = by_level[AbstractionLevel.STATE_CHANGE]
        assert [cid for cid, _v in state.outliers] == [4]  # the friction heater
        assert state.mean == pytest.approx(
            result.per_level[AbstractionLevel.STATE_CHANGE], abs=1e-12
        )


class TestCluster:
    def test_k_equals_n(self):
        d = block_matrix([1, 1, 1], across=0.7)
        assert cluster(d, 3) == [0, 1, 2]

    def test_k_equals_one(self):
        d = block_matrix([2, 2])
        assert cluster(d, 1) == [0, 0, 0, 0]

    def test_two_soft_blocks_recovered(self):
        d = block_matrix([3, 3], within=0.05, across=0.9)
        labels = cluster(d, 2)
        assert labels == [0, 0, 0, 1, 1, 1]
        # and the chosen partition attains the brute-force optimum
        best = best_two_partition_cost(d)
        chosen_cost = min(
            pam_cost(d, pair)
            for pair in combinations(range(6), 2)
            if [0 if d[i, pair[0]] <= d[i, pair[1]] else 1 for i in range(6)] == labels
        )
        assert chosen_cost == pytest.approx(best, abs=1e-12)

    def test_binary_blocks_recovered_exhaustively(self):
        # every two-block split of up to 10 concepts comes back exactly
        for n in range(2, 11):
            for size_a in range(1, n // 2 + 1):
                d = block_matrix([size_a, n - size_a])
                labels = cluster(d, 2)
                expected = [0] * size_a + [1] * (n - size_a)
                assert labels == expected, (n, size_a)
                assert best_two_partition_cost(d) == 0.0

    def test_bad_k(self):
        d = block_matrix([2, 2])
        with pytest.raises(BadK):
            cluster(d, 0)
        with pytest.raises(BadK):
            cluster(d, 5)

    def test_mds_mode_agrees_on_clean_blocks(self):
        d = block_matrix([3, 4], within=0.05, across=0.9)
        assert cluster(d, 2, method="mds") == cluster(d, 2)

    def test_deterministic(self):
        rng = np.random.default_rng(0)
        raw = rng.uniform(0, 1, size=(9, 9))
        d = (raw + raw.T) / 2
        np.fill_diagonal(d, 0.0)
        assert cluster(d, 3) == cluster(d, 3)


class TestDendrogram:
    def test_pair(self):
        d = np.array([[0.0, 0.37], [0.37, 0.0]])
        tree = dendrogram(d, [1, 2])
        assert tree.merges == ((0, 1, 0.37),)

    def test_three_point_hand_trace(self):
        d = np.array(
            [
                [0.0, 0.1, 0.8],
                [0.1, 0.0, 0.8],
                [0.8, 0.8, 0.0],
            ]
        )
        tree = dendrogram(d, [1, 2, 3])
        assert tree.merges[0] == (0, 1, pytest.approx(0.1))
        a, b, h = tree.merges[1]
        assert {a, b} == {2, 3}  # leaf 2 joins the merged pair (node 3)
        assert h == pytest.approx(0.8, abs=1e-12)

    def test_tie_broken_toward_lowest_index(self):
        # both pairs (0,1) and (2,3) sit at distance 0.2; the lower pair first
        d = np.full((4, 4), 0.9)
        d[0, 1] = d[1, 0] = 0.2
        d[2, 3] = d[3, 2] = 0.2
        np.fill_diagonal(d, 0.0)
        tree = dendrogram(d)
        assert tree.merges[0][:2] == (0, 1)
        assert tree.merges[1][:2] == (2, 3)

    def test_heights_monotone_on_random_matrices(self):
        rng = np.random.default_rng(12)
        for _ in range(25):
            n = rng.integers(2, 12)
            raw = rng.uniform(0, 1, size=(n, n))
            d = (raw + raw.T) / 2
            np.fill_diagonal(d, 0.0)
            heights = dendrogram(d).heights
            assert all(a <= b + 1e-12 for a, b in zip(heights, heights[1:]))

    def test_matches_scipy_average_linkage(self):
        scipy_hierarchy = pytest.importorskip("scipy.cluster.hierarchy")
        squareform = pytest.importorskip("scipy.spatial.distance").squareform
        rng = np.random.default_rng(3)
        for _ in range(20):
            n = int(rng.integers(3, 11))
            raw = rng.uniform(0.01, 1, size=(n, n))
            d = (raw + raw.T) / 2
            np.fill_diagonal(d, 0.0)
            ours = dendrogram(d).heights
            reference = scipy_hierarchy.linkage(squareform(d), method="average")[:, 2]
            assert np.allclose(sorted(ours), sorted(reference), atol=1e-10)

    def test_worked_space_outlier_joins_last(self, boil_water_space):
        result = assess(boil_water_space, HashedBowEncoder(), default_weights())
        tree = dendrogram(result.weighted_matrix, result.concept_ids)
        # the three heat-to-boil concepts merge among themselves before the
        # friction heater (leaf row 3) enters at the root
        final_a, final_b, _ = tree.merges[-1]
        assert 3 in (final_a, final_b)
        for a, b, _h in tree.merges[:-1]:
            assert 3 not in (a, b)

    def test_single_concept_rejected(self):
        with pytest.raises(TooFewConcepts):
            dendrogram(np.zeros((1, 1)))


@given(st.integers(min_value=2, max_value=9), st.integers(min_value=0, max_value=10**6))
@settings(max_examples=40, deadline=None)
def test_dendrogram_heights_monotone_property(n, seed):
    rng = np.random.default_rng(seed)
    raw = rng.uniform(0, 1, size=(n, n))
    d = (raw + raw.T) / 2
    np.fill_diagonal(d, 0.0)
    heights = dendrogram(d).heights
    assert all(a <= b + 1e-9 for a, b in zip(heights, heights[1:]))
