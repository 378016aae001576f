import math

import numpy as np
import pytest
from scipy import stats

from depmeas import (
    DegenerateColumn,
    bkr_statistic,
    fisher_yates,
    kendall,
    midranks,
    normal_scores,
    pearson,
    spearman,
)


class TestPearson:
    def test_perfect_linear(self, rng):
        x = rng.normal(size=10)
        assert math.isclose(pearson(x, 2 * x + 3), 1.0, rel_tol=1e-12)

    def test_symmetric_parabola_gives_zero(self):
        x = np.array([-1.0, 0.0, 1.0])
        assert abs(pearson(x, x**2)) < 1e-15

    def test_perfect_negative(self, rng):
        x = rng.normal(size=10)
        assert math.isclose(pearson(x, -x), -1.0, rel_tol=1e-12)

    def test_constant_column_rejected(self):
        with pytest.raises(DegenerateColumn):
            pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])

    def test_matches_scipy(self, rng):
        x, y = rng.normal(size=(2, 30))
        assert math.isclose(pearson(x, y), stats.pearsonr(x, y).statistic,
                            rel_tol=1e-12)


class TestSpearman:
    def test_monotone_image_gives_one(self, rng):
        x = rng.normal(size=12)
        assert math.isclose(spearman(x, np.exp(x)), 1.0, rel_tol=1e-14)

    def test_hand_example_with_tied_ranks(self):
        x = np.array([-1.0, 0.0, 1.0])
        y = np.array([1.0, 0.0, 1.0])
        assert abs(spearman(x, y)) < 1e-15

    def test_reversed_order_gives_minus_one(self, rng):
        x = np.sort(rng.normal(size=9))
        assert math.isclose(spearman(x, x[::-1]), -1.0, rel_tol=1e-14)

    def test_equals_pearson_of_midranks(self, rng):
        x = rng.integers(0, 5, size=25).astype(float)
        y = rng.integers(0, 5, size=25).astype(float)
        assert spearman(x, y) == pearson(midranks(x), midranks(y))

    def test_matches_scipy_with_ties(self, rng):
        x = rng.integers(0, 6, size=40).astype(float)
        y = x + rng.integers(0, 4, size=40)
        assert math.isclose(spearman(x, y),
                            stats.spearmanr(x, y).statistic, rel_tol=1e-12)

    def test_all_tied_column_rejected(self):
        with pytest.raises(DegenerateColumn):
            spearman([2.0, 2.0, 2.0], [1.0, 2.0, 3.0])


class TestKendall:
    def test_all_concordant(self):
        x = np.array([1.0, 2.0, 3.0, 4.0])
        assert kendall(x, x**3) == 1.0

    def test_hand_pair_count(self):
        assert math.isclose(
            kendall([1.0, 2.0, 3.0], [1.0, 3.0, 2.0]), 1.0 / 3.0, rel_tol=1e-15
        )

    def test_constant_column_rejected(self):
        with pytest.raises(DegenerateColumn):
            kendall([1.0, 2.0, 3.0], [5.0, 5.0, 5.0])

    def test_matches_scipy_tau_b_with_ties(self, rng):
        x = rng.integers(0, 5, size=35).astype(float)
        y = rng.integers(0, 5, size=35).astype(float)
        assert math.isclose(kendall(x, y),
                            stats.kendalltau(x, y).statistic, rel_tol=1e-12)


class TestFisherYates:
    def test_monotone_image_gives_one(self, rng):
        x = rng.normal(size=10)
        assert math.isclose(fisher_yates(x, np.exp(x)), 1.0, rel_tol=1e-12)

    def test_symmetric_scores_give_zero(self):
        x = np.array([-1.0, 0.0, 1.0])
        y = np.array([1.0, 0.0, 1.0])
        assert abs(fisher_yates(x, y)) < 1e-15

    def test_equals_pearson_of_normal_scores(self, rng):
        x, y = rng.normal(size=(2, 20))
        assert fisher_yates(x, y) == pearson(normal_scores(x), normal_scores(y))

    def test_invariant_under_increasing_transform(self, rng):
        x, y = rng.normal(size=(2, 15))
        assert fisher_yates(x, y) == fisher_yates(np.exp(x), y**3)


class TestBkr:
    def test_two_point_hand_value(self):
        assert bkr_statistic([0.0, 1.0], [0.0, 1.0]) == 1.0 / 32.0

    def test_constant_x_gives_zero(self, rng):
        assert bkr_statistic(np.full(6, 2.0), rng.normal(size=6)) == 0.0

    def test_invariant_under_increasing_transforms(self, rng):
        x, y = rng.normal(size=(2, 18))
        assert bkr_statistic(x, y) == bkr_statistic(np.exp(x), np.arctan(y))

    def test_range(self, rng):
        for _ in range(10):
            x, y = rng.normal(size=(2, 12))
            b = bkr_statistic(x, y)
            assert 0.0 <= b <= 0.25

    def test_untouched_by_row_order(self, rng):
        x, y = rng.normal(size=(2, 14))
        perm = rng.permutation(14)
        assert math.isclose(bkr_statistic(x, y), bkr_statistic(x[perm], y[perm]),
                            rel_tol=1e-14)
