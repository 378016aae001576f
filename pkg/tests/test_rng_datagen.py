import numpy as np
import pytest

from depmeas import (
    DegenerateSample,
    GenKind,
    GenSpec,
    Sample,
    Transform,
    apply_transform,
    dcov2,
    gen_heavy_tail_monotone,
    gen_independent_normal,
    gen_nonmonotone,
    gen_stochastic_volatility,
    generate,
    midranks,
    pearson,
)
from depmeas._rng import (
    PERMUTATION_STREAM_BASE,
    ROLE_X,
    ROLE_Y,
    permutation,
    stream,
    uniform_open,
)


class TestStreams:
    def test_same_key_reproduces(self):
        a = uniform_open(stream(7, ROLE_X), 100)
        b = uniform_open(stream(7, ROLE_X), 100)
        assert np.array_equal(a, b)

    def test_roles_are_disjoint_streams(self):
        a = uniform_open(stream(7, ROLE_X), 100)
        b = uniform_open(stream(7, ROLE_Y), 100)
        assert not np.array_equal(a, b)

    def test_seeds_are_disjoint(self):
        a = uniform_open(stream(1, ROLE_X), 100)
        b = uniform_open(stream(2, ROLE_X), 100)
        assert not np.array_equal(a, b)

    def test_uniforms_live_in_the_open_interval(self):
        u = uniform_open(stream(0, ROLE_X), 100_000)
        assert u.min() > 0.0
        assert u.max() < 1.0

    def test_permutations_deterministic_and_indexed(self):
        p1 = permutation(50, 3, PERMUTATION_STREAM_BASE + 10)
        p2 = permutation(50, 3, PERMUTATION_STREAM_BASE + 10)
        p3 = permutation(50, 3, PERMUTATION_STREAM_BASE + 11)
        assert np.array_equal(p1, p2)
        assert not np.array_equal(p1, p3)
        assert np.array_equal(np.sort(p1), np.arange(50))


class TestIndependentNormal:
    def test_deterministic(self):
        a = gen_independent_normal(20, seed=5)
        b = gen_independent_normal(20, seed=5)
        assert np.array_equal(a.x, b.x) and np.array_equal(a.y, b.y)

    def test_seeds_differ(self):
        a = gen_independent_normal(20, seed=5)
        b = gen_independent_normal(20, seed=6)
        assert not np.array_equal(a.x, b.x)

    def test_pinned_first_draws(self):
        # Regression anchor for the fixed stream layout (seed 0).
        s = gen_independent_normal(5, seed=0)
        assert s.x[0, 0] == -2.271884148324596
        assert s.y[0, 0] == 0.8903241113278911

    def test_large_sample_marginals(self):
        s = gen_independent_normal(10_000, seed=0)
        assert abs(pearson(s.x[:, 0], s.y[:, 0])) < 0.05
        for col in (s.x[:, 0], s.y[:, 0]):
            assert abs(col.mean()) < 0.05
            assert abs(col.var(ddof=1) - 1.0) < 0.05

    def test_n_below_two_rejected(self):
        with pytest.raises(DegenerateSample):
            gen_independent_normal(1)


class TestNonmonotone:
    def test_forced_x_with_zero_noise(self):
        s = gen_nonmonotone(3, seed=0, sigma=0.0,
                            x_override=np.array([-1.0, 0.0, 1.0]))
        assert s.y[:, 0].tolist() == [1.0, 0.0, 1.0]

    def test_regression_structure(self):
        s = gen_nonmonotone(50, seed=4, sigma=0.0)
        assert np.array_equal(s.y[:, 0], s.x[:, 0] ** 2)

    def test_x_is_in_unit_interval(self):
        s = gen_nonmonotone(1000, seed=0)
        assert s.x.min() > -1.0 and s.x.max() < 1.0

    def test_sample_correlation_is_small(self):
        s = gen_nonmonotone(500, seed=0)
        assert abs(pearson(s.x[:, 0], s.y[:, 0])) < 0.1

    def test_pinned_first_row(self):
        s = gen_nonmonotone(5, seed=0)
        assert s.x[0, 0] == -0.9769064914273369
        assert s.y[0, 0] == 0.9481155887979396


class TestStochasticVolatility:
    def test_unit_scaling_hook_recovers_independent_normals(self):
        base = gen_independent_normal(40, seed=11)
        degenerate = gen_stochastic_volatility(40, seed=11,
                                               v_override=np.ones(40))
        assert np.array_equal(base.x, degenerate.x)
        assert np.array_equal(base.y, degenerate.y)

    def test_deterministic(self):
        a = gen_stochastic_volatility(25, seed=2)
        b = gen_stochastic_volatility(25, seed=2)
        assert np.array_equal(a.x, b.x) and np.array_equal(a.y, b.y)

    def test_pinned_sample_correlation(self):
        # The common lognormal scaling makes the sample correlation very
        # heavy-tailed: at n=500 the absolute value routinely exceeds 0.1
        # (median ~ 0.15 over seeds).  Pin the default-seed value exactly
        # as a stream-layout regression; the population value is 0.
        s = gen_stochastic_volatility(500, seed=0)
        assert pearson(s.x[:, 0], s.y[:, 0]) == -0.39769518710795126

    def test_correlation_centers_on_zero_across_seeds(self):
        vals = [
            pearson(*(lambda s: (s.x[:, 0], s.y[:, 0]))(
                gen_stochastic_volatility(200, seed=k)))
            for k in range(30)
        ]
        assert abs(np.median(vals)) < 0.25


class TestHeavyTailMonotone:
    def test_ranks_preserved(self):
        heavy = gen_heavy_tail_monotone(60, seed=3)
        base = gen_nonmonotone(60, seed=3, sigma=0.1)
        assert np.array_equal(midranks(heavy.x[:, 0]), midranks(base.x[:, 0]))
        assert np.array_equal(heavy.y, base.y)

    def test_normal_scores_statistic_unmoved(self):
        heavy = gen_heavy_tail_monotone(40, seed=9)
        base = gen_nonmonotone(40, seed=9, sigma=0.1)
        a = dcov2(apply_transform(heavy, Transform.NORMAL_SCORES))
        b = dcov2(apply_transform(base, Transform.NORMAL_SCORES))
        assert a == b

    def test_tails_are_heavy(self):
        s = gen_heavy_tail_monotone(2000, seed=0)
        assert np.abs(s.x).max() > 100.0

    def test_pinned_first_value(self):
        s = gen_heavy_tail_monotone(5, seed=0)
        assert s.x[0, 0] == -26.435621344404598


class TestGenerateDispatcher:
    @pytest.mark.parametrize("kind,direct", [
        (GenKind.INDEPENDENT_NORMAL, gen_independent_normal),
        (GenKind.STOCHASTIC_VOLATILITY, gen_stochastic_volatility),
        (GenKind.HEAVY_TAIL_MONOTONE, gen_heavy_tail_monotone),
    ])
    def test_matches_direct_calls(self, kind, direct):
        spec = GenSpec(kind=kind, n=15, seed=8)
        via = generate(spec)
        ref = direct(15, seed=8)
        assert np.array_equal(via.x, ref.x) and np.array_equal(via.y, ref.y)

    def test_nonmonotone_passes_sigma(self):
        via = generate(GenSpec(GenKind.NONMONOTONE, n=15, seed=8, sigma=0.4))
        ref = gen_nonmonotone(15, seed=8, sigma=0.4)
        assert np.array_equal(via.y, ref.y)

    def test_invalid_n_rejected(self):
        with pytest.raises(DegenerateSample):
            GenSpec(GenKind.NONMONOTONE, n=1)
