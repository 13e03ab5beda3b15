import numpy as np
import pytest
from scipy import stats

from fcagen import (
    DegreeDistribution,
    FormalContext,
    RngState,
    categorical_null,
    contranominal_scale,
    degree_distribution,
    dirichlet_null,
    fixed_density_context,
    permutation_null,
    row_sum_profile,
)
from fcagen.rng import split

ALPHA = 0.001


def make_reference(seed=0, m=6, g=40):
    """Mixed-degree reference context."""
    rng = RngState(seed)
    rows = [rng.random_k_subset(m, rng.discrete_uniform(0, m)) for _ in range(g)]
    return FormalContext.from_rows(rows, m)


class TestDegreeDistribution:
    def test_contranominal_mass(self):
        dist = degree_distribution(contranominal_scale(5))
        assert dist.counts == (0, 0, 0, 0, 5, 0)

    def test_empty_incidence(self):
        dist = degree_distribution(FormalContext.from_rows([0, 0], 3))
        assert dist.counts == (2, 0, 0, 0)

    def test_fixed_density_context(self):
        dist = degree_distribution(fixed_density_context(10, 8))
        assert dist.counts[8] == 45
        assert sum(dist.counts) == 45

    def test_normalized_sums_to_one(self):
        dist = degree_distribution(make_reference())
        assert sum(dist.normalized) == pytest.approx(1.0, abs=1e-12)

    def test_normalized_needs_objects(self):
        with pytest.raises(ValueError):
            DegreeDistribution((0, 0, 0)).normalized


class TestPermutationNull:
    def test_extreme_rows_unchanged(self):
        ctx = FormalContext.from_rows([0, 0b1111], 4)
        out = permutation_null(ctx, RngState(1))
        assert out.rows == (0, 0b1111)

    def test_degree_distribution_preserved_exactly(self):
        rng = RngState(2)
        for seed in range(30):
            ref = make_reference(seed=seed)
            out = permutation_null(ref, rng)
            assert degree_distribution(out) == degree_distribution(ref)
            assert row_sum_profile(out) == row_sum_profile(ref)
            assert out.objects == ref.objects

    def test_two_subsets_uniform(self):
        ref = FormalContext.from_rows([0b0011], 4)
        rng = RngState(3)
        counts = {}
        n = 10**4
        for _ in range(n):
            row = permutation_null(ref, rng).rows[0]
            counts[row] = counts.get(row, 0) + 1
        assert len(counts) == 6
        for count in counts.values():
            assert abs(count / n - 1 / 6) < 0.02

    def test_empty_reference_rejected(self):
        with pytest.raises(ValueError):
            permutation_null(FormalContext.from_rows([], 3), RngState(0))


class TestCategoricalNull:
    def test_single_degree_reference_keeps_profile(self):
        ref = fixed_density_context(6, 4)
        out = categorical_null(ref, RngState(4))
        assert row_sum_profile(out) == [4] * ref.n_objects

    def test_absent_degrees_never_appear(self):
        ref = make_reference(seed=5)
        support = {k for k, c in enumerate(degree_distribution(ref).counts) if c}
        rng = RngState(6)
        for _ in range(300):
            out = categorical_null(ref, rng)
            assert set(row_sum_profile(out)) <= support

    def test_mean_degree_matches_reference(self):
        ref = make_reference(seed=7, g=50)
        profile = np.array(row_sum_profile(ref))
        rng = RngState(8)
        runs = 1000
        total = 0.0
        for _ in range(runs):
            total += np.mean(row_sum_profile(categorical_null(ref, rng)))
        sigma = profile.std() / np.sqrt(len(profile) * runs)
        assert abs(total / runs - profile.mean()) < 3 * sigma

    def test_shape_preserved(self):
        ref = make_reference(seed=9)
        out = categorical_null(ref, RngState(10))
        assert (out.n_objects, out.n_attributes) == (ref.n_objects, ref.n_attributes)

    def test_empty_reference_rejected(self):
        with pytest.raises(ValueError):
            categorical_null(FormalContext.from_rows([], 3), RngState(0))


class TestDirichletNull:
    def test_one_hot_base_measure_keeps_degrees(self):
        ref = fixed_density_context(5, 3)
        rng = RngState(11)
        for _ in range(50):
            out = dirichlet_null(ref, rng)
            assert row_sum_profile(out) == [3] * ref.n_objects

    def test_absent_degrees_never_appear(self):
        ref = make_reference(seed=12)
        support = {k for k, c in enumerate(degree_distribution(ref).counts) if c}
        rng = RngState(13)
        for _ in range(300):
            out = dirichlet_null(ref, rng)
            assert set(row_sum_profile(out)) <= support

    def test_total_variation_at_default_precision(self):
        # beta = 1000 * (|M|+1) keeps the mean output distribution within
        # TV distance 0.02 of the reference
        ref = make_reference(seed=14, m=6, g=60)
        target = np.array(degree_distribution(ref).normalized)
        rng = RngState(15)
        runs = 1000
        mean = np.zeros_like(target)
        for _ in range(runs):
            mean += degree_distribution(dirichlet_null(ref, rng)).normalized
        mean /= runs
        tv = 0.5 * np.abs(mean - target).sum()
        assert tv < 0.02

    def test_large_beta_converges_to_categorical_null(self):
        # degree histograms at beta = 1e5 vs categorical resampling
        ref = make_reference(seed=16, m=5, g=40)
        rng_a = RngState(17)
        rng_b = RngState(18)
        m = ref.n_attributes
        hist_a = np.zeros(m + 1, dtype=int)
        hist_b = np.zeros(m + 1, dtype=int)
        for _ in range(300):
            hist_a += degree_distribution(dirichlet_null(ref, rng_a, beta=1e5)).counts
            hist_b += degree_distribution(categorical_null(ref, rng_b)).counts
        table = np.array([hist_a, hist_b])
        table = table[:, table.sum(axis=0) > 0]
        _, pval, _, _ = stats.chi2_contingency(table)
        assert pval > ALPHA

    def test_invalid_beta_rejected(self):
        ref = make_reference(seed=19)
        with pytest.raises(ValueError):
            dirichlet_null(ref, RngState(20), beta=0.0)

    def test_empty_reference_rejected(self):
        with pytest.raises(ValueError):
            dirichlet_null(FormalContext.from_rows([], 3), RngState(0))


class TestSeedSplittingAcrossRandomizations:
    def test_split_seeds_reproduce_each_randomization(self):
        ref = make_reference(seed=21)
        root = 424242
        first = [
            permutation_null(ref, RngState(split(root, i))) for i in range(5)
        ]
        second = [
            permutation_null(ref, RngState(split(root, i))) for i in range(5)
        ]
        assert first == second
