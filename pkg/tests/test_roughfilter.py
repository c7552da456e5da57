import numpy as np
import pytest

from roughspec import (
    FilterProfile,
    SimilarityMatrix,
    ValidationError,
    add_noise_documents,
    dataset_presets,
    filter_boundary,
    generate,
    similarity_profile,
    suggest_threshold,
    write_profile_csv,
)

from conftest import random_similarity


def constant_similarity(n, c):
    a = np.full((n, n), c)
    np.fill_diagonal(a, 0.0)
    return SimilarityMatrix(a)


class TestSimilarityProfile:
    def test_constant_matrix_has_zero_diff(self):
        profile = similarity_profile(constant_similarity(10, 0.4))
        assert np.max(np.abs(profile.avg_diff)) == 0.0
        assert np.allclose(profile.avg_top, 0.4)

    def test_ceiling_rule_single_value(self, rng):
        # n = 21, q = 0.05: ceil(0.05 * 20) = 1, so top/bot are max/min
        s = random_similarity(21, rng)
        profile = similarity_profile(s, q=0.05)
        for i in range(21):
            row = np.delete(s.entries[i], i)
            assert profile.avg_top[i] == row.max()
            assert profile.avg_bot[i] == row.min()

    def test_matches_sort_oracle(self, rng):
        s = random_similarity(50, rng)
        q = 0.07
        profile = similarity_profile(s, q=q)
        count = int(np.ceil(q * 49))
        for i in range(50):
            row = np.sort(np.delete(s.entries[i], i))
            assert profile.avg_bot[i] == pytest.approx(row[:count].mean(), rel=1e-15)
            assert profile.avg_top[i] == pytest.approx(row[-count:].mean(), rel=1e-15)

    def test_diff_nonnegative(self, rng):
        profile = similarity_profile(random_similarity(40, rng), q=0.1)
        assert np.all(profile.avg_diff >= 0.0)

    def test_sorted_order_is_stable_permutation(self):
        profile = FilterProfile(np.array([0.5, 0.2, 0.5, 0.1]), np.zeros(4), q=0.05)
        assert np.array_equal(profile.sorted_order, [3, 1, 0, 2])

    def test_bad_fraction_rejected(self, rng):
        s = random_similarity(5, rng)
        for q in (0.0, 0.6, -0.1):
            with pytest.raises(ValidationError):
                similarity_profile(s, q=q)

    def test_tiny_matrix_rejected(self):
        with pytest.raises(ValidationError):
            similarity_profile(SimilarityMatrix(np.zeros((1, 1))))


class TestFilterBoundary:
    def test_zero_threshold_removes_nothing(self, rng):
        s = random_similarity(15, rng)
        profile = similarity_profile(s)
        core, removed = filter_boundary(s, profile, 0.0)
        assert removed.size == 0
        assert core.n == 15

    def test_constant_matrix_everything_removed(self):
        s = constant_similarity(8, 0.3)
        profile = similarity_profile(s)
        with pytest.raises(ValidationError, match="every document"):
            filter_boundary(s, profile, 0.05)

    def test_noise_documents_removed_exactly(self):
        s, _ = generate(dataset_presets(1, n=300, seed=11))
        noisy, noise_idx = add_noise_documents(s, 30, high=0.08, seed=5)
        profile = similarity_profile(noisy)
        # oracle: direct avg_diff computation puts noise below 0.08 and
        # planted documents far above 0.1
        assert profile.avg_diff[noise_idx].max() < 0.08
        assert np.delete(profile.avg_diff, noise_idx).min() > 0.2
        core, removed = filter_boundary(noisy, profile, 0.1)
        assert np.array_equal(removed, noise_idx)
        assert core.n == 300

    def test_monotone_in_threshold(self, rng):
        s = random_similarity(30, rng)
        profile = similarity_profile(s)
        thresholds = np.quantile(profile.avg_diff, [0.2, 0.5, 0.8])
        previous = set()
        for t in thresholds:
            _, removed = filter_boundary(s, profile, float(t))
            current = set(removed.tolist())
            assert previous <= current
            previous = current

    def test_refilter_keeps_planted_core(self):
        # with a comfortable margin between planted and threshold, filtering
        # the already-filtered core again removes nothing
        s, _ = generate(dataset_presets(1, n=300, seed=2))
        noisy, _ = add_noise_documents(s, 30, high=0.08, seed=9)
        core, _ = filter_boundary(noisy, similarity_profile(noisy), 0.1)
        core2, removed2 = filter_boundary(core, similarity_profile(core), 0.1)
        assert removed2.size == 0

    def test_index_map_back_to_original(self, rng):
        s = SimilarityMatrix(random_similarity(6, rng).entries, tuple("abcdef"))
        profile = similarity_profile(s)
        t = float(np.sort(profile.avg_diff)[2])
        core, removed = filter_boundary(s, profile, t)
        kept = [i for i in range(6) if i not in removed]
        assert core.item_ids == tuple("abcdef"[i] for i in kept)

    def test_profile_length_mismatch_rejected(self, rng):
        s = random_similarity(6, rng)
        profile = similarity_profile(random_similarity(5, rng))
        with pytest.raises(ValidationError, match="profile"):
            filter_boundary(s, profile, 0.1)


class TestSuggestThreshold:
    def test_unique_dominant_gap(self):
        profile = FilterProfile(np.array([0.01, 0.02, 0.03, 0.5, 0.51, 0.52]), np.zeros(6), 0.05)
        t = suggest_threshold(profile)
        assert 0.03 < t <= 0.5

    def test_flat_profile_suggests_zero(self):
        profile = FilterProfile(np.full(5, 0.3), np.zeros(5), 0.05)
        assert suggest_threshold(profile) == 0.0

    def test_bimodal_profile_separates_modes(self, rng):
        low = rng.normal(0.05, 0.01, size=50)
        high = rng.normal(0.4, 0.01, size=50)
        diffs = np.clip(np.concatenate([low, high]), 0.0, 1.0)
        profile = FilterProfile(diffs, np.zeros(100), 0.05)
        t = suggest_threshold(profile)
        # oracle: exhaustive scan of consecutive gaps in the lower half
        sorted_diffs = np.sort(diffs)
        gaps = np.diff(sorted_diffs)[:50]
        expected = sorted_diffs[int(np.argmax(gaps)) + 1]
        assert t == expected
        assert low.max() < t <= high.min()


class TestProfileCsv:
    def test_columns_and_flags(self, rng, tmp_path):
        s = random_similarity(12, rng)
        profile = similarity_profile(s)
        path = tmp_path / "profile.csv"
        write_profile_csv(profile, path, item_ids=s.item_ids)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "doc_id,avg_top,avg_bot,avg_diff,removed_at_0.1,removed_at_0.2"
        assert len(lines) == 13
        for i, line in enumerate(lines[1:]):
            parts = line.split(",")
            assert parts[0] == str(i)
            diff = float(parts[3])
            assert parts[4] == ("1" if diff < 0.1 else "0")
            assert parts[5] == ("1" if diff < 0.2 else "0")
