import json

import numpy as np
import pytest

from roughspec import (
    GeneratorParams,
    ValidationError,
    add_noise_documents,
    dataset_presets,
    generate,
)
from roughspec.synthgen import read_labels_json, write_labels_json


class TestGeneratorParams:
    def test_validates_lengths(self):
        with pytest.raises(ValidationError, match="min_in"):
            GeneratorParams(n=10, m=2, props=(1, 1), min_in=(0.1,), max_in=(0.5, 0.5), max_out=(0.5, 0.5))

    def test_validates_band_order(self):
        with pytest.raises(ValidationError):
            GeneratorParams(n=10, m=1, props=(1,), min_in=(0.7,), max_in=(0.5,), max_out=(0.5,))

    def test_validates_max_out_range(self):
        with pytest.raises(ValidationError, match="max_out"):
            GeneratorParams(n=10, m=2, props=(1, 1), min_in=(0.1, 0.1), max_in=(0.5, 0.5), max_out=(0.5, 2.5))

    def test_rejects_vanishing_expected_cluster(self):
        with pytest.raises(ValidationError, match="expected cluster"):
            GeneratorParams(n=10, m=2, props=(1000, 1), min_in=(0.1, 0.1), max_in=(0.5, 0.5), max_out=(0.5, 0.5))


class TestGenerate:
    def test_single_cluster_bounds(self):
        params = GeneratorParams(n=20, m=1, props=(1.0,), min_in=(0.3,), max_in=(0.7,), max_out=(0.5,), seed=1)
        s, truth = generate(params)
        off = s.entries[~np.eye(20, dtype=bool)]
        assert off.min() >= 0.3 and off.max() <= 0.7
        assert truth.sizes[0] == 20

    def test_entrywise_bounds_dataset4(self):
        params = dataset_presets(4, n=300, seed=3)
        s, truth = generate(params)
        labels = truth.labels
        # oracle: entrywise check against the label pair of every entry
        min_in = np.asarray(params.min_in)
        max_in = np.asarray(params.max_in)
        max_out = np.asarray(params.max_out)
        for i in range(s.n):
            for j in range(i + 1, s.n):
                v = s.entries[i, j]
                if labels[i] == labels[j]:
                    c = labels[i]
                    assert min_in[c] <= v <= max_in[c]
                else:
                    hi = (max_out[labels[i]] + max_out[labels[j]]) / (2 * params.m)
                    assert 0.0 <= v <= hi

    def test_cluster_1_band_and_cross_band(self):
        params = dataset_presets(4, n=400, seed=5)
        s, truth = generate(params)
        m1 = truth.labels == 0
        block = s.entries[np.ix_(m1, m1)][~np.eye(m1.sum(), dtype=bool)]
        assert block.min() >= 0.3 and block.max() <= 0.7
        m3, m4 = truth.labels == 2, truth.labels == 3
        cross = s.entries[np.ix_(m3, m4)]
        assert cross.max() <= (0.8 + 0.9) / 8.0

    def test_deterministic_given_seed(self):
        params = dataset_presets(2, n=120, seed=42)
        s1, t1 = generate(params)
        s2, t2 = generate(params)
        assert np.array_equal(s1.entries, s2.entries)
        assert np.array_equal(t1.labels, t2.labels)

    def test_different_seeds_differ(self):
        a, _ = generate(dataset_presets(1, n=80, seed=0))
        b, _ = generate(dataset_presets(1, n=80, seed=1))
        assert not np.array_equal(a.entries, b.entries)

    def test_output_is_valid_similarity(self):
        s, _ = generate(dataset_presets(3, n=200, seed=7))
        assert np.all(np.diag(s.entries) == 0.0)
        assert np.array_equal(s.entries, s.entries.T)
        assert s.entries.min() >= 0.0 and s.entries.max() <= 1.0

    def test_cardinalities_near_multinomial_expectation(self):
        # proportions (1, 1/2, 1, 1/2) at n = 1500: expectation (500, 250, 500, 250)
        params = dataset_presets(1, seed=13)
        _, truth = generate(params)
        sizes = truth.sizes
        assert sizes.sum() == 1500
        expected = np.array([500.0, 250.0, 500.0, 250.0])
        sigma = np.sqrt(expected * (1 - expected / 1500.0))
        assert np.all(np.abs(sizes - expected) <= 4 * sigma)


class TestDatasetPresets:
    def test_preset_1_proportions(self):
        assert dataset_presets(1).props == (1.0, 0.5, 1.0, 0.5)

    def test_preset_2_bands(self):
        p = dataset_presets(2)
        assert p.min_in == (0.3, 0.35, 0.4, 0.45)
        assert p.max_in == (0.7, 0.65, 0.6, 0.55)
        assert p.max_out == (0.5, 0.6, 0.7, 0.8)

    def test_preset_3_proportions(self):
        p = dataset_presets(3)
        assert p.props == (1.0, 1.0 / 3.0, 1.0 / 9.0, 1.0 / 27.0)
        assert p.max_out == (0.6, 0.7, 0.8, 0.9)

    def test_preset_4_proportions(self):
        assert dataset_presets(4).props == (1.0, 3.0, 9.0, 27.0)

    def test_unknown_preset_rejected(self):
        with pytest.raises(ValidationError):
            dataset_presets(5)


class TestAddNoiseDocuments:
    def test_appends_low_similarity_rows(self):
        s, _ = generate(dataset_presets(1, n=100, seed=0))
        noisy, idx = add_noise_documents(s, 10, high=0.08, seed=3)
        assert noisy.n == 110
        assert np.array_equal(idx, np.arange(100, 110))
        block = noisy.entries[100:, :]
        off = block[block > 0]
        assert off.max() <= 0.08
        assert np.array_equal(noisy.entries, noisy.entries.T)
        assert np.all(np.diag(noisy.entries) == 0.0)

    def test_noise_ids_labelled(self):
        s, _ = generate(dataset_presets(1, n=50, seed=0))
        noisy, _ = add_noise_documents(s, 3, seed=1)
        assert noisy.item_ids[-3:] == ("noise_0", "noise_1", "noise_2")


class TestLabelsJson:
    def test_round_trip(self, tmp_path):
        params = dataset_presets(1, n=60, seed=4)
        _, truth = generate(params)
        path = tmp_path / "labels.json"
        write_labels_json(path, truth, params)
        labels, meta = read_labels_json(path)
        assert np.array_equal(labels, truth.labels)
        assert meta["seed"] == 4
        assert meta["params"]["n"] == 60
        assert "rng" in meta

    def test_missing_labels_field_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"seed": 0}))
        with pytest.raises(ValidationError):
            read_labels_json(path)
