import numpy as np
import pytest

from roughspec import (
    KMeansConfig,
    LaplacianKind,
    SimilarityMatrix,
    SpectralOptions,
    ValidationError,
    combinatorial_laplacian,
    confusion,
    dataset_presets,
    generate,
    kamvar_affinity,
    kmeans,
    match_and_score,
    method_variant,
    normalized_laplacian,
    random_walk_laplacian,
    spectral_embed,
    svd_smooth_similarity,
    symmetric_eig,
)

from conftest import random_similarity

EDGE = SimilarityMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))


def block_matrix(sizes, rng, low=0.3, high=0.7):
    """Exact block-diagonal similarity: zero cross-block similarity."""
    n = sum(sizes)
    s = np.zeros((n, n))
    start = 0
    for size in sizes:
        stop = start + size
        block = low + rng.random((size, size)) * (high - low)
        block = np.triu(block, 1)
        s[start:stop, start:stop] = block + block.T
        start = stop
    return SimilarityMatrix(s)


class TestCombinatorialLaplacian:
    def test_single_edge(self):
        assert np.array_equal(combinatorial_laplacian(EDGE), [[1.0, -1.0], [-1.0, 1.0]])

    def test_zero_matrix(self):
        s = SimilarityMatrix(np.zeros((3, 3)))
        assert np.array_equal(combinatorial_laplacian(s), np.zeros((3, 3)))

    def test_rows_sum_to_zero_and_psd(self, rng):
        s = random_similarity(10, rng)
        lap = combinatorial_laplacian(s)
        assert np.max(np.abs(lap.sum(axis=1))) < 1e-10
        eig = symmetric_eig(lap)
        assert eig.values[0] >= -1e-10
        # constant vector is in the nullspace
        ones = np.full(10, 1.0 / np.sqrt(10.0))
        assert np.max(np.abs(lap @ ones)) < 1e-10


class TestNormalizedLaplacian:
    def test_single_edge(self):
        assert np.allclose(normalized_laplacian(EDGE), [[1.0, -1.0], [-1.0, 1.0]])

    def test_two_components_two_zero_eigenvalues(self, rng):
        s = block_matrix([2, 2], rng, low=1.0, high=1.0)  # two disconnected edges
        eig = symmetric_eig(normalized_laplacian(s))
        assert np.sum(eig.values < 1e-8) == 2

    def test_similarity_transform_recovers_combinatorial(self, rng):
        s = random_similarity(10, rng, low=0.1)
        lap = combinatorial_laplacian(s)
        nlap = normalized_laplacian(s)
        root = np.sqrt(s.entries.sum(axis=1))
        # oracle: explicit triple product D^1/2 Lsym D^1/2
        assert np.max(np.abs(root[:, None] * nlap * root[None, :] - lap)) < 1e-10

    def test_eigenvalues_in_zero_two(self, rng):
        s = random_similarity(12, rng, low=0.05)
        eig = symmetric_eig(normalized_laplacian(s))
        assert eig.values[0] >= -1e-10
        assert eig.values[-1] <= 2.0 + 1e-10

    def test_zero_degree_rejected(self):
        s = SimilarityMatrix(np.zeros((3, 3)))
        with pytest.raises(ValidationError, match="node 0"):
            normalized_laplacian(s)


class TestRandomWalkLaplacian:
    def test_single_edge(self):
        assert np.allclose(random_walk_laplacian(EDGE), [[1.0, -1.0], [-1.0, 1.0]])

    def test_two_components_two_zero_eigenvalues(self, rng):
        s = block_matrix([3, 3], rng)
        vals = np.sort(np.real(np.linalg.eigvals(random_walk_laplacian(s))))
        assert np.sum(np.abs(vals) < 1e-8) == 2

    def test_columns_sum_to_zero(self, rng):
        s = random_similarity(7, rng, low=0.1)
        assert np.max(np.abs(random_walk_laplacian(s).sum(axis=0))) < 1e-10

    def test_spectrum_matches_normalized(self, rng):
        s = random_similarity(8, rng, low=0.1)
        rw_vals = np.sort(np.real(np.linalg.eigvals(random_walk_laplacian(s))))
        n_vals = symmetric_eig(normalized_laplacian(s)).values
        assert np.max(np.abs(rw_vals - n_vals)) < 1e-8


class TestKamvarAffinity:
    def test_single_edge_fixed_point(self):
        assert np.allclose(kamvar_affinity(EDGE), EDGE.entries)

    def test_zero_matrix_rejected(self):
        with pytest.raises(ValidationError, match="zero"):
            kamvar_affinity(SimilarityMatrix(np.zeros((2, 2))))

    def test_rows_sum_to_one(self, rng):
        s = random_similarity(6, rng)
        a = kamvar_affinity(s)
        assert np.max(np.abs(a.sum(axis=1) - 1.0)) < 1e-12
        assert np.all(a >= 0.0)
        assert np.allclose(a, a.T)


class TestSpectralEmbed:
    def test_block_rows_constant_within_blocks(self, rng):
        s = block_matrix([5, 7], rng)
        emb = spectral_embed(s, LaplacianKind.COMBINATORIAL, SpectralOptions(k=2))
        rows = emb.coords
        for start, stop in [(0, 5), (5, 12)]:
            spread = np.max(np.abs(rows[start:stop] - rows[start]), axis=0)
            assert np.max(spread) < 1e-6
        assert np.linalg.norm(rows[0] - rows[5]) > 1e-3

    def test_unit_rows(self, rng):
        s = random_similarity(9, rng, low=0.1)
        opts = SpectralOptions(k=3, unit_rows=True)
        emb = spectral_embed(s, LaplacianKind.NORMALIZED, opts)
        assert np.max(np.abs(np.linalg.norm(emb.coords, axis=1) - 1.0)) < 1e-12

    def test_extra_dimension(self, rng):
        s = random_similarity(9, rng, low=0.1)
        emb = spectral_embed(s, LaplacianKind.NORMALIZED, SpectralOptions(k=3, extra_dimension=True))
        assert emb.d == 4

    def test_kamvar_uses_leading_eigenvectors(self, rng):
        s = block_matrix([4, 4], rng)
        emb = spectral_embed(s, LaplacianKind.KAMVAR_AFFINITY, SpectralOptions(k=2))
        # the doubly stochastic affinity has leading eigenvalue 1 with a
        # block-indicator eigenspace: rows constant within blocks
        for start, stop in [(0, 4), (4, 8)]:
            assert np.max(np.abs(emb.coords[start:stop] - emb.coords[start])) < 1e-6

    def test_too_many_dimensions_rejected(self, rng):
        s = random_similarity(4, rng, low=0.1)
        with pytest.raises(ValidationError):
            spectral_embed(s, LaplacianKind.NORMALIZED, SpectralOptions(k=4, extra_dimension=True))

    def test_recovers_planted_clusters(self):
        # scaled-down benchmark preset: same proportions and bands
        s, truth = generate(dataset_presets(1, n=400, seed=3))
        emb = spectral_embed(s, LaplacianKind.NORMALIZED, SpectralOptions(k=4))
        result = kmeans(emb, KMeansConfig(k=4, seed=7))
        score = match_and_score(confusion(truth, result.partition))
        assert score.relative_error == 0.0


class TestBlockSpectrum:
    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_exactly_k_zero_eigenvalues(self, k, rng):
        sizes = [4 + 2 * i for i in range(k)]
        s = block_matrix(sizes, rng)
        eig = symmetric_eig(combinatorial_laplacian(s))
        assert np.sum(eig.values < 1e-8) == k
        # block indicators lie in the nullspace (subspace projection check)
        null = eig.vectors[:, eig.values < 1e-8]
        start = 0
        for size in sizes:
            v = np.zeros(sum(sizes))
            v[start : start + size] = 1.0 / np.sqrt(size)
            assert np.linalg.norm(null @ (null.T @ v) - v) < 1e-8
            start += size

    def test_disturbing_object_adds_zero_eigenvalue(self, rng):
        s = block_matrix([5, 6, 7], rng)
        grown = np.zeros((s.n + 1, s.n + 1))
        grown[: s.n, : s.n] = s.entries
        grown_s = SimilarityMatrix(grown)
        eig = symmetric_eig(combinatorial_laplacian(grown_s))
        assert np.sum(eig.values < 1e-8) == 4


class TestMethodVariants:
    def test_ids_cover_expected_grid(self):
        v0 = method_variant(0)
        assert v0.kind is LaplacianKind.COMBINATORIAL and v0.unit_rows and not v0.extra_dimension
        v3 = method_variant(3)
        assert v3.kind is LaplacianKind.KAMVAR_AFFINITY and v3.extra_dimension
        v7 = method_variant(7)
        assert v7.kind is LaplacianKind.NORMALIZED and v7.svd_prior and v7.extra_dimension
        v8 = method_variant(8)
        assert v8.svd_prior and not v8.extra_dimension

    def test_unknown_id_rejected(self):
        with pytest.raises(ValidationError):
            method_variant(9)


class TestSvdSmoothSimilarity:
    def test_full_rank_is_identity(self, rng):
        s = random_similarity(10, rng)
        smoothed = svd_smooth_similarity(s, 10)
        assert np.max(np.abs(smoothed.entries - s.entries)) < 1e-10

    def test_result_is_valid_similarity(self, rng):
        s = random_similarity(12, rng)
        smoothed = svd_smooth_similarity(s, 3)
        assert np.all(np.diag(smoothed.entries) == 0.0)
        assert np.all((smoothed.entries >= 0.0) & (smoothed.entries <= 1.0))

    def test_bad_rank_rejected(self, rng):
        s = random_similarity(5, rng)
        with pytest.raises(ValidationError):
            svd_smooth_similarity(s, 0)
