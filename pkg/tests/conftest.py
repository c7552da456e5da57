import numpy as np
import pytest

from roughspec import SimilarityMatrix


def random_similarity(n, rng, low=0.0, high=1.0):
    """A valid random similarity matrix with entries U(low, high)."""
    a = low + rng.random((n, n)) * (high - low)
    a = np.triu(a, 1)
    a = a + a.T
    return SimilarityMatrix(a)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
