"""Coordinate embeddings of a similarity matrix via double centering.

Each method turns pairwise similarities into a squared pseudo-distance
matrix, double-centers it into a Gram matrix (Gower, 1966), and reads
coordinates off the eigendecomposition. Pairwise squared distances of the
embedded points then reproduce the pseudo-distances exactly, up to the
mass of any negative Gram eigenvalues that had to be discarded.

Three variants are provided:

* ``k_embedding``  - distances 1 - s, plain k-means target
* ``m_embedding``  - degree-scaled distances, weights d_ii, weighted k-means
* ``b_embedding``  - augmented-degree scaling, weights d'_ii, weighted k-means
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .simcore import Embedding, SimilarityMatrix, ValidationError, _check_symmetry, degree_info, symmetric_eig

__all__ = ["CenteredGram", "double_center", "k_embedding", "m_embedding", "b_embedding"]


@dataclass(frozen=True)
class CenteredGram:
    """A double-centered symmetric matrix, rows and columns summing to zero.

    ``kept_dims`` lists the eigenvalue indices used for coordinates once an
    embedding has been extracted; it is None straight out of ``double_center``.
    """

    matrix: np.ndarray
    kept_dims: np.ndarray | None = None


def double_center(a) -> CenteredGram:
    """Apply the Gower transform -1/2 * J a J with J = I - (1/n) 11^T."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"double_center expects a square matrix, got {a.shape}")
    _check_symmetry(a, "matrix")
    n = a.shape[0]
    j = np.eye(n) - np.full((n, n), 1.0 / n)
    g = -0.5 * (j @ a @ j)
    g = (g + g.T) / 2.0
    return CenteredGram(g)


def _coords_from_gram(gram: CenteredGram) -> tuple[np.ndarray, np.ndarray, float]:
    """Coordinates Y with Y Y^T equal to the PSD part of the Gram matrix.

    Dimensions with non-positive eigenvalues are dropped; the absolute sum of
    the negative ones is returned so callers can bound the resulting error in
    the distance identity.
    """
    eig = symmetric_eig(gram.matrix)
    vals, vecs = eig.values, eig.vectors
    keep_tol = 1e-12 * max(1.0, float(np.abs(vals).max()))
    kept = np.nonzero(vals > keep_tol)[0]
    dropped_mass = float(-vals[vals < 0].sum())
    if kept.size == 0:
        # fully degenerate input (e.g. all points coincide): one zero column
        return np.zeros((gram.matrix.shape[0], 1)), kept, dropped_mass
    coords = vecs[:, kept] * np.sqrt(vals[kept])
    return coords, kept, dropped_mass


def k_embedding(s: SimilarityMatrix) -> Embedding:
    """Embed so that squared point distances equal 1 - s_il.

    Plain (unweighted) k-means on the result minimizes the within-cluster
    average of 1 - similarity, i.e. maximizes average within-cluster
    similarity.
    """
    n = s.n
    a = np.ones((n, n)) - np.eye(n) - s.entries
    coords, _, dropped = _coords_from_gram(double_center(a))
    return Embedding(coords, None, kind="K", dropped_mass=dropped)


def m_embedding(s: SimilarityMatrix) -> Embedding:
    """Degree-normalized embedding with clustering weights d_ii.

    Squared distances come out as (d_ii + d_ll - 2 s_il) / (d_ii d_ll);
    weighted k-means with these weights optimizes the volume-normalized cut.
    Requires every node degree to be positive.
    """
    deg = degree_info(s).degrees
    zero = np.nonzero(deg <= 0.0)[0]
    if zero.size:
        raise ValidationError(f"node {zero[0]} has zero degree; degree-scaled embedding undefined")
    n = s.n
    e = np.ones((n, n)) - np.eye(n)
    a = (e * deg[None, :] + deg[:, None] * e - 2.0 * s.entries) / np.outer(deg, deg)
    coords, _, dropped = _coords_from_gram(double_center(a))
    return Embedding(coords, deg, kind="M", dropped_mass=dropped)


def b_embedding(s: SimilarityMatrix) -> Embedding:
    """Augmented-degree embedding with clustering weights d'_ii = d_ii + 1.

    Squared distances equal 1/d'_ii^2 + 1/d'_ll^2 - 2 s_il / (d'_ii d'_ll).
    The all-ones vector lies in the nullspace of the centered Gram matrix,
    and d' >= 1 always, so no degeneracy is possible.
    """
    dp = degree_info(s).augmented_degrees
    n = s.n
    e = np.ones((n, n)) - np.eye(n)
    inv2 = 1.0 / dp**2
    a = e * inv2[None, :] + inv2[:, None] * e - 2.0 * s.entries / np.outer(dp, dp)
    coords, _, dropped = _coords_from_gram(double_center(a))
    return Embedding(coords, dp, kind="B", dropped_mass=dropped)
