"""Glue for the embed -> (filter) -> k-means -> score chain.

Method names: ``L`` (combinatorial Laplacian), ``N`` (normalized), ``RW``
(random walk), ``Kamvar`` (affinity normalization), ``K``/``M``/``B`` (the
double-centering embeddings; M and B cluster with weights). Numbered
method ids 0..8 select the spectral recipe combinations from
``spectral.method_variant``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gower
from .kmeans import KMeansConfig, KMeansResult, kmeans, weighted_kmeans
from .roughfilter import FilterProfile, filter_boundary, similarity_profile
from .simcore import Embedding, Partition, SimilarityMatrix, ValidationError
from .spectral import (
    DEFAULT_SVD_RANK_CAP,
    LaplacianKind,
    SpectralOptions,
    method_variant,
    spectral_embed,
    svd_smooth_similarity,
)

__all__ = [
    "GSC_METHODS",
    "embed_similarity",
    "cluster_similarity",
    "run_method_variant",
    "FilteredRun",
    "filter_and_cluster",
]

GSC_METHODS = ("L", "N", "RW", "Kamvar", "K", "M", "B")

_SPECTRAL_KINDS = {
    "L": LaplacianKind.COMBINATORIAL,
    "N": LaplacianKind.NORMALIZED,
    "RW": LaplacianKind.RANDOM_WALK,
    "Kamvar": LaplacianKind.KAMVAR_AFFINITY,
}


def embed_similarity(s: SimilarityMatrix, method: str, opts: SpectralOptions) -> Embedding:
    """Build the embedding for a named method.

    Spectral methods honor all the options; the double-centering methods
    K/M/B keep every usable dimension by construction, so only ``opts.k``
    matters downstream for them.
    """
    if method in _SPECTRAL_KINDS:
        return spectral_embed(s, _SPECTRAL_KINDS[method], opts)
    if method == "K":
        return gower.k_embedding(s)
    if method == "M":
        return gower.m_embedding(s)
    if method == "B":
        return gower.b_embedding(s)
    raise ValidationError(f"unknown method {method!r}; expected one of {GSC_METHODS}")


def cluster_similarity(
    s: SimilarityMatrix, method: str, opts: SpectralOptions, cfg: KMeansConfig
) -> tuple[KMeansResult, Embedding]:
    """Embed and cluster, picking plain or weighted k-means as the method demands."""
    if cfg.k != opts.k:
        raise ValidationError(f"k mismatch: kmeans k={cfg.k}, spectral options k={opts.k}")
    emb = embed_similarity(s, method, opts)
    run = weighted_kmeans(emb, cfg) if emb.weights is not None else kmeans(emb, cfg)
    return run, emb


def run_method_variant(
    s: SimilarityMatrix,
    method_id: int,
    cfg: KMeansConfig,
    svd_rank_cap: int = DEFAULT_SVD_RANK_CAP,
) -> KMeansResult:
    """Run one of the nine numbered spectral recipes on a similarity matrix.

    Recipes with an SVD pre-reduction smooth the similarity matrix itself
    (rank capped at ``svd_rank_cap`` and at n - 1) before embedding; with
    document input the reduction would instead happen in term space.
    """
    variant = method_variant(method_id)
    if variant.svd_prior:
        rank = min(svd_rank_cap, s.n - 1)
        s = svd_smooth_similarity(s, rank)
    opts = variant.options(cfg.k)
    emb = spectral_embed(s, variant.kind, opts)
    return kmeans(emb, cfg)


@dataclass(frozen=True)
class FilteredRun:
    """A clustering of the core documents left after boundary removal."""

    result: KMeansResult
    kept: np.ndarray
    removed: np.ndarray
    profile: FilterProfile
    core: SimilarityMatrix


def filter_and_cluster(
    s: SimilarityMatrix,
    method,
    opts_or_cfg,
    cfg: KMeansConfig | None = None,
    *,
    q: float = 0.05,
    threshold: float = 0.0,
) -> FilteredRun:
    """Profile, drop boundary documents below ``threshold``, cluster the rest.

    ``method`` is a name from GSC_METHODS (then pass SpectralOptions and a
    KMeansConfig) or a numbered method id 0..8 (then pass just the config).
    A threshold of zero keeps everything.
    """
    profile = similarity_profile(s, q)
    core, removed = filter_boundary(s, profile, threshold)
    kept = np.setdiff1d(np.arange(s.n), removed)
    if isinstance(method, str):
        if cfg is None:
            raise ValidationError("named methods need both SpectralOptions and KMeansConfig")
        result, _ = cluster_similarity(core, method, opts_or_cfg, cfg)
    else:
        result = run_method_variant(core, int(method), opts_or_cfg)
    return FilteredRun(result, kept, removed, profile, core)
