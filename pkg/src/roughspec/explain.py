"""Keyword explanations of clusters from term-space centroids.

A cluster is explained by the heaviest coordinates of its centroid in
term-vector space, computed over unit-normalized member vectors so long
documents do not dominate. Membership strength is each document's cosine
similarity to that centroid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .simcore import Partition, ValidationError
from .corpus import TermVectorSpace

__all__ = ["ClusterExplanation", "explain_clusters", "DriftReport", "explanation_drift"]

DEFAULT_TOP_WORDS = 10


@dataclass(frozen=True)
class ClusterExplanation:
    cluster: int
    top_terms: tuple[tuple[str, float], ...]
    member_indices: np.ndarray
    member_similarities: np.ndarray
    empty: bool = False

    @property
    def terms(self) -> tuple[str, ...]:
        return tuple(t for t, _ in self.top_terms)


def explain_clusters(
    space: TermVectorSpace, p: Partition, w: int = DEFAULT_TOP_WORDS
) -> list[ClusterExplanation]:
    """Top-w centroid terms and member-to-centroid similarities per cluster.

    Ties in centroid weight rank lexicographically. An empty cluster yields
    an explanation with no terms, flagged as empty.
    """
    if w < 1:
        raise ValidationError(f"top-word count must be >= 1, got {w}")
    if p.n != space.n:
        raise ValidationError(f"partition covers {p.n} documents, space has {space.n}")
    vectors = space.doc_vectors
    norms = np.linalg.norm(vectors, axis=1)
    unit = vectors / norms[:, None]
    out = []
    for j in range(p.k):
        members = np.nonzero(p.labels == j)[0]
        if members.size == 0:
            out.append(
                ClusterExplanation(j, (), members, np.zeros(0), empty=True)
            )
            continue
        centroid = unit[members].mean(axis=0)
        ranked = sorted(zip(space.vocabulary, centroid), key=lambda tw: (-tw[1], tw[0]))
        top = tuple((t, float(v)) for t, v in ranked[:w])
        sims = unit[members] @ (centroid / np.linalg.norm(centroid))
        out.append(ClusterExplanation(j, top, members, sims))
    return out


@dataclass(frozen=True)
class DriftReport:
    """Per-cluster Jaccard overlap of top-term sets between two explanation runs."""

    jaccard: dict[int, float]

    @property
    def mean(self) -> float:
        return float(np.mean(list(self.jaccard.values()))) if self.jaccard else 0.0


def explanation_drift(
    before: list[ClusterExplanation],
    after: list[ClusterExplanation],
    mapping: dict[int, int] | None = None,
) -> DriftReport:
    """How much the keyword explanations changed between two clusterings.

    ``mapping`` pairs each before-cluster with its after-cluster (as produced
    by the optimal label matching); by default clusters are paired by id.
    """
    after_by_id = {e.cluster: e for e in after}
    if mapping is None:
        mapping = {e.cluster: e.cluster for e in before if e.cluster in after_by_id}
    scores: dict[int, float] = {}
    for b in before:
        if b.cluster not in mapping:
            continue
        target = mapping[b.cluster]
        if target not in after_by_id:
            raise ValidationError(f"mapping points cluster {b.cluster} at missing cluster {target}")
        sa, sb = set(after_by_id[target].terms), set(b.terms)
        union = sa | sb
        scores[b.cluster] = len(sa & sb) / len(union) if union else 1.0
    return DriftReport(scores)
