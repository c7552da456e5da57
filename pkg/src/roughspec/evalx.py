"""Clustering quality: graph-cut criteria and label-matched scoring.

The three cut criteria charge each cluster its outgoing similarity mass,
normalized by cardinality (rcut), by volume (ncut), or by their sum
(nrcut). Scoring against ground truth finds the injective predicted-to-true
assignment that maximizes agreement and reports the residual error and a
support-weighted F1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .simcore import Partition, SimilarityMatrix, ValidationError, degree_info

__all__ = [
    "ConfusionMatrix",
    "MatchScore",
    "rcut",
    "ncut",
    "nrcut",
    "confusion",
    "match_and_score",
    "EquivalencePair",
    "EquivalenceReport",
    "equivalence_diagnostic",
]


def _cluster_mass(s: SimilarityMatrix, p: Partition) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-cluster (size, cross-similarity sum, degree volume)."""
    if p.n != s.n:
        raise ValidationError(f"partition covers {p.n} items, matrix has {s.n}")
    sizes = p.sizes
    if np.any(sizes == 0):
        raise ValidationError(f"cluster {int(np.nonzero(sizes == 0)[0][0])} is empty")
    onehot = np.zeros((s.n, p.k))
    onehot[np.arange(s.n), p.labels] = 1.0
    block = onehot.T @ s.entries @ onehot  # block[j, j'] = similarity mass between clusters
    volumes = block.sum(axis=1)  # equals the degree sum of each cluster
    cross = volumes - np.diag(block)
    return sizes, cross, volumes


def rcut(s: SimilarityMatrix, p: Partition) -> float:
    """Sum over clusters of outgoing similarity divided by cluster size."""
    sizes, cross, _ = _cluster_mass(s, p)
    return float(np.sum(cross / sizes))


def ncut(s: SimilarityMatrix, p: Partition) -> float:
    """Sum over clusters of outgoing similarity divided by cluster volume."""
    sizes, cross, volumes = _cluster_mass(s, p)
    if np.any(volumes <= 0.0):
        j = int(np.nonzero(volumes <= 0.0)[0][0])
        raise ValidationError(f"cluster {j} has zero volume")
    return float(np.sum(cross / volumes))


def nrcut(s: SimilarityMatrix, p: Partition) -> float:
    """Compromise criterion: outgoing similarity over size plus volume."""
    sizes, cross, volumes = _cluster_mass(s, p)
    return float(np.sum(cross / (sizes + volumes)))


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts[t, p] = items with true label t assigned to predicted cluster p."""

    counts: np.ndarray
    row_names: tuple[str, ...]
    col_names: tuple[str, ...]

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=int)
        if c.ndim != 2 or c.size == 0:
            raise ValidationError("confusion counts must be a non-empty 2-D array")
        if np.any(c < 0):
            raise ValidationError("confusion counts must be nonnegative")
        object.__setattr__(self, "counts", c)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def _labels_of(x) -> np.ndarray:
    if isinstance(x, Partition):
        return x.labels
    return np.asarray(x)


def confusion(true, pred) -> ConfusionMatrix:
    """Cross-tabulate true labels (any hashables) against predicted clusters."""
    t = _labels_of(true)
    p = _labels_of(pred)
    if t.shape != p.shape:
        raise ValidationError(f"length mismatch: {t.shape} true labels vs {p.shape} predictions")
    t_names = sorted(set(t.tolist()), key=str)
    p_names = sorted(set(p.tolist()), key=str)
    if isinstance(pred, Partition):
        p_names = list(range(pred.k))  # include empty clusters as columns
    t_index = {v: i for i, v in enumerate(t_names)}
    p_index = {v: i for i, v in enumerate(p_names)}
    counts = np.zeros((len(t_names), len(p_names)), dtype=int)
    for tv, pv in zip(t.tolist(), p.tolist()):
        counts[t_index[tv], p_index[pv]] += 1
    return ConfusionMatrix(counts, tuple(str(v) for v in t_names), tuple(str(v) for v in p_names))


@dataclass(frozen=True)
class MatchScore:
    """Outcome of the optimal predicted-to-true assignment.

    ``mapping`` holds (predicted column, true row) pairs; predicted clusters
    or true labels without a partner are simply absent. ``f1`` is the
    support-weighted mean of per-true-label F1 against the mapped predicted
    cluster; unmapped true labels contribute zero.
    """

    mapping: tuple[tuple[int, int], ...]
    correct: int
    relative_error: float
    f1: float


def match_and_score(cm: ConfusionMatrix) -> MatchScore:
    """Score a confusion matrix under the best injective cluster-label matching."""
    counts = cm.counts
    rows, cols = linear_sum_assignment(counts, maximize=True)
    correct = int(counts[rows, cols].sum())
    n = cm.total
    if n == 0:
        raise ValidationError("confusion matrix is empty")
    row_sums = counts.sum(axis=1)
    col_sums = counts.sum(axis=0)
    f1_total = 0.0
    for t, c in zip(rows, cols):
        hit = counts[t, c]
        if hit == 0:
            continue
        precision = hit / col_sums[c]
        recall = hit / row_sums[t]
        f1_total += row_sums[t] / n * (2 * precision * recall / (precision + recall))
    return MatchScore(
        mapping=tuple((int(c), int(t)) for t, c in zip(rows, cols)),
        correct=correct,
        relative_error=float((n - correct) / n),
        f1=float(f1_total),
    )


@dataclass(frozen=True)
class EquivalencePair:
    cluster: int
    other: int
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of the cut-criteria near-equivalence check.

    For each ordered cluster pair (j, j') the diagnostic compares

        (s_j / s_0)^2  >  ((n_j - 1) s_j + (n - n_j) s_0)
                          / ((n_j' - 1) s_j' + (n - n_j) s_0)

    with s_j the mean within-cluster similarity and s_0 the global mean
    cross-cluster similarity. Pairs that violate the inequality mark regimes
    where cardinality- and volume-normalized clustering may disagree.
    ``block_case`` is set instead when there is no cross-cluster similarity
    at all, in which case every method agrees trivially.
    """

    within_means: np.ndarray
    cross_mean: float
    pairs: tuple[EquivalencePair, ...]
    block_case: bool

    @property
    def violations(self) -> tuple[EquivalencePair, ...]:
        return tuple(p for p in self.pairs if not p.holds)


def equivalence_diagnostic(s: SimilarityMatrix, p: Partition) -> EquivalenceReport:
    sizes, cross, volumes = _cluster_mass(s, p)
    n, k = s.n, p.k
    onehot = np.zeros((n, k))
    onehot[np.arange(n), p.labels] = 1.0
    block = onehot.T @ s.entries @ onehot
    within_pairs = sizes * (sizes - 1)
    within_means = np.divide(
        np.diag(block), within_pairs, out=np.zeros(k), where=within_pairs > 0
    )
    cross_pair_count = n * (n - 1) - within_pairs.sum()
    cross_total = block.sum() - np.diag(block).sum()
    cross_mean = cross_total / cross_pair_count if cross_pair_count > 0 else 0.0
    if cross_mean == 0.0:
        return EquivalenceReport(within_means, 0.0, (), block_case=True)
    pairs = []
    for j in range(k):
        for jp in range(k):
            if j == jp:
                continue
            lhs = (within_means[j] / cross_mean) ** 2
            rhs = ((sizes[j] - 1) * within_means[j] + (n - sizes[j]) * cross_mean) / (
                (sizes[jp] - 1) * within_means[jp] + (n - sizes[j]) * cross_mean
            )
            pairs.append(EquivalencePair(j, jp, float(lhs), float(rhs), bool(lhs > rhs)))
    return EquivalenceReport(within_means, float(cross_mean), tuple(pairs), block_case=False)
