"""Plain and weighted k-means with seeded restarts.

Initialization is greedy k-means++ (a few candidate centers per step, the
one with the lowest resulting potential wins). Lloyd iterations run to a
fixed point and are followed by a best-improvement pass over single-point
moves, so the returned partition satisfies a strong local optimality
condition: no reassignment of one point (with the implied centroid shifts)
can lower the objective.

Results are deterministic given the config seed, and invariant under
permutations of the input points: the algorithm internally processes
points in a canonical coordinate order, so the RNG stream does not depend
on how the caller happened to order them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .simcore import Embedding, NumericalError, Partition, ValidationError

__all__ = ["KMeansConfig", "KMeansResult", "kmeans", "weighted_kmeans"]


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    restarts: int = 10
    max_iter: int = 100
    tol: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError(f"k must be >= 1, got {self.k}")
        if self.restarts < 1:
            raise ValidationError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iter < 1:
            raise ValidationError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.tol > 0:
            raise ValidationError(f"tol must be > 0, got {self.tol}")


@dataclass(frozen=True)
class KMeansResult:
    partition: Partition
    centroids: np.ndarray
    objective: float
    iterations_run: int
    restart_chosen: int


def kmeans(e: Embedding, cfg: KMeansConfig) -> KMeansResult:
    """Cluster an unweighted embedding (all-equal weights are accepted too)."""
    if e.weights is not None and not np.all(e.weights == e.weights[0]):
        raise ValidationError("kmeans expects no weights or all-equal weights; use weighted_kmeans")
    w = e.weights if e.weights is not None else np.ones(e.n)
    return _run(e.coords, w, cfg)


def weighted_kmeans(e: Embedding, cfg: KMeansConfig) -> KMeansResult:
    """Cluster with per-point weights: centroids are weighted means, assignment is by plain distance."""
    if e.weights is None:
        raise ValidationError("weighted_kmeans requires an embedding with weights")
    return _run(e.coords, e.weights, cfg)


def _run(x: np.ndarray, w: np.ndarray, cfg: KMeansConfig) -> KMeansResult:
    n = x.shape[0]
    if cfg.k > n:
        raise ValidationError(f"k = {cfg.k} exceeds the number of points n = {n}")

    # Canonical point order: lexicographic by coordinates, weight as the last
    # tiebreak. All RNG-driven choices happen in this order, which makes the
    # output labels permutation-equivariant in the input order. Weights are
    # canonicalized to max 1 during optimization (assignments and centroids
    # are scale-free, and this keeps the RNG stream of an all-equal-weight
    # run bitwise identical to the unweighted one); the reported objective
    # uses the original weights.
    order = np.lexsort((w,) + tuple(x[:, d] for d in range(x.shape[1] - 1, -1, -1)))
    xs, ws = x[order], w[order] / w.max()

    best = None
    for r in range(cfg.restarts):
        rng = np.random.default_rng(cfg.seed + r)
        labels, iters = _lloyd(xs, ws, cfg, rng)
        labels = _refine_single_moves(xs, ws, cfg.k, labels)
        # restart selection happens in the canonical weight scale so that it,
        # too, is independent of an overall weight factor
        obj, _ = _objective(xs, ws, cfg.k, labels)
        if best is None or obj < best[0]:
            best = (obj, labels, iters, r)

    _, labels_sorted, iters, chosen = best
    obj, cent = _objective(xs, w[order], cfg.k, labels_sorted)
    labels = np.empty(n, dtype=int)
    labels[order] = labels_sorted
    return KMeansResult(
        partition=Partition(labels, cfg.k),
        centroids=cent,
        objective=obj,
        iterations_run=iters,
        restart_chosen=chosen,
    )


def _objective(x, w, k, labels):
    cent = np.empty((k, x.shape[1]))
    obj = 0.0
    for j in range(k):
        m = labels == j
        cent[j] = np.average(x[m], axis=0, weights=w[m])
        obj += float(np.sum(w[m] * ((x[m] - cent[j]) ** 2).sum(axis=1)))
    return obj, cent


def _init_plusplus(x, w, k, rng):
    """Greedy k-means++: sample a few candidates per step, keep the best."""
    n = x.shape[0]
    trials = 2 + int(np.log(k)) if k > 1 else 1
    probs = w / w.sum()
    centers = np.empty((k, x.shape[1]))
    centers[0] = x[rng.choice(n, p=probs)]
    d2 = ((x - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        pot = d2 * w
        total = pot.sum()
        if total <= 0.0:
            # all points sit on chosen centers; any choice is as good
            centers[c] = x[rng.choice(n, p=probs)]
            continue
        candidates = rng.choice(n, size=trials, p=pot / total)
        best_pot, best_d2, best_idx = np.inf, None, None
        for ci in candidates:
            nd2 = np.minimum(d2, ((x - x[ci]) ** 2).sum(axis=1))
            p = float((nd2 * w).sum())
            if p < best_pot:
                best_pot, best_d2, best_idx = p, nd2, ci
        centers[c] = x[best_idx]
        d2 = best_d2
    return centers


def _lloyd(x, w, cfg, rng):
    n, k = x.shape[0], cfg.k
    cent = _init_plusplus(x, w, k, rng)
    prev = np.inf
    labels = np.zeros(n, dtype=int)
    iters = 0
    for iters in range(1, cfg.max_iter + 1):
        d2 = ((x[:, None, :] - cent[None, :, :]) ** 2).sum(axis=2)
        labels = np.argmin(d2, axis=1)  # ties resolve to the lowest index
        _repair_empty(d2, labels, k)
        for j in range(k):
            m = labels == j
            cent[j] = np.average(x[m], axis=0, weights=w[m])
        obj = float(np.sum(w * ((x - cent[labels]) ** 2).sum(axis=1)))
        if obj > prev * (1.0 + 1e-12) + 1e-12:
            raise NumericalError(f"objective increased during Lloyd iteration: {prev} -> {obj}")
        if prev - obj <= cfg.tol * max(prev, np.finfo(float).tiny):
            break
        prev = obj
    return labels, iters


def _repair_empty(d2, labels, k):
    """Fill each empty cluster with the point farthest from its own centroid.

    Points that are their cluster's sole member stay put, so the repair never
    creates a new empty cluster. The moved point becomes the new cluster's
    centroid at the next update, contributing zero, so the objective cannot
    increase.
    """
    n = d2.shape[0]
    sizes = np.bincount(labels, minlength=k)
    for j in range(k):
        if sizes[j] > 0:
            continue
        own = d2[np.arange(n), labels].copy()
        own[sizes[labels] <= 1] = -np.inf
        far = int(np.argmax(own))
        sizes[labels[far]] -= 1
        labels[far] = j
        sizes[j] = 1


def _refine_single_moves(x, w, k, labels):
    """Best-improvement single-point moves until none lowers the objective.

    The exact objective change of moving point i from cluster a to b is

        w_i * W_b / (W_b + w_i) * |x_i - mu_b|^2
      - w_i * W_a / (W_a - w_i) * |x_i - mu_a|^2

    with W the cluster weight totals; centroids are updated incrementally.
    """
    n = x.shape[0]
    labels = labels.copy()
    obj, cent = _objective(x, w, k, labels)
    W = np.array([w[labels == j].sum() for j in range(k)])
    counts = np.bincount(labels, minlength=k)
    d2 = ((x[:, None, :] - cent[None, :, :]) ** 2).sum(axis=2)
    idx = np.arange(n)
    scale = max(abs(obj), 1.0)
    for _ in range(50 * n):  # each move strictly decreases the objective
        w_own = W[labels]
        removal = w * w_own / np.maximum(w_own - w, np.finfo(float).tiny) * d2[idx, labels]
        insertion = w[:, None] * (W[None, :] / (W[None, :] + w[:, None])) * d2
        delta = insertion - removal[:, None]
        delta[idx, labels] = np.inf
        delta[counts[labels] <= 1, :] = np.inf  # do not empty a cluster
        i = int(np.argmin(delta.min(axis=1)))
        j = int(np.argmin(delta[i]))
        if not delta[i, j] < -1e-12 * scale:
            break
        a = labels[i]
        cent[a] = (cent[a] * W[a] - w[i] * x[i]) / (W[a] - w[i])
        cent[j] = (cent[j] * W[j] + w[i] * x[i]) / (W[j] + w[i])
        W[a] -= w[i]
        W[j] += w[i]
        counts[a] -= 1
        counts[j] += 1
        labels[i] = j
        obj += float(delta[i, j])
        d2[:, a] = ((x - cent[a]) ** 2).sum(axis=1)
        d2[:, j] = ((x - cent[j]) ** 2).sum(axis=1)
    return labels
