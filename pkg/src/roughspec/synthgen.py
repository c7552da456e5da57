"""Synthetic block-structured similarity matrices with planted clusters.

Every element is assigned to one of m clusters i.i.d. according to given
proportions. Similarities within cluster i are drawn uniformly from
[min_in[i], max_in[i]]; similarities between clusters i and k are drawn
uniformly from [0, (max_out[i] + max_out[k]) / (2 m)].

Reproducibility rule: the seed feeds a numpy SeedSequence which is spawned
into n + 1 child streams (PCG64) - child 0 draws the cluster assignment,
child 1 + i fills row i of the upper triangle. Results are therefore
bit-identical for a given seed no matter how rows are scheduled.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace

import numpy as np

from .simcore import Partition, SimilarityMatrix, ValidationError

__all__ = [
    "GeneratorParams",
    "generate",
    "dataset_presets",
    "add_noise_documents",
    "write_labels_json",
    "read_labels_json",
    "RNG_NAME",
]

RNG_NAME = "numpy-pcg64-seedsequence-spawn"


@dataclass(frozen=True)
class GeneratorParams:
    n: int
    m: int
    props: tuple[float, ...]
    min_in: tuple[float, ...]
    max_in: tuple[float, ...]
    max_out: tuple[float, ...]
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"n must be >= 1, got {self.n}")
        if self.m < 1:
            raise ValidationError(f"m must be >= 1, got {self.m}")
        for name in ("props", "min_in", "max_in", "max_out"):
            vec = getattr(self, name)
            object.__setattr__(self, name, tuple(float(v) for v in vec))
            if len(vec) != self.m:
                raise ValidationError(f"{name} must have length m = {self.m}, got {len(vec)}")
        if any(p <= 0 for p in self.props):
            raise ValidationError("all proportions must be positive")
        for i, (lo, hi) in enumerate(zip(self.min_in, self.max_in)):
            if not 0.0 <= lo <= hi <= 1.0:
                raise ValidationError(f"cluster {i}: need 0 <= min_in <= max_in <= 1, got [{lo}, {hi}]")
        for i, mo in enumerate(self.max_out):
            if not 0.0 <= mo <= self.m:
                raise ValidationError(f"max_out[{i}] = {mo} outside [0, {self.m}]")
        total = sum(self.props)
        tiny = min(self.n * p / total for p in self.props)
        if tiny < 1.0:
            raise ValidationError(
                f"smallest expected cluster size is {tiny:.2f} < 1; increase n or rebalance props"
            )


def generate(params: GeneratorParams) -> tuple[SimilarityMatrix, Partition]:
    """Draw a similarity matrix and its planted cluster labels."""
    n, m = params.n, params.m
    children = np.random.SeedSequence(params.seed).spawn(n + 1)
    assign_rng = np.random.default_rng(children[0])
    probs = np.asarray(params.props) / sum(params.props)
    labels = None
    for _ in range(100):
        cand = assign_rng.choice(m, size=n, p=probs)
        if np.bincount(cand, minlength=m).min() > 0:
            labels = cand
            break
    if labels is None:
        raise ValidationError("could not draw an assignment without empty clusters in 100 attempts")

    min_in = np.asarray(params.min_in)
    max_in = np.asarray(params.max_in)
    max_out = np.asarray(params.max_out)
    s = np.zeros((n, n))
    for i in range(n - 1):
        row_rng = np.random.default_rng(children[i + 1])
        li = labels[i]
        lj = labels[i + 1 :]
        same = lj == li
        low = np.where(same, min_in[li], 0.0)
        high = np.where(same, max_in[li], (max_out[li] + max_out[lj]) / (2.0 * m))
        s[i, i + 1 :] = low + row_rng.random(n - 1 - i) * (high - low)
    s = s + s.T
    return SimilarityMatrix(s), Partition(labels, m)


_PRESETS = {
    1: dict(
        props=(1.0, 0.5, 1.0, 0.5),
        min_in=(0.3, 0.3, 0.3, 0.3),
        max_in=(0.7, 0.7, 0.7, 0.7),
        max_out=(0.6, 0.6, 0.6, 0.6),
    ),
    2: dict(
        props=(1.0, 0.5, 1.0, 0.5),
        min_in=(0.3, 0.35, 0.4, 0.45),
        max_in=(0.7, 0.65, 0.6, 0.55),
        max_out=(0.5, 0.6, 0.7, 0.8),
    ),
    3: dict(
        props=(1.0, 1.0 / 3.0, 1.0 / 9.0, 1.0 / 27.0),
        min_in=(0.3, 0.35, 0.4, 0.45),
        max_in=(0.7, 0.65, 0.6, 0.55),
        max_out=(0.6, 0.7, 0.8, 0.9),
    ),
    4: dict(
        props=(1.0, 3.0, 9.0, 27.0),
        min_in=(0.3, 0.35, 0.4, 0.45),
        max_in=(0.7, 0.65, 0.6, 0.55),
        max_out=(0.6, 0.7, 0.8, 0.9),
    ),
}


def dataset_presets(dataset_id: int, *, n: int = 1500, seed: int = 0) -> GeneratorParams:
    """The four benchmark parameter sets (m = 4 clusters, n = 1500 by default).

    1: balanced 2:1:2:1 clusters, identical similarity bands.
    2: same proportions, per-cluster bands and increasing leakage.
    3: strongly shrinking clusters (factor 27), small ones internally tighter.
    4: strongly growing clusters, small ones internally tighter - the regime
       where the combinatorial-Laplacian pipeline collapses the large ones.
    """
    if dataset_id not in _PRESETS:
        raise ValidationError(f"unknown dataset preset {dataset_id}; valid ids are 1..4")
    cfg = _PRESETS[dataset_id]
    return GeneratorParams(n=n, m=4, seed=seed, **cfg)


def add_noise_documents(
    s: SimilarityMatrix, count: int, high: float = 0.08, low: float = 0.0, seed: int = 0
) -> tuple[SimilarityMatrix, np.ndarray]:
    """Append documents with uniformly low similarity to everything.

    The new rows (including their mutual entries) are drawn from
    U(low, high) and appended at the end; returns the grown matrix and the
    indices of the injected documents.
    """
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    if not 0.0 <= low <= high <= 1.0:
        raise ValidationError(f"need 0 <= low <= high <= 1, got [{low}, {high}]")
    rng = np.random.default_rng(seed)
    n, total = s.n, s.n + count
    grown = np.zeros((total, total))
    grown[:n, :n] = s.entries
    block = low + rng.random((count, total)) * (high - low)
    grown[n:, :n] = block[:, :n]
    grown[:n, n:] = block[:, :n].T
    mutual = np.triu(block[:, n:], 1)
    grown[n:, n:] = mutual + mutual.T
    ids = s.item_ids or tuple(str(i) for i in range(n))
    ids = ids + tuple(f"noise_{i}" for i in range(count))
    return SimilarityMatrix(grown, ids), np.arange(n, total)


def write_labels_json(path, partition: Partition, params: GeneratorParams) -> None:
    payload = {
        "labels": partition.labels.tolist(),
        "params": asdict(params),
        "seed": params.seed,
        "rng": RNG_NAME,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)


def read_labels_json(path) -> tuple[np.ndarray, dict]:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if "labels" not in payload:
        raise ValidationError(f"{path}: missing 'labels' field")
    return np.asarray(payload["labels"], dtype=int), payload
