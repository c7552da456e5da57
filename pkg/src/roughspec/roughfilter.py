"""Boundary-document detection from per-document similarity profiles.

For every document, compare the mean of its highest few similarities with
the mean of its lowest few. Documents for which the two barely differ are
equally (dis)similar to everything; they sit on the boundary of whatever
cluster they would be forced into and can be removed before clustering.
The check uses only the similarity matrix, never a clustering result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .simcore import SimilarityMatrix, ValidationError

__all__ = [
    "FilterProfile",
    "similarity_profile",
    "filter_boundary",
    "suggest_threshold",
    "write_profile_csv",
]

DEFAULT_FRACTION = 0.05


@dataclass(frozen=True)
class FilterProfile:
    """Per-document top/bottom similarity averages at fraction ``q``."""

    avg_top: np.ndarray
    avg_bot: np.ndarray
    q: float

    def __post_init__(self):
        object.__setattr__(self, "avg_top", np.asarray(self.avg_top, dtype=float))
        object.__setattr__(self, "avg_bot", np.asarray(self.avg_bot, dtype=float))

    @property
    def n(self) -> int:
        return self.avg_top.size

    @property
    def avg_diff(self) -> np.ndarray:
        return self.avg_top - self.avg_bot

    @property
    def sorted_order(self) -> np.ndarray:
        """Document indices ascending by avg_diff, ties by index."""
        return np.argsort(self.avg_diff, kind="stable")


def similarity_profile(s: SimilarityMatrix, q: float = DEFAULT_FRACTION) -> FilterProfile:
    """Average the top and bottom q-fraction of each document's similarities.

    Each document has n-1 similarities to the others (the self-similarity
    diagonal is excluded). The fraction is rounded up, so at least one value
    enters each average.
    """
    if not 0.0 < q <= 0.5:
        raise ValidationError(f"fraction q must be in (0, 0.5], got {q}")
    n = s.n
    if n < 2:
        raise ValidationError("similarity profile needs at least 2 documents")
    count = math.ceil(q * (n - 1))
    off_diag = s.entries[~np.eye(n, dtype=bool)].reshape(n, n - 1)
    off_diag = np.sort(off_diag, axis=1)
    avg_bot = off_diag[:, :count].mean(axis=1)
    avg_top = off_diag[:, n - 1 - count :].mean(axis=1)
    return FilterProfile(avg_top, avg_bot, q)


def filter_boundary(
    s: SimilarityMatrix, profile: FilterProfile, t: float
) -> tuple[SimilarityMatrix, np.ndarray]:
    """Remove the documents whose top/bottom similarity gap is below ``t``.

    Returns the similarity matrix restricted to the kept documents and the
    removed original indices. The returned matrix carries item ids that map
    rows back to the original documents (the original ids when present,
    otherwise the original integer positions as strings).
    """
    if t < 0:
        raise ValidationError(f"threshold must be >= 0, got {t}")
    if profile.n != s.n:
        raise ValidationError(f"profile covers {profile.n} documents, matrix has {s.n}")
    keep = profile.avg_diff >= t
    removed = np.nonzero(~keep)[0]
    if not np.any(keep):
        raise ValidationError(f"threshold {t} removes every document; nothing left to cluster")
    core = s.submatrix(np.nonzero(keep)[0])
    return core, removed


def suggest_threshold(profile: FilterProfile) -> float:
    """Threshold suggestion from the largest gap in the sorted gap sequence.

    Scans consecutive differences of the ascending avg_diff values, restricted
    to gaps that start in the lower half of the documents, and returns the
    value just above the widest one. Returns 0 when the sequence is flat.
    This is only a starting point: plot the sorted sequence and override.
    """
    n = profile.n
    if n < 3:
        raise ValidationError("threshold suggestion needs at least 3 documents")
    diffs = np.sort(profile.avg_diff)
    last_start = min(math.ceil(n / 2) - 1, n - 2)
    gaps = diffs[1 : last_start + 2] - diffs[: last_start + 1]
    best = int(np.argmax(gaps))
    if gaps[best] <= 0.0:
        return 0.0
    return float(diffs[best + 1])


def write_profile_csv(
    profile: FilterProfile,
    path,
    item_ids: tuple[str, ...] | None = None,
    thresholds: tuple[float, ...] = (0.1, 0.2),
) -> None:
    """Dump the profile as plot-ready CSV, one row per document.

    Columns: doc_id, avg_top, avg_bot, avg_diff, then one 0/1 column
    ``removed_at_<t>`` per threshold.
    """
    ids = item_ids if item_ids is not None else tuple(str(i) for i in range(profile.n))
    if len(ids) != profile.n:
        raise ValidationError(f"{len(ids)} ids for {profile.n} documents")
    header = ["doc_id", "avg_top", "avg_bot", "avg_diff"]
    header += [f"removed_at_{t:g}" for t in thresholds]
    diff = profile.avg_diff
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(profile.n):
            row = [
                str(ids[i]),
                format(profile.avg_top[i], ".17g"),
                format(profile.avg_bot[i], ".17g"),
                format(diff[i], ".17g"),
            ]
            row += ["1" if diff[i] < t else "0" for t in thresholds]
            fh.write(",".join(row) + "\n")
