"""Core numeric types shared by the whole library.

Similarity matrices, node degrees, embeddings, partitions, the dense
symmetric eigendecomposition used everywhere, and the CSV formats for
similarity matrices and embeddings.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ValidationError",
    "NumericalError",
    "SimilarityMatrix",
    "DegreeInfo",
    "Embedding",
    "Partition",
    "EigenDecomposition",
    "symmetric_eig",
    "degree_info",
    "read_similarity_csv",
    "write_similarity_csv",
    "read_embedding_csv",
    "write_embedding_csv",
]

#: Maximum tolerated asymmetry |a[i,j] - a[j,i]| of matrices accepted as symmetric.
SYMMETRY_TOL = 1e-10


class ValidationError(ValueError):
    """Input violates a documented contract (bad matrix, bad config, bad file)."""


class NumericalError(RuntimeError):
    """A numerical routine failed to deliver its accuracy contract."""


def _as_float_matrix(entries, name: str) -> np.ndarray:
    a = np.asarray(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be a square 2-D array, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValidationError(f"{name} must not be empty")
    bad = np.argwhere(~np.isfinite(a))
    if bad.size:
        i, j = bad[0]
        raise ValidationError(f"{name}[{i},{j}] is not finite: {a[i, j]!r}")
    return a


def _check_symmetry(a: np.ndarray, name: str, tol: float = SYMMETRY_TOL) -> None:
    asym = np.abs(a - a.T)
    ij = np.unravel_index(np.argmax(asym), asym.shape)
    if asym[ij] > tol:
        i, j = ij
        raise ValidationError(
            f"{name} is not symmetric: |{name}[{i},{j}] - {name}[{j},{i}]| = {asym[i, j]:.3e} > {tol:g}"
        )


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SimilarityMatrix:
    """Symmetric n-by-n pairwise similarities in [0, 1] with a zero diagonal.

    Self-similarities are not represented: the diagonal must be exactly zero.
    ``item_ids`` optionally carries stable external identifiers for the rows.
    Instances are immutable; the entry array is marked read-only.
    """

    entries: np.ndarray
    item_ids: tuple[str, ...] | None = None

    def __post_init__(self):
        a = _as_float_matrix(self.entries, "similarity")
        _check_symmetry(a, "similarity")
        diag_bad = np.nonzero(np.diag(a) != 0.0)[0]
        if diag_bad.size:
            i = diag_bad[0]
            raise ValidationError(f"similarity[{i},{i}] = {a[i, i]!r}, diagonal must be zero")
        out = np.argwhere((a < 0.0) | (a > 1.0))
        if out.size:
            i, j = out[0]
            raise ValidationError(f"similarity[{i},{j}] = {a[i, j]!r} outside [0, 1]")
        a = (a + a.T) / 2.0  # exact for already-symmetric input
        object.__setattr__(self, "entries", _freeze(a))
        if self.item_ids is not None:
            ids = tuple(str(x) for x in self.item_ids)
            if len(ids) != a.shape[0]:
                raise ValidationError(f"item_ids has length {len(ids)}, expected {a.shape[0]}")
            object.__setattr__(self, "item_ids", ids)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def submatrix(self, indices) -> "SimilarityMatrix":
        """Principal submatrix on ``indices``, keeping their item ids."""
        idx = np.asarray(indices, dtype=int)
        ids = self.item_ids or tuple(str(i) for i in range(self.n))
        return SimilarityMatrix(self.entries[np.ix_(idx, idx)], tuple(ids[i] for i in idx))


@dataclass(frozen=True)
class DegreeInfo:
    """Node degrees (similarity row sums) and their self-loop-augmented variant."""

    degrees: np.ndarray
    augmented_degrees: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "degrees", _freeze(np.asarray(self.degrees, dtype=float)))
        object.__setattr__(
            self, "augmented_degrees", _freeze(np.asarray(self.augmented_degrees, dtype=float))
        )


@dataclass(frozen=True)
class Embedding:
    """Points in d-dimensional real coordinates, optionally with clustering weights.

    ``kind`` names the producing method (``"L"``, ``"N"``, ``"K"``, ...).
    ``dropped_mass`` records the absolute sum of negative Gram eigenvalues that
    had to be discarded to keep coordinates real; it bounds the residual error
    of the producing method's distance identity.
    """

    coords: np.ndarray
    weights: np.ndarray | None = None
    kind: str = ""
    dropped_mass: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        if c.ndim != 2 or c.shape[1] < 1:
            raise ValidationError(f"embedding coords must be n x d with d >= 1, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValidationError("embedding coords contain non-finite values")
        object.__setattr__(self, "coords", _freeze(c))
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            if w.shape != (c.shape[0],):
                raise ValidationError(f"weights shape {w.shape} does not match {c.shape[0]} points")
            if not np.all(w > 0):
                raise ValidationError("embedding weights must be strictly positive")
            object.__setattr__(self, "weights", _freeze(w))

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def d(self) -> int:
        return self.coords.shape[1]


@dataclass(frozen=True)
class Partition:
    """Assignment of n items to clusters 0..k-1."""

    labels: np.ndarray
    k: int

    def __post_init__(self):
        lab = np.asarray(self.labels, dtype=int)
        if lab.ndim != 1 or lab.size == 0:
            raise ValidationError("labels must be a non-empty 1-D integer array")
        if self.k < 1:
            raise ValidationError("k must be >= 1")
        if lab.min() < 0 or lab.max() >= self.k:
            raise ValidationError(f"labels must lie in [0, {self.k}), got range [{lab.min()}, {lab.max()}]")
        object.__setattr__(self, "labels", _freeze(lab))

    @property
    def n(self) -> int:
        return self.labels.size

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    @property
    def empty_clusters(self) -> tuple[int, ...]:
        return tuple(int(j) for j in np.nonzero(self.sizes == 0)[0])


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues (ascending) and matching unit-length eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _freeze(np.asarray(self.values, dtype=float)))
        object.__setattr__(self, "vectors", _freeze(np.asarray(self.vectors, dtype=float)))


def symmetric_eig(matrix) -> EigenDecomposition:
    """Full eigendecomposition of a dense symmetric matrix.

    Eigenvalues come back ascending; column i of ``vectors`` is the unit
    eigenvector of ``values[i]``. Reconstruction V diag(w) V^T matches the
    input to about 1e-8 * n in max-abs terms. Within numerically degenerate
    eigenvalue clusters the individual eigenvectors are solver-defined;
    only the spanned subspace is stable.
    """
    a = _as_float_matrix(matrix, "matrix")
    _check_symmetry(a, "matrix")
    a = (a + a.T) / 2.0
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails here
        raise NumericalError(f"symmetric eigendecomposition failed: {exc}") from exc
    return EigenDecomposition(values, vectors)


def degree_info(s: SimilarityMatrix) -> DegreeInfo:
    """Row sums of the similarity matrix and the same with the diagonal read as 1.

    Summation runs in ascending column order (scalar accumulation), so the
    result is bit-identical across runs and platforms with IEEE doubles.
    """
    # cumsum is a strict left-to-right accumulation; its last column is the
    # ascending-index scalar sum of each row.
    degrees = np.cumsum(s.entries, axis=1)[:, -1]
    return DegreeInfo(degrees, degrees + 1.0)


# ---------------------------------------------------------------------------
# CSV formats
# ---------------------------------------------------------------------------
# Similarity CSV: first line "n=<count>", then n rows of n comma-separated
# decimal values. Values are written with 17 significant digits, which
# round-trips IEEE doubles exactly. Optional sidecar "<path>.json" with
# {"item_ids": [...]}.


def _fmt(v: float) -> str:
    return format(v, ".17g")


def _sidecar_path(path) -> str:
    return str(path) + ".json"


def write_similarity_csv(s: SimilarityMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"n={s.n}\n")
        for row in s.entries:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    if s.item_ids is not None:
        with open(_sidecar_path(path), "w", encoding="utf-8") as fh:
            json.dump({"item_ids": list(s.item_ids)}, fh)


def read_similarity_csv(path) -> SimilarityMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("n="):
            raise ValidationError(f"{path}: first line must be 'n=<count>', got {header!r}")
        try:
            n = int(header[2:])
        except ValueError as exc:
            raise ValidationError(f"{path}: bad count in header {header!r}") from exc
        if n < 1:
            raise ValidationError(f"{path}: n must be >= 1, got {n}")
        rows = []
        for i in range(n):
            line = fh.readline()
            if not line:
                raise ValidationError(f"{path}: expected {n} rows, file ends after row {i}")
            parts = line.strip().split(",")
            if len(parts) != n:
                raise ValidationError(f"{path}: row {i} has {len(parts)} values, expected {n}")
            try:
                rows.append([float(p) for p in parts])
            except ValueError as exc:
                raise ValidationError(f"{path}: row {i} contains a non-numeric value") from exc
    a = np.array(rows, dtype=float)
    item_ids = None
    sidecar = _sidecar_path(path)
    if os.path.exists(sidecar):
        with open(sidecar, "r", encoding="utf-8") as fh:
            meta = json.load(fh)
        ids = meta.get("item_ids")
        if ids is not None:
            item_ids = tuple(str(x) for x in ids)
    return SimilarityMatrix(a, item_ids)


# Embedding CSV: a "# kind=<tag>" comment line, a header "dim_1,...,dim_d"
# (plus ",weight" when weights are present), then one row per item.


def write_embedding_csv(e: Embedding, path) -> None:
    cols = [f"dim_{i + 1}" for i in range(e.d)]
    if e.weights is not None:
        cols.append("weight")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# kind={e.kind}\n")
        fh.write(",".join(cols) + "\n")
        for i in range(e.n):
            row = [_fmt(v) for v in e.coords[i]]
            if e.weights is not None:
                row.append(_fmt(e.weights[i]))
            fh.write(",".join(row) + "\n")


def read_embedding_csv(path) -> Embedding:
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline().strip()
        if not first.startswith("# kind="):
            raise ValidationError(f"{path}: expected '# kind=<tag>' on the first line")
        kind = first[len("# kind="):]
        header = fh.readline().strip().split(",")
        has_w = header and header[-1] == "weight"
        d = len(header) - (1 if has_w else 0)
        coords, weights = [], []
        for line in fh:
            parts = [float(p) for p in line.strip().split(",")]
            if len(parts) != len(header):
                raise ValidationError(f"{path}: row width {len(parts)} does not match header")
            coords.append(parts[:d])
            if has_w:
                weights.append(parts[d])
    return Embedding(np.array(coords), np.array(weights) if has_w else None, kind=kind)
