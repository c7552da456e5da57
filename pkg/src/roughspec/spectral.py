"""Graph Laplacians and spectral embeddings of a similarity matrix.

Supports the combinatorial Laplacian D - S, the normalized Laplacian
D^-1/2 (D - S) D^-1/2, the random-walk Laplacian (D - S) D^-1, and the
additive affinity normalization of Kamvar, Klein and Manning (2003).
``spectral_embed`` turns any of them into point coordinates for k-means,
and ``method_variant`` enumerates the nine numbered clustering recipes
used by the sweep tooling.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .simcore import Embedding, SimilarityMatrix, ValidationError, degree_info, symmetric_eig

__all__ = [
    "LaplacianKind",
    "SpectralOptions",
    "combinatorial_laplacian",
    "normalized_laplacian",
    "random_walk_laplacian",
    "kamvar_affinity",
    "spectral_embed",
    "MethodVariant",
    "method_variant",
    "METHOD_IDS",
    "DEFAULT_SVD_RANK_CAP",
    "svd_smooth_similarity",
]


class LaplacianKind(Enum):
    COMBINATORIAL = "combinatorial"
    NORMALIZED = "normalized"
    RANDOM_WALK = "random_walk"
    KAMVAR_AFFINITY = "kamvar"


@dataclass(frozen=True)
class SpectralOptions:
    """Knobs of the spectral embedding step.

    ``extra_dimension`` keeps k+1 eigenvectors instead of k. ``unit_rows``
    scales each embedding row to unit length (rows that are exactly zero are
    left alone). ``svd_rank`` requests an SVD pre-reduction before similarity
    construction; it is consumed by the pipeline layer, not here.
    ``skip_trivial`` drops the constant eigenvector and takes the next ones
    instead; experimental, off by default.
    """

    k: int
    extra_dimension: bool = False
    unit_rows: bool = False
    svd_rank: int | None = None
    skip_trivial: bool = False

    def __post_init__(self):
        if self.k < 2:
            raise ValidationError(f"cluster count must be >= 2, got {self.k}")
        if self.svd_rank is not None and self.svd_rank < 1:
            raise ValidationError(f"svd_rank must be >= 1, got {self.svd_rank}")

    @property
    def dims(self) -> int:
        return self.k + (1 if self.extra_dimension else 0)


def _positive_degrees(s: SimilarityMatrix) -> np.ndarray:
    deg = degree_info(s).degrees
    zero = np.nonzero(deg <= 0.0)[0]
    if zero.size:
        raise ValidationError(
            f"node {zero[0]} has zero degree; this Laplacian is undefined for isolated nodes"
        )
    return deg


def combinatorial_laplacian(s: SimilarityMatrix) -> np.ndarray:
    """D - S: symmetric, positive semidefinite, rows summing to zero."""
    deg = degree_info(s).degrees
    return np.diag(deg) - s.entries


def normalized_laplacian(s: SimilarityMatrix) -> np.ndarray:
    """I - D^-1/2 S D^-1/2, requiring all degrees positive."""
    deg = _positive_degrees(s)
    dm = 1.0 / np.sqrt(deg)
    lap = np.eye(s.n) - dm[:, None] * s.entries * dm[None, :]
    return (lap + lap.T) / 2.0


def random_walk_laplacian(s: SimilarityMatrix) -> np.ndarray:
    """(D - S) D^-1 = I - S D^-1: columns sum to zero; not symmetric in general.

    Shares its spectrum with the normalized Laplacian (the two are similar
    matrices via D^1/2).
    """
    deg = _positive_degrees(s)
    return combinatorial_laplacian(s) / deg[None, :]


def kamvar_affinity(s: SimilarityMatrix) -> np.ndarray:
    """Additive affinity normalization A' = (S + d_max I - D) / d_max.

    A' is symmetric, nonnegative, and doubly stochastic; clustering uses its
    leading eigenvectors rather than the trailing ones of a Laplacian.
    """
    deg = degree_info(s).degrees
    d_max = float(deg.max())
    if d_max <= 0.0:
        raise ValidationError("all similarities are zero; affinity normalization undefined")
    return (s.entries + d_max * np.eye(s.n) - np.diag(deg)) / d_max


def spectral_embed(s: SimilarityMatrix, kind: LaplacianKind, opts: SpectralOptions) -> Embedding:
    """Embed items as rows of selected eigenvectors of the chosen operator.

    Laplacian kinds use the eigenvectors of the smallest eigenvalues (the
    constant one included unless ``opts.skip_trivial``); the Kamvar affinity
    uses the largest. The embedding carries no weights.
    """
    d = opts.dims
    offset = 1 if opts.skip_trivial else 0
    if d + offset > s.n:
        raise ValidationError(f"{d + offset} eigenvectors requested from an n={s.n} matrix")

    if kind is LaplacianKind.KAMVAR_AFFINITY:
        eig = symmetric_eig(kamvar_affinity(s))
        take = eig.vectors[:, s.n - offset - d : s.n - offset]
        coords = take[:, ::-1]  # leading eigenvector first
    else:
        if kind is LaplacianKind.COMBINATORIAL:
            lap = combinatorial_laplacian(s)
        elif kind is LaplacianKind.NORMALIZED:
            lap = normalized_laplacian(s)
        elif kind is LaplacianKind.RANDOM_WALK:
            # Compute through the symmetric twin and map back: if Lsym u = t u
            # then D^1/2 u is an eigenvector of (D - S) D^-1 for the same t.
            eig = symmetric_eig(normalized_laplacian(s))
            root = np.sqrt(degree_info(s).degrees)
            vecs = root[:, None] * eig.vectors[:, offset : offset + d]
            vecs = vecs / np.linalg.norm(vecs, axis=0, keepdims=True)
            return _finish_embedding(vecs, opts, "RW")
        else:  # pragma: no cover - enum is exhaustive
            raise ValidationError(f"unknown Laplacian kind {kind!r}")
        eig = symmetric_eig(lap)
        coords = eig.vectors[:, offset : offset + d]

    tag = {
        LaplacianKind.COMBINATORIAL: "L",
        LaplacianKind.NORMALIZED: "N",
        LaplacianKind.KAMVAR_AFFINITY: "Kamvar",
    }[kind]
    return _finish_embedding(np.array(coords), opts, tag)


def _finish_embedding(coords: np.ndarray, opts: SpectralOptions, tag: str) -> Embedding:
    if opts.unit_rows:
        norms = np.linalg.norm(coords, axis=1)
        nz = norms > 0.0
        coords = coords.copy()
        coords[nz] /= norms[nz, None]
    return Embedding(coords, None, kind=tag)


# ---------------------------------------------------------------------------
# Numbered method variants
# ---------------------------------------------------------------------------

#: Default cap for the rank of the SVD pre-reduction step.
DEFAULT_SVD_RANK_CAP = 100

#: Valid numbered method identifiers.
METHOD_IDS = tuple(range(9))


@dataclass(frozen=True)
class MethodVariant:
    """One of the nine numbered spectral clustering recipes.

    The numbering crosses the operator (combinatorial / Kamvar / normalized)
    with row normalization, an extra embedding dimension, and an optional SVD
    pre-reduction. The exact id assignment is a convention of this library:

    ====  =============  =========  =========  =========
      id  operator       unit rows  extra dim  prior SVD
    ====  =============  =========  =========  =========
       0  combinatorial  yes        no         no
       1  combinatorial  yes        yes        no
       2  Kamvar         no         no         no
       3  Kamvar         no         yes        no
       4  normalized     no         no         no
       5  normalized     yes        no         no
       6  normalized     yes        yes        no
       7  normalized     yes        yes        yes
       8  normalized     yes        no         yes
    ====  =============  =========  =========  =========
    """

    method_id: int
    kind: LaplacianKind
    unit_rows: bool
    extra_dimension: bool
    svd_prior: bool

    def options(self, k: int, svd_rank: int | None = None) -> SpectralOptions:
        return SpectralOptions(
            k=k,
            extra_dimension=self.extra_dimension,
            unit_rows=self.unit_rows,
            svd_rank=svd_rank if self.svd_prior else None,
        )


_VARIANTS = {
    0: (LaplacianKind.COMBINATORIAL, True, False, False),
    1: (LaplacianKind.COMBINATORIAL, True, True, False),
    2: (LaplacianKind.KAMVAR_AFFINITY, False, False, False),
    3: (LaplacianKind.KAMVAR_AFFINITY, False, True, False),
    4: (LaplacianKind.NORMALIZED, False, False, False),
    5: (LaplacianKind.NORMALIZED, True, False, False),
    6: (LaplacianKind.NORMALIZED, True, True, False),
    7: (LaplacianKind.NORMALIZED, True, True, True),
    8: (LaplacianKind.NORMALIZED, True, False, True),
}


def method_variant(method_id: int) -> MethodVariant:
    if method_id not in _VARIANTS:
        raise ValidationError(f"unknown method id {method_id}; valid ids are 0..8")
    kind, unit, extra, svd = _VARIANTS[method_id]
    return MethodVariant(method_id, kind, unit, extra, svd)


def svd_smooth_similarity(s: SimilarityMatrix, rank: int) -> SimilarityMatrix:
    """Rank-truncated reconstruction of a similarity matrix.

    Keeps the ``rank`` eigencomponents of largest magnitude and rebuilds the
    matrix from them, clamping back into [0, 1] and restoring the zero
    diagonal. This is the SVD pre-reduction applied when the pipeline input
    is a bare similarity matrix instead of a document collection.
    """
    if rank < 1 or rank > s.n:
        raise ValidationError(f"rank must be in [1, {s.n}], got {rank}")
    eig = symmetric_eig(s.entries)
    order = np.argsort(-np.abs(eig.values))[:rank]
    vecs = eig.vectors[:, order]
    recon = (vecs * eig.values[order]) @ vecs.T
    recon = np.clip((recon + recon.T) / 2.0, 0.0, 1.0)
    np.fill_diagonal(recon, 0.0)
    return SimilarityMatrix(recon, s.item_ids)
