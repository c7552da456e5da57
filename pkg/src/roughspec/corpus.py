"""Text documents to term vectors to a cosine similarity matrix.

Tokenization is deliberately simple and reproducible: lowercase, split on
anything that is not a letter or digit, and drop single-character digit
tokens. Terms that occur in exactly one document of the collection are
removed; documents left without any terms are dropped (and reported).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

import numpy as np

from .simcore import SimilarityMatrix, ValidationError

__all__ = [
    "Corpus",
    "TermVectorSpace",
    "ReducedSpace",
    "tokenize",
    "read_corpus_jsonl",
    "build_term_space",
    "cosine_similarity",
    "svd_reduce",
]

_TOKEN_SPLIT = re.compile(r"[^0-9a-z]+")


def tokenize(text: str) -> list[str]:
    """Lowercase, split on non-alphanumerics, discard single-digit tokens."""
    out = []
    for tok in _TOKEN_SPLIT.split(text.lower()):
        if not tok:
            continue
        if len(tok) == 1 and tok.isdigit():
            continue
        out.append(tok)
    return out


@dataclass(frozen=True)
class Corpus:
    """An ordered document collection, optionally with ground-truth labels."""

    docs: tuple[tuple[str, str], ...]  # (doc_id, raw text)
    labels: tuple[str | None, ...] | None = None

    def __post_init__(self):
        ids = [d[0] for d in self.docs]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise ValidationError(f"duplicate doc id {dup!r}")
        if self.labels is not None and len(self.labels) != len(self.docs):
            raise ValidationError(
                f"labels length {len(self.labels)} does not match {len(self.docs)} docs"
            )


def read_corpus_jsonl(path) -> Corpus:
    """Read newline-delimited JSON docs: {"id": str, "text": str, "label": str|null}."""
    docs, labels, any_label = [], [], False
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            if "id" not in obj or "text" not in obj:
                raise ValidationError(f"{path}:{lineno}: document needs 'id' and 'text' fields")
            docs.append((str(obj["id"]), str(obj["text"])))
            label = obj.get("label")
            labels.append(None if label is None else str(label))
            any_label = any_label or label is not None
    if not docs:
        raise ValidationError(f"{path}: empty corpus")
    return Corpus(tuple(docs), tuple(labels) if any_label else None)


@dataclass(frozen=True)
class TermVectorSpace:
    """Documents as nonnegative term-weight vectors over a pruned vocabulary."""

    vocabulary: tuple[str, ...]
    doc_vectors: np.ndarray  # (n_docs, n_terms)
    doc_ids: tuple[str, ...]
    dropped_docs: tuple[str, ...]
    labels: tuple[str | None, ...] | None = None

    @property
    def n(self) -> int:
        return self.doc_vectors.shape[0]


@dataclass(frozen=True)
class ReducedSpace:
    """Documents as dense coordinates after SVD reduction (may be negative)."""

    doc_vectors: np.ndarray  # (n_docs, rank)
    doc_ids: tuple[str, ...]
    dropped_docs: tuple[str, ...]
    labels: tuple[str | None, ...] | None = None

    @property
    def n(self) -> int:
        return self.doc_vectors.shape[0]


def build_term_space(corpus: Corpus, weighting: str = "tf") -> TermVectorSpace:
    """Vectorize a corpus with term-frequency or tf-idf weights.

    Vocabulary pruning removes, in a single pass, every term whose document
    frequency in the original collection is exactly one; documents that end
    up with an all-zero vector are dropped and listed in ``dropped_docs``.
    Raises if nothing survives. tf-idf uses idf = 1 + ln(n/df), which keeps
    weights strictly positive so pruning alone decides which docs survive.
    """
    if weighting not in ("tf", "tfidf"):
        raise ValidationError(f"weighting must be 'tf' or 'tfidf', got {weighting!r}")
    if not corpus.docs:
        raise ValidationError("corpus is empty")

    token_lists = [tokenize(text) for _, text in corpus.docs]
    df: dict[str, int] = {}
    for toks in token_lists:
        for t in set(toks):
            df[t] = df.get(t, 0) + 1
    vocabulary = tuple(sorted(t for t, c in df.items() if c >= 2))
    if not vocabulary:
        raise ValidationError("no term occurs in more than one document; nothing to vectorize")
    col = {t: i for i, t in enumerate(vocabulary)}

    counts = np.zeros((len(corpus.docs), len(vocabulary)))
    for i, toks in enumerate(token_lists):
        for t in toks:
            j = col.get(t)
            if j is not None:
                counts[i, j] += 1.0

    keep = counts.sum(axis=1) > 0
    if not np.any(keep):
        raise ValidationError("all documents became empty after vocabulary pruning")
    dropped = tuple(corpus.docs[i][0] for i in np.nonzero(~keep)[0])
    vectors = counts[keep]
    if weighting == "tfidf":
        docfreq = (vectors > 0).sum(axis=0)
        vectors = vectors * (1.0 + np.log(vectors.shape[0] / docfreq))[None, :]

    doc_ids = tuple(corpus.docs[i][0] for i in np.nonzero(keep)[0])
    labels = None
    if corpus.labels is not None:
        labels = tuple(corpus.labels[i] for i in np.nonzero(keep)[0])
    return TermVectorSpace(vocabulary, vectors, doc_ids, dropped, labels)


def cosine_similarity(space) -> SimilarityMatrix:
    """Pairwise cosine similarity of document vectors, diagonal forced to zero.

    Accepts a TermVectorSpace or a ReducedSpace; negative cosines (possible
    only after SVD reduction) are clamped to zero so the result is always a
    valid similarity matrix.
    """
    v = np.asarray(space.doc_vectors, dtype=float)
    norms = np.linalg.norm(v, axis=1)
    if np.any(norms == 0.0):
        i = int(np.nonzero(norms == 0.0)[0][0])
        raise ValidationError(f"document {space.doc_ids[i]!r} has a zero vector")
    unit = v / norms[:, None]
    sim = np.clip(unit @ unit.T, 0.0, 1.0)
    sim = (sim + sim.T) / 2.0
    np.fill_diagonal(sim, 0.0)
    return SimilarityMatrix(sim, tuple(space.doc_ids))


def svd_reduce(space: TermVectorSpace, rank: int) -> ReducedSpace:
    """Project documents onto the top singular directions of the doc-term matrix.

    At full rank the projected coordinates preserve all inner products, so
    downstream cosine similarities are unchanged; lower ranks act as a
    latent-semantic smoothing step.
    """
    v = space.doc_vectors
    max_rank = min(v.shape)
    if rank < 1 or rank > max_rank:
        raise ValidationError(f"rank must be in [1, {max_rank}], got {rank}")
    u, sing, _ = np.linalg.svd(v, full_matrices=False)
    coords = u[:, :rank] * sing[:rank]
    return ReducedSpace(coords, space.doc_ids, space.dropped_docs, space.labels)
