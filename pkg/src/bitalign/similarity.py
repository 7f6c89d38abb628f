"""Similarity-matrix word alignment over precomputed contextual embeddings.

Embeddings arrive as JSONL records produced by an external encoder; this
module turns them into cosine similarity matrices and extracts links with
mutual-argmax, iterated mutual-argmax, maximum-weight matching or a
softmax-threshold rule, at either subword or word granularity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import AlignmentSet, FormatError

__all__ = [
    "LEVELS",
    "METHODS",
    "EmbeddingRecord",
    "SimilarityMatrix",
    "cosine_matrix",
    "extract_argmax",
    "extract_itermax",
    "extract_match",
    "extract_softmax_threshold",
    "aggregate_to_words",
    "align_record",
    "read_embedding_records",
    "write_embedding_records",
]

LEVELS = ("word", "subword")
METHODS = ("argmax", "itermax", "match", "softmax")

DEFAULT_LAYER = 8


def _check_sub2word(name: str, mapping: tuple[int, ...]) -> None:
    if not mapping:
        raise ValueError(f"{name} is empty")
    if mapping[0] != 0:
        raise ValueError(f"{name} must start at word index 0, got {mapping[0]}")
    for k in range(1, len(mapping)):
        step = mapping[k] - mapping[k - 1]
        if step not in (0, 1):
            raise ValueError(
                f"{name} must be non-decreasing without gaps, "
                f"got {mapping[k - 1]} -> {mapping[k]} at position {k}"
            )


@dataclass(frozen=True)
class EmbeddingRecord:
    """Per-sentence-pair subword vectors plus subword-to-word maps.

    Both sides must share one vector dimension; each sub2word map is
    non-decreasing, starts at 0 and covers every word index up to its
    maximum, so word counts are implied by the maps.
    """

    id: int
    src_sub2word: tuple[int, ...]
    tgt_sub2word: tuple[int, ...]
    src_vecs: np.ndarray
    tgt_vecs: np.ndarray
    layer: int = DEFAULT_LAYER

    def __post_init__(self) -> None:
        object.__setattr__(self, "src_sub2word", tuple(int(v) for v in self.src_sub2word))
        object.__setattr__(self, "tgt_sub2word", tuple(int(v) for v in self.tgt_sub2word))
        src = np.asarray(self.src_vecs, dtype=np.float64)
        tgt = np.asarray(self.tgt_vecs, dtype=np.float64)
        object.__setattr__(self, "src_vecs", src)
        object.__setattr__(self, "tgt_vecs", tgt)
        if self.id < 0:
            raise ValueError(f"record id must be non-negative, got {self.id}")
        if self.layer < 0:
            raise ValueError(f"layer must be non-negative, got {self.layer}")
        _check_sub2word("src_sub2word", self.src_sub2word)
        _check_sub2word("tgt_sub2word", self.tgt_sub2word)
        for name, vecs, mapping in (
            ("src", src, self.src_sub2word),
            ("tgt", tgt, self.tgt_sub2word),
        ):
            if vecs.ndim != 2:
                raise ValueError(f"{name}_vecs must be a 2-d array, got shape {vecs.shape}")
            if vecs.shape[0] != len(mapping):
                raise ValueError(
                    f"{name}_vecs has {vecs.shape[0]} rows but {name}_sub2word "
                    f"has {len(mapping)} entries"
                )
            if not np.isfinite(vecs).all():
                raise ValueError(f"{name}_vecs contains NaN or Inf")
        if src.shape[1] == 0:
            raise ValueError("vector dimension must be positive")
        if src.shape[1] != tgt.shape[1]:
            raise ValueError(
                f"vector dimension mismatch: source {src.shape[1]} vs target {tgt.shape[1]}"
            )

    @property
    def src_word_count(self) -> int:
        return self.src_sub2word[-1] + 1

    @property
    def tgt_word_count(self) -> int:
        return self.tgt_sub2word[-1] + 1


@dataclass(frozen=True)
class SimilarityMatrix:
    """A source-by-target similarity matrix at a stated granularity."""

    values: np.ndarray
    level: str

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        if self.level not in LEVELS:
            raise ValueError(f"unknown level {self.level!r}, expected one of {LEVELS}")
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise ValueError(f"similarity matrix must be 2-d and non-empty, got shape {values.shape}")
        if not np.isfinite(values).all():
            raise ValueError("similarity matrix contains NaN or Inf")
        if values.min() < -1.0 - 1e-12 or values.max() > 1.0 + 1e-12:
            raise ValueError("similarity values outside [-1, 1]")

    @property
    def row_count(self) -> int:
        return int(self.values.shape[0])

    @property
    def col_count(self) -> int:
        return int(self.values.shape[1])


def _mean_pool(vecs: np.ndarray, sub2word: tuple[int, ...]) -> np.ndarray:
    mapping = np.asarray(sub2word)
    starts = np.flatnonzero(np.diff(mapping, prepend=mapping[0] - 1))
    sums = np.add.reduceat(vecs, starts, axis=0)
    counts = np.diff(np.append(starts, len(mapping)))
    return sums / counts[:, None]


def _normalize_rows(vecs: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vecs, axis=1, keepdims=True)
    return vecs / np.where(norms == 0.0, 1.0, norms)


def cosine_matrix(record: EmbeddingRecord, level: str = "subword") -> SimilarityMatrix:
    """Cosine similarities between source and target vectors.

    level="word" first mean-pools each word's subword vectors. An all-zero
    vector keeps norm 0 and gets similarity 0 against everything.
    """
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}, expected one of {LEVELS}")
    src, tgt = record.src_vecs, record.tgt_vecs
    if src.shape[1] != tgt.shape[1]:
        raise ValueError(
            f"vector dimension mismatch: source {src.shape[1]} vs target {tgt.shape[1]}"
        )
    if level == "word":
        src = _mean_pool(src, record.src_sub2word)
        tgt = _mean_pool(tgt, record.tgt_sub2word)
    values = _normalize_rows(src) @ _normalize_rows(tgt).T
    # Guard against float drift just past the cosine bounds.
    np.clip(values, -1.0, 1.0, out=values)
    return SimilarityMatrix(values=values, level=level)


def _mutual_argmax(values: np.ndarray) -> set[tuple[int, int]]:
    row_max = values.max(axis=1, keepdims=True)
    col_max = values.max(axis=0, keepdims=True)
    hits = np.argwhere((values == row_max) & (values == col_max))
    return {(int(i), int(j)) for i, j in hits}


def extract_argmax(matrix: SimilarityMatrix) -> set[tuple[int, int]]:
    """Links where a cell is simultaneously its row and column maximum.

    Ties are all kept, so a cell sharing the exact maximum with another
    still links.
    """
    return _mutual_argmax(matrix.values)


def extract_itermax(matrix: SimilarityMatrix, max_iters: int = 2, alpha: float = 0.9) -> set[tuple[int, int]]:
    """Iterated mutual argmax.

    Iteration 1 equals extract_argmax. Each later iteration excludes every
    row and column already consumed by a link, rescales the remaining
    residual submatrix by alpha and adds that submatrix's mutual argmaxes.
    The result is the union over iterations, so the plain mutual-argmax
    links are always a subset. The rule is frozen here: with max_iters=2
    every grid gets exactly one residual pass.
    """
    if max_iters < 1:
        raise ValueError(f"max_iters must be >= 1, got {max_iters}")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    values = matrix.values
    n, m = values.shape
    links = _mutual_argmax(values)
    for _ in range(max_iters - 1):
        used_rows = {i for i, _ in links}
        used_cols = {j for _, j in links}
        free_rows = [i for i in range(n) if i not in used_rows]
        free_cols = [j for j in range(m) if j not in used_cols]
        if not free_rows or not free_cols:
            break
        residual = values[np.ix_(free_rows, free_cols)] * alpha
        added = {
            (free_rows[a], free_cols[b]) for a, b in _mutual_argmax(residual)
        }
        if not added:
            break
        links |= added
    return links


def extract_match(matrix: SimilarityMatrix) -> set[tuple[int, int]]:
    """Maximum-weight partial matching between rows and columns.

    Negative similarities are clamped to zero before solving the assignment
    exactly, and zero-weight assignments are dropped afterwards, which makes
    the result the best partial matching (cells that would only hurt stay
    unmatched). Ties between equally heavy matchings break deterministically,
    biased toward cells earlier in row-major order via an infinitesimal
    ordering perturbation.
    """
    values = matrix.values
    clamped = np.clip(values, 0.0, None)
    n, m = clamped.shape
    scale = float(clamped.max())
    bias = np.arange(n * m, dtype=np.float64).reshape(n, m)
    biased = clamped - bias * ((scale if scale > 0.0 else 1.0) * 1e-12)
    rows, cols = linear_sum_assignment(biased, maximize=True)
    return {(int(i), int(j)) for i, j in zip(rows, cols) if clamped[i, j] > 0.0}


def extract_softmax_threshold(matrix: SimilarityMatrix, threshold: float = 0.001) -> set[tuple[int, int]]:
    """Links whose row-wise and column-wise softmax both exceed threshold."""
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    values = matrix.values

    def softmax(x: np.ndarray, axis: int) -> np.ndarray:
        shifted = x - x.max(axis=axis, keepdims=True)
        e = np.exp(shifted)
        return e / e.sum(axis=axis, keepdims=True)

    keep = (softmax(values, axis=1) > threshold) & (softmax(values, axis=0) > threshold)
    return {(int(i), int(j)) for i, j in np.argwhere(keep)}


def aggregate_to_words(
    sub_links: Iterable[tuple[int, int]],
    src_sub2word: Sequence[int],
    tgt_sub2word: Sequence[int],
) -> AlignmentSet:
    """Project subword links to word links: any linked subword pair links
    the word pair. Indices outside the maps are errors."""
    word_links = set()
    for a, b in sub_links:
        if not 0 <= a < len(src_sub2word):
            raise ValueError(
                f"source subword index {a} outside map of length {len(src_sub2word)}"
            )
        if not 0 <= b < len(tgt_sub2word):
            raise ValueError(
                f"target subword index {b} outside map of length {len(tgt_sub2word)}"
            )
        word_links.add((int(src_sub2word[a]), int(tgt_sub2word[b])))
    return AlignmentSet(frozenset(word_links))


def align_record(
    record: EmbeddingRecord,
    method: str = "itermax",
    level: str = "subword",
    *,
    max_iters: int = 2,
    alpha: float = 0.9,
    threshold: float = 0.001,
) -> AlignmentSet:
    """Full similarity-alignment path for one record: cosine matrix at the
    requested level, link extraction, and (for subword level) aggregation
    back to word links."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {METHODS}")
    matrix = cosine_matrix(record, level)
    if method == "argmax":
        links = extract_argmax(matrix)
    elif method == "itermax":
        links = extract_itermax(matrix, max_iters=max_iters, alpha=alpha)
    elif method == "match":
        links = extract_match(matrix)
    else:
        links = extract_softmax_threshold(matrix, threshold=threshold)
    if level == "subword":
        return aggregate_to_words(links, record.src_sub2word, record.tgt_sub2word)
    return AlignmentSet(frozenset(links))


_REQUIRED_KEYS = ("id", "layer", "src_sub2word", "tgt_sub2word", "src_vecs", "tgt_vecs")


def read_embedding_records(path: str | Path) -> Iterator[EmbeddingRecord]:
    """Parse an embeddings JSONL file, yielding records in file order.

    Errors carry the 1-based line number of the offending record.
    """
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"embeddings line {lineno}: invalid JSON ({exc})") from None
            if not isinstance(obj, dict):
                raise FormatError(f"embeddings line {lineno}: expected a JSON object")
            missing = [key for key in _REQUIRED_KEYS if key not in obj]
            if missing:
                raise FormatError(
                    f"embeddings line {lineno}: missing keys {', '.join(missing)}"
                )
            try:
                yield EmbeddingRecord(
                    id=int(obj["id"]),
                    layer=int(obj["layer"]),
                    src_sub2word=tuple(obj["src_sub2word"]),
                    tgt_sub2word=tuple(obj["tgt_sub2word"]),
                    src_vecs=np.asarray(obj["src_vecs"], dtype=np.float64),
                    tgt_vecs=np.asarray(obj["tgt_vecs"], dtype=np.float64),
                )
            except (TypeError, ValueError) as exc:
                raise FormatError(f"embeddings line {lineno}: {exc}") from None


def write_embedding_records(path: str | Path, records: Iterable[EmbeddingRecord]) -> None:
    """Write records as one JSON object per line, mirroring the reader."""
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            obj = {
                "id": record.id,
                "layer": record.layer,
                "src_sub2word": list(record.src_sub2word),
                "tgt_sub2word": list(record.tgt_sub2word),
                "src_vecs": record.src_vecs.tolist(),
                "tgt_vecs": record.tgt_vecs.tolist(),
            }
            handle.write(json.dumps(obj) + "\n")
