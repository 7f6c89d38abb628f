"""Task queue and on-disk store for manual gold alignment work.

The store keeps two tab-separated files in one directory: ``gold.tsv``
holds the finished alignments in the standard gold format, and
``status.tsv`` records, for every pair that has left the pending state,
its status, a monotonically increasing version counter and an optional
note. Both files are rewritten atomically (temp file + rename) on every
mutation, gold first, so a crash can never leave a half-written file
behind — at worst the status file is one step behind the gold file, and
reloading reconciles in favour of the gold file.
"""

from __future__ import annotations

import os
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .core import AlignmentSet, Corpus, FormatError, SentencePair, format_gold, parse_pharaoh

__all__ = [
    "STATUSES",
    "AnnotationTask",
    "AnnotationStore",
    "validate_guidelines",
]

STATUSES = ("pending", "done", "discarded")

_MANY_LINKS_THRESHOLD = 3


@dataclass
class AnnotationTask:
    """One sentence pair moving through the annotation queue."""

    pair: SentencePair
    links: AlignmentSet = field(default_factory=AlignmentSet)
    status: str = "pending"
    version: int = 0
    note: str = ""

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.version < 0:
            raise ValueError(f"version must be non-negative, got {self.version}")
        self.links.validate_for(self.pair)

    @property
    def id(self) -> int:
        return self.pair.id


def validate_guidelines(pair: SentencePair, links: AlignmentSet) -> list[str]:
    """Flag link patterns that usually mean a slip of the mouse.

    Warnings, not errors: a token carrying three or more links, a sentence
    left entirely unaligned, and the same surface-form pair linked twice.
    Function words with no counterpart are expected to stay unaligned, so
    individual unaligned tokens are never flagged.
    """
    links.validate_for(pair)
    warnings = []

    src_counts: dict[int, int] = {}
    tgt_counts: dict[int, int] = {}
    for i, j in links.links:
        src_counts[i] = src_counts.get(i, 0) + 1
        tgt_counts[j] = tgt_counts.get(j, 0) + 1
    for i in sorted(src_counts):
        if src_counts[i] >= _MANY_LINKS_THRESHOLD:
            warnings.append(
                f"source token {i} ({pair.src_tokens[i]!r}) participates in"
                f" {src_counts[i]} links"
            )
    for j in sorted(tgt_counts):
        if tgt_counts[j] >= _MANY_LINKS_THRESHOLD:
            warnings.append(
                f"target token {j} ({pair.tgt_tokens[j]!r}) participates in"
                f" {tgt_counts[j]} links"
            )

    if not len(links):
        warnings.append("sentence is fully unaligned")

    surface_counts: dict[tuple[str, str], int] = {}
    for i, j in links.links:
        key = (pair.src_tokens[i], pair.tgt_tokens[j])
        surface_counts[key] = surface_counts.get(key, 0) + 1
    for (src_tok, tgt_tok) in sorted(surface_counts):
        count = surface_counts[(src_tok, tgt_tok)]
        if count >= 2:
            warnings.append(
                f"token pair ({src_tok!r}, {tgt_tok!r}) is linked {count} times"
            )
    return warnings


def _sanitize_note(note: str) -> str:
    """Notes live in a tab-separated file, so flatten whitespace runs."""
    return " ".join(note.split())


class AnnotationStore:
    """Thread-safe annotation state over a corpus, persisted to a directory.

    Saves follow last-write-wins: a save based on a stale version still
    lands, but the caller is told the base was stale so the UI can warn.
    """

    def __init__(self, corpus: Corpus, directory: str | Path) -> None:
        if not len(corpus):
            raise ValueError("corpus must be non-empty")
        self._corpus = corpus
        self._directory = Path(directory)
        self._directory.mkdir(parents=True, exist_ok=True)
        self._gold_path = self._directory / "gold.tsv"
        self._status_path = self._directory / "status.tsv"
        self._lock = threading.Lock()
        self._tasks = {pair.id: AnnotationTask(pair=pair) for pair in corpus}
        if self._gold_path.exists() or self._status_path.exists():
            self._load()
        else:
            self._persist()

    # -- persistence ------------------------------------------------------

    def _atomic_write(self, path: Path, content: str) -> None:
        fd, tmp_name = tempfile.mkstemp(dir=self._directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(content)
            os.replace(tmp_name, path)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise

    def _persist(self) -> None:
        done = [
            (task.pair, task.links)
            for task in sorted(self._tasks.values(), key=lambda t: t.id)
            if task.status == "done"
        ]
        self._atomic_write(self._gold_path, format_gold(done))

        status_lines = []
        for task in sorted(self._tasks.values(), key=lambda t: t.id):
            if task.status == "pending":
                continue
            status_lines.append(
                f"{task.id}\t{task.status}\t{task.version}\t\t{_sanitize_note(task.note)}\n"
            )
        self._atomic_write(self._status_path, "".join(status_lines))

    def _load(self) -> None:
        if self._status_path.exists():
            content = self._status_path.read_text(encoding="utf-8")
            for k, line in enumerate(content.splitlines()):
                fields = line.split("\t")
                if len(fields) != 5:
                    raise FormatError(
                        f"status line {k + 1}: expected 5 tab-separated fields,"
                        f" got {len(fields)}"
                    )
                raw_id, status, raw_version, _reserved, note = fields
                try:
                    pair_id = int(raw_id)
                    version = int(raw_version)
                except ValueError as exc:
                    raise FormatError(f"status line {k + 1}: {exc}") from exc
                if status not in STATUSES:
                    raise FormatError(f"status line {k + 1}: unknown status {status!r}")
                task = self._tasks.get(pair_id)
                if task is None:
                    raise FormatError(
                        f"status line {k + 1}: pair id {pair_id} not in corpus"
                    )
                task.status = status
                task.version = version
                task.note = note

        if self._gold_path.exists():
            content = self._gold_path.read_text(encoding="utf-8")
            for k, line in enumerate(content.splitlines()):
                fields = line.split("\t")
                if len(fields) != 4:
                    raise FormatError(
                        f"gold line {k + 1}: expected 4 tab-separated fields,"
                        f" got {len(fields)}"
                    )
                raw_id, src_text, tgt_text, pharaoh = fields
                try:
                    pair_id = int(raw_id)
                except ValueError as exc:
                    raise FormatError(f"gold line {k + 1}: {exc}") from exc
                task = self._tasks.get(pair_id)
                if task is None:
                    raise FormatError(f"gold line {k + 1}: pair id {pair_id} not in corpus")
                if (
                    tuple(src_text.split(" ")) != task.pair.src_tokens
                    or tuple(tgt_text.split(" ")) != task.pair.tgt_tokens
                ):
                    raise FormatError(
                        f"gold line {k + 1}: tokens do not match corpus pair {pair_id}"
                    )
                links = parse_pharaoh(pharaoh)
                links.validate_for(task.pair)
                task.links = links
                # The gold file is written first, so it wins any
                # disagreement with the status file.
                if task.status != "done":
                    task.status = "done"
                    task.version = max(task.version, 1)

    # -- accessors --------------------------------------------------------

    @property
    def corpus(self) -> Corpus:
        return self._corpus

    def get(self, pair_id: int) -> AnnotationTask:
        with self._lock:
            task = self._tasks.get(pair_id)
            if task is None:
                raise KeyError(f"no pair with id {pair_id}")
            return self._snapshot(task)

    def next_pending(self) -> AnnotationTask | None:
        """The lowest-id pending task, or None once the queue is empty."""
        with self._lock:
            pending = [task for task in self._tasks.values() if task.status == "pending"]
            if not pending:
                return None
            return self._snapshot(min(pending, key=lambda t: t.id))

    def progress(self) -> dict[str, int]:
        with self._lock:
            counts = {status: 0 for status in STATUSES}
            for task in self._tasks.values():
                counts[task.status] += 1
            counts["total"] = len(self._tasks)
            return counts

    @staticmethod
    def _snapshot(task: AnnotationTask) -> AnnotationTask:
        return AnnotationTask(
            pair=task.pair,
            links=task.links,
            status=task.status,
            version=task.version,
            note=task.note,
        )

    # -- mutations --------------------------------------------------------

    def set_links(
        self, pair_id: int, links: AlignmentSet, *, base_version: int | None = None
    ) -> tuple[AnnotationTask, int]:
        """Record links for a pair and mark it done.

        Returns the saved snapshot and the version the save replaced; the
        caller detects a lost-update conflict by comparing that previous
        version with the base_version it sent. The write always lands
        (last write wins).
        """
        with self._lock:
            task = self._tasks.get(pair_id)
            if task is None:
                raise KeyError(f"no pair with id {pair_id}")
            links.validate_for(task.pair)
            previous_version = task.version
            task.links = links
            task.status = "done"
            task.version = previous_version + 1
            task.note = ""
            self._persist()
            return self._snapshot(task), previous_version

    def discard(self, pair_id: int, reason: str) -> AnnotationTask:
        """Drop a pair from annotation; a non-empty reason is required."""
        if not reason.strip():
            raise ValueError("a discard requires a non-empty reason")
        with self._lock:
            task = self._tasks.get(pair_id)
            if task is None:
                raise KeyError(f"no pair with id {pair_id}")
            task.links = AlignmentSet()
            task.status = "discarded"
            task.version = task.version + 1
            task.note = reason
            self._persist()
            return self._snapshot(task)

    def reopen(self, pair_id: int) -> AnnotationTask:
        """Put a pair back in the pending queue, keeping its links visible."""
        with self._lock:
            task = self._tasks.get(pair_id)
            if task is None:
                raise KeyError(f"no pair with id {pair_id}")
            task.status = "pending"
            task.version = task.version + 1
            task.note = ""
            self._persist()
            return self._snapshot(task)

    def export_tsv(self) -> str:
        """The finished gold standard: done pairs only, sorted by id."""
        with self._lock:
            done = [
                (task.pair, task.links)
                for task in sorted(self._tasks.values(), key=lambda t: t.id)
                if task.status == "done"
            ]
            return format_gold(done)
