"""Domain types, tokenization and the plain-text formats shared by every aligner.

Conventions used throughout the package: token positions are 0-based,
alignment links are (source_index, target_index) pairs, and every link is a
Sure link (the Possible set equals the Sure set).
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

__all__ = [
    "FormatError",
    "SentencePair",
    "AlignmentSet",
    "Corpus",
    "tokenize",
    "parse_pharaoh",
    "serialize_pharaoh",
    "load_bitext",
    "read_gold",
    "write_gold",
    "format_gold",
]


class FormatError(ValueError):
    """An input file or serialized value violates its documented format."""


_APOSTROPHES = ("'", "’")
_PHARAOH_ITEM = re.compile(r"(\d+)-(\d+)\Z")


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str) -> list[str]:
    """Split a sentence into tokens.

    Chunks come from whitespace splitting; leading and trailing punctuation
    marks are then detached as single-character tokens. A trailing apostrophe
    stays attached when it follows a letter, so elided articles such as "d'"
    survive as single tokens. Deterministic; never yields empty tokens.
    """
    tokens: list[str] = []
    for chunk in text.split():
        start, end = 0, len(chunk)
        while start < end and _is_punct(chunk[start]):
            tokens.append(chunk[start])
            start += 1
        detached: list[str] = []
        while end > start and _is_punct(chunk[end - 1]):
            ch = chunk[end - 1]
            if ch in _APOSTROPHES and end - start > 1 and chunk[end - 2].isalpha():
                break
            detached.append(ch)
            end -= 1
        if start < end:
            tokens.append(chunk[start:end])
        tokens.extend(reversed(detached))
    return tokens


@dataclass(frozen=True)
class SentencePair:
    """One tokenized sentence pair with a stable id; the unit of alignment."""

    id: int
    src_tokens: tuple[str, ...]
    tgt_tokens: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "src_tokens", tuple(self.src_tokens))
        object.__setattr__(self, "tgt_tokens", tuple(self.tgt_tokens))
        if self.id < 0:
            raise ValueError(f"pair id must be non-negative, got {self.id}")
        for side, toks in (("source", self.src_tokens), ("target", self.tgt_tokens)):
            if not toks:
                raise ValueError(f"{side} side of pair {self.id} has no tokens")
            for tok in toks:
                if not tok:
                    raise ValueError(f"{side} side of pair {self.id} contains an empty token")
                if any(ch.isspace() for ch in tok):
                    raise ValueError(
                        f"{side} token {tok!r} of pair {self.id} contains whitespace"
                    )


@dataclass(frozen=True)
class AlignmentSet:
    """A set of links between source and target token positions.

    Every link in this package is a Sure link; code that needs the
    Sure/Possible distinction treats the Possible set as equal to this set.
    """

    links: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        normalized = frozenset((int(i), int(j)) for i, j in self.links)
        object.__setattr__(self, "links", normalized)
        for i, j in normalized:
            if i < 0 or j < 0:
                raise ValueError(f"link {i}-{j} has a negative index")

    @classmethod
    def from_links(cls, links: Iterable[tuple[int, int]]) -> "AlignmentSet":
        return cls(frozenset(links))

    def __len__(self) -> int:
        return len(self.links)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.links))

    def __contains__(self, link: object) -> bool:
        return link in self.links

    def transpose(self) -> "AlignmentSet":
        """Swap link direction, mapping every (i, j) to (j, i)."""
        return AlignmentSet(frozenset((j, i) for i, j in self.links))

    def validate_for(self, pair: SentencePair) -> None:
        """Raise ValueError for any link outside the pair's token grid."""
        n, m = len(pair.src_tokens), len(pair.tgt_tokens)
        for i, j in sorted(self.links):
            if i >= n:
                raise ValueError(
                    f"source index {i} out of range for link {i}-{j} ({n} source tokens)"
                )
            if j >= m:
                raise ValueError(
                    f"target index {j} out of range for link {i}-{j} ({m} target tokens)"
                )


def parse_pharaoh(line: str) -> AlignmentSet:
    """Parse one line of whitespace-separated "i-j" items.

    Duplicate items collapse (set semantics). A malformed item raises
    FormatError naming the item and its 1-based column.
    """
    links = set()
    for match in re.finditer(r"\S+", line):
        item = match.group()
        parsed = _PHARAOH_ITEM.match(item)
        if parsed is None:
            raise FormatError(
                f"malformed alignment item {item!r} at column {match.start() + 1}"
            )
        links.add((int(parsed.group(1)), int(parsed.group(2))))
    return AlignmentSet(frozenset(links))


def serialize_pharaoh(alignment: AlignmentSet) -> str:
    """Render links sorted by (i, j), separated by single spaces."""
    return " ".join(f"{i}-{j}" for i, j in sorted(alignment.links))


@dataclass(frozen=True)
class Corpus:
    """An ordered collection of sentence pairs with unique ids."""

    pairs: tuple[SentencePair, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(self.pairs))
        seen: set[int] = set()
        for pair in self.pairs:
            if pair.id in seen:
                raise ValueError(f"duplicate pair id {pair.id}")
            seen.add(pair.id)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[SentencePair]:
        return iter(self.pairs)

    def __getitem__(self, index: int) -> SentencePair:
        return self.pairs[index]


def _read_lines(path: str | Path) -> list[str]:
    return Path(path).read_text(encoding="utf-8").splitlines()


def load_bitext(src_path: str | Path, tgt_path: str | Path) -> Corpus:
    """Load two line-parallel sentence files into a tokenized corpus.

    Pair k is built from line k of each file and gets id k. Unequal line
    counts and empty lines are format errors (an aligner cannot repair them).
    """
    src_lines = _read_lines(src_path)
    tgt_lines = _read_lines(tgt_path)
    if len(src_lines) != len(tgt_lines):
        raise FormatError(f"line count mismatch {len(src_lines)}≠{len(tgt_lines)}")
    pairs = []
    for k, (src, tgt) in enumerate(zip(src_lines, tgt_lines)):
        if not src.strip():
            raise FormatError(f"empty source line {k + 1}")
        if not tgt.strip():
            raise FormatError(f"empty target line {k + 1}")
        pairs.append(SentencePair(k, tuple(tokenize(src)), tuple(tokenize(tgt))))
    return Corpus(tuple(pairs))


def format_gold(records: Iterable[tuple[SentencePair, AlignmentSet]]) -> str:
    """Serialize (pair, links) records to the tab-separated gold format.

    Columns: id, source sentence, target sentence, Pharaoh links. Sentences
    are the tokens joined by single spaces (tokens never contain whitespace,
    so the column re-splits losslessly); links are serialized sorted, which
    makes the output bit-exact for a given input.
    """
    lines = []
    for pair, links in records:
        links.validate_for(pair)
        lines.append(
            "\t".join(
                [
                    str(pair.id),
                    " ".join(pair.src_tokens),
                    " ".join(pair.tgt_tokens),
                    serialize_pharaoh(links),
                ]
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def write_gold(path: str | Path, records: Iterable[tuple[SentencePair, AlignmentSet]]) -> None:
    Path(path).write_text(format_gold(records), encoding="utf-8")


def read_gold(path: str | Path) -> list[tuple[SentencePair, AlignmentSet]]:
    """Read a gold TSV file back into (pair, links) records, validating ids,
    field counts and link bounds with line-numbered errors."""
    records: list[tuple[SentencePair, AlignmentSet]] = []
    seen_ids: set[int] = set()
    for lineno, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise FormatError(
                f"gold line {lineno}: expected 4 tab-separated fields, got {len(fields)}"
            )
        try:
            pair_id = int(fields[0])
        except ValueError:
            raise FormatError(f"gold line {lineno}: bad pair id {fields[0]!r}") from None
        if pair_id in seen_ids:
            raise FormatError(f"gold line {lineno}: duplicate pair id {pair_id}")
        seen_ids.add(pair_id)
        try:
            pair = SentencePair(pair_id, tuple(fields[1].split()), tuple(fields[2].split()))
            links = parse_pharaoh(fields[3])
            links.validate_for(pair)
        except ValueError as exc:
            raise FormatError(f"gold line {lineno}: {exc}") from None
        records.append((pair, links))
    return records
