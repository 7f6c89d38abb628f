"""Sentence segmentation, hybrid sentence alignment and bitext cleanup.

The sentence aligner is a monotone dynamic program over small "beads"
(1-1, 1-0, 0-1, 1-2, 2-1, 2-2) scored by a character-length model plus
dictionary coverage, in the spirit of length-based aligners extended with
lexical evidence.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .core import FormatError, tokenize

__all__ = [
    "Document",
    "Dictionary",
    "AlignedPairCandidate",
    "segment_sentences",
    "align_sentences",
    "filter_pairs",
    "filter_pairs_report",
    "pair_documents",
    "read_documents",
    "load_abbreviations",
]


@dataclass(frozen=True)
class Document:
    """A monolingual document: language code, key shared across languages,
    and raw text blocks in source order."""

    doc_key: str
    lang: str
    paragraphs: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "paragraphs", tuple(self.paragraphs))
        if not self.doc_key:
            raise ValueError("doc_key must be non-empty")
        if not self.lang:
            raise ValueError("lang must be non-empty")


@dataclass(frozen=True)
class Dictionary:
    """Bilingual lemma dictionary: lowercase source lemma -> target lemmas.

    Lookup is lowercase exact match; no lemmatization happens here.
    """

    entries: Mapping[str, frozenset[str]]

    def __post_init__(self) -> None:
        normalized: dict[str, frozenset[str]] = {}
        for src, tgts in self.entries.items():
            if not src or src != src.lower():
                raise ValueError(f"dictionary source lemma {src!r} must be lowercase and non-empty")
            values = frozenset(tgts)
            for tgt in values:
                if not tgt or tgt != tgt.lower():
                    raise ValueError(
                        f"dictionary target lemma {tgt!r} must be lowercase and non-empty"
                    )
            normalized[src] = values
        object.__setattr__(self, "entries", normalized)

    def translations(self, token: str) -> frozenset[str]:
        return self.entries.get(token, frozenset())

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def load(cls, path: str | Path) -> "Dictionary":
        """Read a two-column TSV (source, target), lowercasing both sides
        and merging repeated source lemmas."""
        entries: dict[str, set[str]] = {}
        for lineno, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise FormatError(
                    f"dictionary line {lineno}: expected 2 tab-separated fields, got {len(fields)}"
                )
            src, tgt = fields[0].strip().lower(), fields[1].strip().lower()
            if not src or not tgt:
                raise FormatError(f"dictionary line {lineno}: empty lemma")
            entries.setdefault(src, set()).add(tgt)
        return cls({src: frozenset(tgts) for src, tgts in entries.items()})


def load_abbreviations(path: str | Path) -> frozenset[str]:
    """One abbreviation per line, stored without the trailing period."""
    entries = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        entries.add(entry.rstrip("."))
    return frozenset(entries)


_TERMINALS = ".!?"


def _protected(text: str, period_pos: int) -> tuple[bool, str]:
    w = period_pos - 1
    while w >= 0 and not text[w].isspace():
        w -= 1
    token = text[w + 1 : period_pos]
    return (bool(token), token)


def segment_sentences(doc: Document, abbreviations: Iterable[str] = ()) -> list[str]:
    """Rule-based sentence segmentation over the document's paragraphs.

    A sentence closes after ".", "!" or "?" followed by whitespace and an
    uppercase-letter or digit start. For periods the split is suppressed
    when the preceding token (without the period) is a known abbreviation,
    a single letter (initials) or digit-only (dates, page numbers);
    abbreviations end in periods, so the protections are period-specific.
    Paragraph boundaries always close a sentence.
    """
    abbrevs = set()
    for entry in abbreviations:
        if entry.endswith("."):
            raise ValueError(f"abbreviation {entry!r} must be listed without its period")
        abbrevs.add(entry.lower())

    sentences: list[str] = []
    for paragraph in doc.paragraphs:
        sentences.extend(_segment_text(paragraph, abbrevs))
    return sentences


def _segment_text(text: str, abbrevs: set[str]) -> list[str]:
    out: list[str] = []
    start = 0
    k = 0
    while k < len(text):
        ch = text[k]
        if ch not in _TERMINALS:
            k += 1
            continue
        nxt = k + 1
        if nxt >= len(text) or not text[nxt].isspace():
            k += 1
            continue
        follow = nxt
        while follow < len(text) and text[follow].isspace():
            follow += 1
        if follow >= len(text):
            break
        first = text[follow]
        if not (first.isupper() or first.isdigit()):
            k += 1
            continue
        if ch == ".":
            has_token, token = _protected(text, k)
            if has_token and (
                token.lower() in abbrevs
                or (len(token) == 1 and token.isalpha())
                or token.isdigit()
            ):
                k += 1
                continue
        sentence = text[start : k + 1].strip()
        if sentence:
            out.append(sentence)
        start = follow
        k = follow
    tail = text[start:].strip()
    if tail:
        out.append(tail)
    return out


@dataclass(frozen=True)
class AlignedPairCandidate:
    """One bead from the sentence-alignment DP: contiguous half-open
    sentence spans on each side plus the bead's score contribution."""

    src_span: tuple[int, int]
    tgt_span: tuple[int, int]
    score: float

    def __post_init__(self) -> None:
        for name, (lo, hi) in (("src_span", self.src_span), ("tgt_span", self.tgt_span)):
            if lo < 0 or hi < lo:
                raise ValueError(f"{name} {lo, hi} is not a valid span")
            if hi - lo > 2:
                raise ValueError(f"{name} spans {hi - lo} sentences; beads carry at most 2")
        if self.src_size == 0 and self.tgt_size == 0:
            raise ValueError("a bead cannot be empty on both sides")

    @property
    def src_size(self) -> int:
        return self.src_span[1] - self.src_span[0]

    @property
    def tgt_size(self) -> int:
        return self.tgt_span[1] - self.tgt_span[0]

    @property
    def bead_type(self) -> str:
        return f"{self.src_size}-{self.tgt_size}"


# Bead shapes in tie-break priority order: 1-1 wins equal scores.
_BEADS = ((1, 1), (1, 2), (2, 1), (2, 2), (1, 0), (0, 1))


def align_sentences(
    src_sentences: Sequence[str],
    tgt_sentences: Sequence[str],
    dictionary: Dictionary | None = None,
    *,
    w_len: float = 1.0,
    w_dict: float = 2.0,
    variance: float = 6.8,
    skip_penalty: float = -0.5,
) -> list[AlignedPairCandidate]:
    """Monotone DP sentence alignment over 1-1/1-0/0-1/1-2/2-1/2-2 beads.

    Bead score = w_len * length_score + w_dict * dict_score. length_score
    is a normal-model penalty on the character-length difference (expected
    length ratio 1.0, configurable variance); dict_score is the fraction of
    source tokens whose dictionary translations occur in the target span
    (0 when the dictionary is empty). 1-0/0-1 beads cost the flat
    skip_penalty. The returned beads partition both inputs in order; exact
    ties prefer 1-1 beads.
    """
    if not src_sentences or not tgt_sentences:
        raise ValueError("cannot align empty sentence lists")
    dictionary = dictionary or Dictionary({})
    use_dict = len(dictionary) > 0 and w_dict != 0.0

    src_chars = [len(s) for s in src_sentences]
    tgt_chars = [len(s) for s in tgt_sentences]
    src_tokens = [[t.lower() for t in tokenize(s)] for s in src_sentences]
    tgt_token_sets = [frozenset(t.lower() for t in tokenize(s)) for s in tgt_sentences]

    def bead_score(i: int, j: int, di: int, dj: int) -> float:
        if di == 0 or dj == 0:
            return skip_penalty
        a = sum(src_chars[i : i + di]) + (di - 1)
        b = sum(tgt_chars[j : j + dj]) + (dj - 1)
        delta = (b - a) / math.sqrt(variance * max(a, 1.0))
        score = w_len * (-0.5 * delta * delta)
        if use_dict:
            tokens = [t for k in range(i, i + di) for t in src_tokens[k]]
            if tokens:
                targets: frozenset[str] = frozenset().union(*tgt_token_sets[j : j + dj])
                hits = sum(1 for t in tokens if dictionary.translations(t) & targets)
                score += w_dict * (hits / len(tokens))
        return score

    S, T = len(src_sentences), len(tgt_sentences)
    NEG = float("-inf")
    best = [[NEG] * (T + 1) for _ in range(S + 1)]
    back: list[list[tuple[int, int] | None]] = [[None] * (T + 1) for _ in range(S + 1)]
    best[0][0] = 0.0
    for a in range(S + 1):
        for b in range(T + 1):
            if a == 0 and b == 0:
                continue
            top = NEG
            choice: tuple[int, int] | None = None
            for di, dj in _BEADS:
                pi, pj = a - di, b - dj
                if pi < 0 or pj < 0:
                    continue
                prev = best[pi][pj]
                if prev == NEG:
                    continue
                score = prev + bead_score(pi, pj, di, dj)
                if score > top:
                    top, choice = score, (di, dj)
            best[a][b], back[a][b] = top, choice

    beads: list[AlignedPairCandidate] = []
    a, b = S, T
    while a or b:
        step = back[a][b]
        assert step is not None, "DP must reach every cell via skip beads"
        di, dj = step
        beads.append(
            AlignedPairCandidate(
                src_span=(a - di, a),
                tgt_span=(b - dj, b),
                score=best[a][b] - best[a - di][b - dj],
            )
        )
        a, b = a - di, b - dj
    beads.reverse()
    return beads


def filter_pairs_report(
    pairs: Sequence[tuple[str, str]],
    *,
    max_ratio: float = 3.0,
    min_tokens: int = 2,
) -> tuple[list[tuple[str, str]], list[tuple[int, str, str, str]]]:
    """Apply the cleanup rules in a fixed order and report every drop.

    Rules (first match wins): "duplicate" (exact pair seen before, first
    occurrence kept), "identical" (source equals target verbatim),
    "length-ratio" (character-length ratio outside [1/max_ratio, max_ratio]),
    "min-tokens" (fewer than min_tokens whitespace tokens on either side).
    Returns (kept, dropped) with dropped rows (index, src, tgt, rule).
    The pass is idempotent: filtering kept pairs again drops nothing.
    """
    seen: set[tuple[str, str]] = set()
    kept: list[tuple[str, str]] = []
    dropped: list[tuple[int, str, str, str]] = []
    for idx, (src, tgt) in enumerate(pairs):
        rule = None
        ls, lt = len(src), len(tgt)
        if (src, tgt) in seen:
            rule = "duplicate"
        elif src == tgt:
            rule = "identical"
        elif ls == 0 or lt == 0 or ls > max_ratio * lt or lt > max_ratio * ls:
            rule = "length-ratio"
        elif len(src.split()) < min_tokens or len(tgt.split()) < min_tokens:
            rule = "min-tokens"
        if rule is None:
            seen.add((src, tgt))
            kept.append((src, tgt))
        else:
            dropped.append((idx, src, tgt, rule))
    return kept, dropped


def filter_pairs(
    pairs: Sequence[tuple[str, str]],
    *,
    max_ratio: float = 3.0,
    min_tokens: int = 2,
) -> list[tuple[str, str]]:
    """filter_pairs_report without the drop report; order-preserving."""
    kept, _ = filter_pairs_report(pairs, max_ratio=max_ratio, min_tokens=min_tokens)
    return kept


def pair_documents(
    docs: Sequence[Document], src_lang: str, tgt_lang: str
) -> tuple[list[tuple[Document, Document]], list[Document]]:
    """Pair documents sharing doc_key across the two requested languages.

    Returns (pairs, unmatched): pairs follow the input order of the source-
    language documents; unmatched lists requested-language documents without
    a counterpart. Documents in other languages are not candidates for this
    pairing and are left out entirely. Two documents with the same
    (doc_key, lang) are an error.
    """
    if src_lang == tgt_lang:
        raise ValueError("source and target language must differ")
    by_key: dict[tuple[str, str], Document] = {}
    for doc in docs:
        if doc.lang not in (src_lang, tgt_lang):
            continue
        key = (doc.doc_key, doc.lang)
        if key in by_key:
            raise ValueError(
                f"duplicate document for doc_key={doc.doc_key!r} lang={doc.lang!r}"
            )
        by_key[key] = doc
    pairs: list[tuple[Document, Document]] = []
    unmatched: list[Document] = []
    for doc in docs:
        if doc.lang == src_lang:
            partner = by_key.get((doc.doc_key, tgt_lang))
            if partner is None:
                unmatched.append(doc)
            else:
                pairs.append((doc, partner))
        elif doc.lang == tgt_lang and (doc.doc_key, src_lang) not in by_key:
            unmatched.append(doc)
    return pairs, unmatched


def read_documents(path: str | Path) -> list[Document]:
    """Read documents from JSONL rows {"doc_key", "lang", "text"}; blank-line
    separated blocks of "text" become the document's paragraphs."""
    docs: list[Document] = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"documents line {lineno}: invalid JSON ({exc})") from None
        if not isinstance(obj, dict):
            raise FormatError(f"documents line {lineno}: expected a JSON object")
        missing = [key for key in ("doc_key", "lang", "text") if key not in obj]
        if missing:
            raise FormatError(f"documents line {lineno}: missing keys {', '.join(missing)}")
        doc_key, lang, text = obj["doc_key"], obj["lang"], obj["text"]
        if not isinstance(doc_key, str) or not isinstance(lang, str) or not isinstance(text, str):
            raise FormatError(f"documents line {lineno}: doc_key, lang and text must be strings")
        paragraphs = tuple(block for block in text.split("\n\n") if block.strip())
        try:
            docs.append(Document(doc_key=doc_key, lang=lang, paragraphs=paragraphs))
        except ValueError as exc:
            raise FormatError(f"documents line {lineno}: {exc}") from None
    return docs
