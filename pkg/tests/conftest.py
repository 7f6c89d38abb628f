"""Shared synthetic-data builders for the test suite.

Both builders produce data with a known ground truth so recovery can be
scored exactly: a bijective-lexicon bitext for translation-model tests
and a sentence-bead document pair for the sentence-aligner tests.
"""

from __future__ import annotations

import random

from bitalign import AlignmentSet, Corpus, SentencePair
from bitalign.sentences import Dictionary


def make_bijective_corpus(
    rng: random.Random,
    n_pairs: int,
    vocab: int = 50,
    min_len: int = 3,
    max_len: int = 8,
) -> tuple[Corpus, dict[int, AlignmentSet]]:
    """A bitext generated from a one-to-one lexicon s{k} <-> t{k}.

    Each pair samples distinct lexicon entries and shuffles the target
    side, so the true word alignment is a known permutation and every
    sentence is free of repeated tokens.
    """
    pairs = []
    golds: dict[int, AlignmentSet] = {}
    for pid in range(n_pairs):
        length = rng.randint(min_len, min(max_len, vocab))
        idxs = rng.sample(range(vocab), length)
        src = tuple(f"s{k}" for k in idxs)
        order = list(range(length))
        rng.shuffle(order)  # order[j] = source position translated at target slot j
        tgt = tuple(f"t{idxs[i]}" for i in order)
        pairs.append(SentencePair(pid, src, tgt))
        golds[pid] = AlignmentSet.from_links({(order[j], j) for j in range(length)})
    return Corpus(tuple(pairs)), golds


def make_bead_documents(
    rng: random.Random,
    n_beads: int,
    lexicon_size: int = 200,
) -> tuple[list[str], list[str], Dictionary, list[tuple[tuple[int, int], tuple[int, int]]]]:
    """Sentence lists with a known bead structure plus a covering dictionary.

    Bead mix: about 80% 1-1, 10% 1-2, 10% 2-1. Source word w{k} translates
    to v{k} (equal lengths keep character counts consistent), so the
    dictionary term rewards exactly the true pairing. Returns
    (src_sentences, tgt_sentences, dictionary, gold spans) where gold spans
    are half-open (src_span, tgt_span) pairs in order.
    """
    dictionary = Dictionary(
        {f"w{k}": frozenset({f"v{k}"}) for k in range(lexicon_size)}
    )

    def unit() -> list[int]:
        return [rng.randrange(lexicon_size) for _ in range(rng.randint(4, 8))]

    def src_text(units: list[list[int]]) -> str:
        return " ".join(f"w{k}" for u in units for k in u) + "."

    def tgt_text(units: list[list[int]]) -> str:
        return " ".join(f"v{k}" for u in units for k in u) + "."

    src_sentences: list[str] = []
    tgt_sentences: list[str] = []
    gold: list[tuple[tuple[int, int], tuple[int, int]]] = []
    for _ in range(n_beads):
        kind = rng.random()
        a, b = len(src_sentences), len(tgt_sentences)
        if kind < 0.8:
            u = unit()
            src_sentences.append(src_text([u]))
            tgt_sentences.append(tgt_text([u]))
            gold.append(((a, a + 1), (b, b + 1)))
        elif kind < 0.9:
            u1, u2 = unit(), unit()
            src_sentences.append(src_text([u1, u2]))
            tgt_sentences.append(tgt_text([u1]))
            tgt_sentences.append(tgt_text([u2]))
            gold.append(((a, a + 1), (b, b + 2)))
        else:
            u1, u2 = unit(), unit()
            src_sentences.append(src_text([u1]))
            src_sentences.append(src_text([u2]))
            tgt_sentences.append(tgt_text([u1, u2]))
            gold.append(((a, a + 2), (b, b + 1)))
    return src_sentences, tgt_sentences, dictionary, gold
