"""Hidden-state extraction from a multilingual encoder.

Takes line-parallel, pre-tokenized sentence files (words separated by single
spaces; tokenization happened upstream and is authoritative) and produces one
JSON record per pair: a subword-to-word index map and one vector per subword
for each side, taken from a chosen encoder layer.

Each word is subword-tokenized on its own, so the subword-to-word map is
exact by construction; tokenizing whole sentences can merge material across
word boundaries and silently corrupt downstream word-level aggregation.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, TextIO

import torch
from transformers import AutoModel, AutoTokenizer

logger = logging.getLogger("embex")

# Friendly names for the two encoders used most; anything else is passed to
# transformers untouched (a hub identifier or a local directory).
MODEL_ALIASES = {
    "multilingual-bert": "bert-base-multilingual-cased",
    "xlm-roberta": "xlm-roberta-base",
}


def resolve_model(name: str) -> str:
    return MODEL_ALIASES.get(name, name)


@dataclass(frozen=True)
class ExtractorConfig:
    """Extraction settings.

    layer counts from 0 (the embedding output) up to the encoder depth;
    max_subwords bounds one sentence's subword count before special tokens,
    and longer sentences are skipped (never truncated) so that record ids
    always mean "input line number".
    """

    model: str = "multilingual-bert"
    layer: int = 8
    batch_size: int = 16
    device: str = "cpu"
    max_subwords: int = 384

    def __post_init__(self) -> None:
        if self.layer < 0:
            raise ValueError(f"layer must be >= 0, got {self.layer}")
        if self.batch_size < 1:
            raise ValueError(f"batch size must be >= 1, got {self.batch_size}")
        if self.max_subwords < 1:
            raise ValueError(f"max subwords must be >= 1, got {self.max_subwords}")


@dataclass
class PairBuffer:
    """One sentence pair staged for encoding."""

    id: int
    src_ids: list[int]
    tgt_ids: list[int]
    src_sub2word: list[int]
    tgt_sub2word: list[int]
    record: dict = field(default_factory=dict)


class Extractor:
    """Loads the encoder once and turns token files into embedding records."""

    def __init__(self, config: ExtractorConfig):
        self.config = config
        name = resolve_model(config.model)
        self.tokenizer = AutoTokenizer.from_pretrained(name)
        self.model = AutoModel.from_pretrained(name)
        self.model.eval()
        self.model.to(config.device)
        depth = self.model.config.num_hidden_layers
        if config.layer > depth:
            raise ValueError(
                f"layer {config.layer} out of range: encoder has layers 0..{depth}"
            )
        unk = self.tokenizer.unk_token_id
        if unk is None:
            raise ValueError(f"tokenizer for {name!r} has no unknown-token id")
        self._unk_id = unk
        pad = self.tokenizer.pad_token_id
        self._pad_id = pad if pad is not None else 0

    def encode_words(self, words: list[str]) -> tuple[list[int], list[int]]:
        """Subword ids plus the word index each subword belongs to.

        Every word contributes at least one subword: words the tokenizer
        normalizes away entirely fall back to the unknown token, keeping the
        map surjective onto the word indices.
        """
        ids: list[int] = []
        sub2word: list[int] = []
        for index, word in enumerate(words):
            piece_ids = self.tokenizer.encode(word, add_special_tokens=False)
            if not piece_ids:
                piece_ids = [self._unk_id]
            ids.extend(piece_ids)
            sub2word.extend([index] * len(piece_ids))
        return ids, sub2word

    def _sequence_delimiters(self) -> tuple[list[int], list[int]]:
        """Special-token ids wrapped around one sequence, encoder-family
        agnostic: BERT-likes use [CLS]...[SEP], RoBERTa-likes <s>...</s>
        (exposed through the same cls/sep attributes)."""
        tok = self.tokenizer
        if tok.cls_token_id is not None and tok.sep_token_id is not None:
            return [tok.cls_token_id], [tok.sep_token_id]
        if tok.bos_token_id is not None and tok.eos_token_id is not None:
            return [tok.bos_token_id], [tok.eos_token_id]
        return [], []

    def _encode_batch(self, id_lists: list[list[int]]) -> list[torch.Tensor]:
        """Run the encoder over padded sequences; return per-sentence vectors
        for the configured layer. Delimiter tokens are added around each
        sequence and sliced back off, so output rows correspond one-to-one
        with the input subwords."""
        prefix, suffix = self._sequence_delimiters()
        built = [prefix + ids + suffix for ids in id_lists]
        width = max(len(seq) for seq in built)
        input_ids = torch.full((len(built), width), self._pad_id, dtype=torch.long)
        attention = torch.zeros((len(built), width), dtype=torch.long)
        for row, seq in enumerate(built):
            input_ids[row, : len(seq)] = torch.tensor(seq, dtype=torch.long)
            attention[row, : len(seq)] = 1
        with torch.no_grad():
            output = self.model(
                input_ids=input_ids.to(self.config.device),
                attention_mask=attention.to(self.config.device),
                output_hidden_states=True,
            )
        hidden = output.hidden_states[self.config.layer]
        return [
            hidden[row, len(prefix) : len(prefix) + len(ids)].cpu()
            for row, ids in enumerate(id_lists)
        ]

    def extract_pairs(
        self, pairs: Iterable[tuple[int, list[str], list[str]]]
    ) -> Iterator[dict]:
        """Yield one record dict per pair, in input order.

        Pairs whose source or target side exceeds max_subwords are skipped
        with a logged id; everything else streams through in batches.
        """
        buffer: list[PairBuffer] = []
        for pair_id, src_words, tgt_words in pairs:
            if not src_words or not tgt_words:
                raise ValueError(f"pair {pair_id} has an empty side")
            src_ids, src_map = self.encode_words(src_words)
            tgt_ids, tgt_map = self.encode_words(tgt_words)
            limit = self.config.max_subwords
            if len(src_ids) > limit or len(tgt_ids) > limit:
                side = "source" if len(src_ids) > limit else "target"
                count = max(len(src_ids), len(tgt_ids))
                logger.warning(
                    "skipping pair %d: %s side has %d subwords (max %d)",
                    pair_id, side, count, limit,
                )
                continue
            buffer.append(PairBuffer(pair_id, src_ids, tgt_ids, src_map, tgt_map))
            if len(buffer) == self.config.batch_size:
                yield from self._flush(buffer)
                buffer = []
        if buffer:
            yield from self._flush(buffer)

    def _flush(self, buffer: list[PairBuffer]) -> Iterator[dict]:
        src_vecs = self._encode_batch([item.src_ids for item in buffer])
        tgt_vecs = self._encode_batch([item.tgt_ids for item in buffer])
        for item, src, tgt in zip(buffer, src_vecs, tgt_vecs):
            yield {
                "id": item.id,
                "layer": self.config.layer,
                "src_sub2word": item.src_sub2word,
                "tgt_sub2word": item.tgt_sub2word,
                "src_vecs": _round_matrix(src),
                "tgt_vecs": _round_matrix(tgt),
            }

    def extract_files(
        self, src_path: str | Path, tgt_path: str | Path
    ) -> Iterator[dict]:
        """Stream records for two line-parallel token files."""
        yield from self.extract_pairs(read_token_files(src_path, tgt_path))


def _round_matrix(tensor: torch.Tensor) -> list[list[float]]:
    # 6 significant digits: plenty for cosine similarity, and it keeps the
    # JSON output compact and platform-stable.
    return [[float(f"{value:.6g}") for value in row] for row in tensor.tolist()]


def read_token_files(
    src_path: str | Path, tgt_path: str | Path
) -> Iterator[tuple[int, list[str], list[str]]]:
    """Yield (line index, source words, target words); abort on mismatch."""
    src_lines = Path(src_path).read_text(encoding="utf-8").splitlines()
    tgt_lines = Path(tgt_path).read_text(encoding="utf-8").splitlines()
    if len(src_lines) != len(tgt_lines):
        raise ValueError(
            f"line count mismatch: {src_path} has {len(src_lines)} lines, "
            f"{tgt_path} has {len(tgt_lines)}"
        )
    for index, (src, tgt) in enumerate(zip(src_lines, tgt_lines)):
        src_words = src.split()
        tgt_words = tgt.split()
        if not src_words or not tgt_words:
            raise ValueError(f"line {index + 1} is empty on one side")
        yield index, src_words, tgt_words


def write_records(handle: TextIO, records: Iterable[dict]) -> int:
    """Write records as JSON Lines; returns how many were written."""
    count = 0
    for record in records:
        handle.write(json.dumps(record) + "\n")
        count += 1
    return count
