"""Alignment evaluation, the dataset-size scaling harness and grid plots.

All reported numbers are micro-averages: link counts are pooled over the
whole pair collection before the ratios are taken. Every gold link is a
Sure link, and the Possible set equals the Sure set, so the error rate
always equals one minus the balanced F-measure; evaluate() checks that
identity on every call.
"""

from __future__ import annotations

import html as html_module
import time
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .core import AlignmentSet, Corpus, SentencePair
from .statistical import TrainConfig, TranslationModel, symmetrize, train, viterbi_align

__all__ = [
    "EvalReport",
    "ScalingEntry",
    "ScalingResult",
    "GridDocument",
    "evaluate",
    "accuracy",
    "scaling_experiment",
    "render_grid",
]


@dataclass(frozen=True)
class EvalReport:
    """Micro-averaged alignment quality plus the pooled counts behind it."""

    precision: float
    recall: float
    aer: float
    hyp_count: int
    gold_count: int
    sure_hits: int
    possible_hits: int

    def __post_init__(self) -> None:
        for name in ("precision", "recall", "aer"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


def evaluate(
    hypotheses: Mapping[int, AlignmentSet], gold: Mapping[int, AlignmentSet]
) -> EvalReport:
    """Score hypothesis links against gold links, pooled over all pairs.

    recall = |A n S| / |S|, precision = |A n P| / |A| (1.0 when the
    hypothesis is empty), error rate = 1 - (|A n S| + |A n P|) / (|A| + |S|).
    Both mappings must cover exactly the same pair ids, and the gold side
    must contain at least one link overall.
    """
    missing = sorted(gold.keys() - hypotheses.keys())
    unknown = sorted(hypotheses.keys() - gold.keys())
    if missing or unknown:
        parts = []
        if missing:
            parts.append(f"ids missing from hypothesis: {missing}")
        if unknown:
            parts.append(f"ids not in gold: {unknown}")
        raise ValueError("pair id mismatch; " + "; ".join(parts))

    hyp_count = 0
    gold_count = 0
    sure_hits = 0
    for pair_id, gold_links in gold.items():
        hyp_links = hypotheses[pair_id]
        hyp_count += len(hyp_links)
        gold_count += len(gold_links)
        sure_hits += len(hyp_links.links & gold_links.links)
    if gold_count == 0:
        raise ValueError("gold standard has no links")

    possible_hits = sure_hits  # every gold link is both Sure and Possible
    precision = possible_hits / hyp_count if hyp_count else 1.0
    recall = sure_hits / gold_count
    aer = 1.0 - (sure_hits + possible_hits) / (hyp_count + gold_count)

    f1 = 2.0 * sure_hits / (hyp_count + gold_count)
    assert abs(aer - (1.0 - f1)) <= 1e-12, "error rate must equal 1 - F1 when P = S"

    return EvalReport(
        precision=precision,
        recall=recall,
        aer=aer,
        hyp_count=hyp_count,
        gold_count=gold_count,
        sure_hits=sure_hits,
        possible_hits=possible_hits,
    )


def accuracy(hypothesis: AlignmentSet, gold: AlignmentSet) -> float:
    """Per-sentence agreement, interpreted as the balanced F-measure of the
    hypothesis against the gold links. Empty gold is an error; an empty
    hypothesis scores 0."""
    if not len(gold):
        raise ValueError("gold alignment has no links")
    overlap = len(hypothesis.links & gold.links)
    return 2.0 * overlap / (len(hypothesis) + len(gold))


@dataclass(frozen=True)
class ScalingEntry:
    """One scaling-experiment row: training size, its report, wall seconds."""

    size: int
    report: EvalReport
    seconds: float


@dataclass(frozen=True)
class ScalingResult:
    """Reports per training-set size.

    Sizes are expected non-decreasing; repeats are allowed so determinism
    of the training path can be observed directly.
    """

    entries: tuple[ScalingEntry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        sizes = [entry.size for entry in self.entries]
        if any(b < a for a, b in zip(sizes, sizes[1:])):
            raise ValueError(f"sizes must be non-decreasing, got {sizes}")

    def to_tsv(self) -> str:
        lines = ["size\tprecision\trecall\taer\tseconds"]
        for entry in self.entries:
            report = entry.report
            lines.append(
                f"{entry.size}\t{report.precision:.6f}\t{report.recall:.6f}"
                f"\t{report.aer:.6f}\t{entry.seconds:.3f}"
            )
        return "\n".join(lines) + "\n"


def scaling_experiment(
    gold_pairs: Sequence[tuple[SentencePair, AlignmentSet]],
    corpus: Corpus,
    sizes: Sequence[int],
    config: TrainConfig = TrainConfig(),
    *,
    heuristic: str = "grow-diag-final-and",
    trainer: Callable[[Corpus, TrainConfig], TranslationModel] = train,
) -> ScalingResult:
    """Measure alignment quality as a function of training-set size.

    For each size N the training set is the gold sentence pairs followed by
    the first N corpus pairs; models are trained in both directions,
    the gold pairs are aligned and symmetrized, and only the gold pairs are
    evaluated. Wall time covers training, alignment and scoring for that
    size. A trainer failure is re-raised naming the offending size.
    """
    if not gold_pairs:
        raise ValueError("gold_pairs must be non-empty")
    for size in sizes:
        if size < 0 or size > len(corpus):
            raise ValueError(f"size {size} outside corpus of {len(corpus)} pairs")

    gold_sentences = [pair for pair, _ in gold_pairs]
    gold_links = {k: links for k, (_, links) in enumerate(gold_pairs)}

    entries = []
    for size in sizes:
        started = time.perf_counter()
        forward_pairs = [
            SentencePair(k, pair.src_tokens, pair.tgt_tokens)
            for k, pair in enumerate(gold_sentences)
        ]
        offset = len(forward_pairs)
        for k, pair in enumerate(corpus.pairs[:size]):
            forward_pairs.append(SentencePair(offset + k, pair.src_tokens, pair.tgt_tokens))
        reverse_pairs = [
            SentencePair(p.id, p.tgt_tokens, p.src_tokens) for p in forward_pairs
        ]
        try:
            forward_model = trainer(Corpus(tuple(forward_pairs)), config)
            reverse_model = trainer(Corpus(tuple(reverse_pairs)), config)
        except Exception as exc:
            raise RuntimeError(f"training failed at dataset size {size}: {exc}") from exc

        hypotheses = {}
        for k, pair in enumerate(gold_sentences):
            forward = viterbi_align(forward_model, forward_pairs[k])
            reverse = viterbi_align(reverse_model, reverse_pairs[k]).transpose()
            hypotheses[k] = symmetrize(forward, reverse, heuristic)
        report = evaluate(hypotheses, gold_links)
        entries.append(
            ScalingEntry(size=size, report=report, seconds=time.perf_counter() - started)
        )
    return ScalingResult(entries=tuple(entries))


@dataclass(frozen=True)
class GridDocument:
    """An alignment grid rendered as self-contained HTML plus a plain-text
    fallback; both renderings are deterministic byte-for-byte."""

    html: str
    text: str


_GRID_CSS = """\
body { font-family: sans-serif; margin: 1.5em; }
table.grid { border-collapse: collapse; }
.grid td, .grid th { border: 1px solid #999; min-width: 2em; height: 2em;
  text-align: center; position: relative; padding: 2px 6px; }
.grid th { font-weight: normal; background: #f4f4f4; }
th.src { text-align: right; }
td.gold { background: #78c679; }
td span.box { position: absolute; inset: 3px; border: 3px solid #2b5fad; }
td span.dot { position: absolute; inset: 30%; border-radius: 50%; background: #d95f0e; }
p.legend { color: #444; }
"""

_CANDIDATE_MARKS = ("x", "o")


def render_grid(
    pair: SentencePair,
    gold: AlignmentSet,
    candidates: Mapping[str, AlignmentSet] | None = None,
) -> GridDocument:
    """Render one pair's links on a source-rows by target-columns grid.

    Gold links fill the cell; the first candidate set draws a box, the
    second a circle. At most two candidate sets are supported, and any link
    outside the token grid is an error.
    """
    candidates = dict(candidates or {})
    if len(candidates) > 2:
        raise ValueError(f"at most 2 candidate sets supported, got {len(candidates)}")
    gold.validate_for(pair)
    for name, links in candidates.items():
        links.validate_for(pair)

    names = list(candidates)
    src, tgt = pair.src_tokens, pair.tgt_tokens

    legend_parts = ["gold: filled cell"]
    for k, name in enumerate(names):
        shape = "box" if k == 0 else "circle"
        legend_parts.append(f"{name}: {shape}")

    rows = []
    header = ["<tr><th></th>"]
    header.extend(f"<th>{html_module.escape(tok)}</th>" for tok in tgt)
    header.append("</tr>")
    rows.append("".join(header))
    for i, src_tok in enumerate(src):
        cells = [f'<tr><th class="src">{html_module.escape(src_tok)}</th>']
        for j in range(len(tgt)):
            classes = ' class="gold"' if (i, j) in gold.links else ""
            marks = []
            for k, name in enumerate(names):
                if (i, j) in candidates[name].links:
                    marks.append(f'<span class="{"box" if k == 0 else "dot"}"></span>')
            cells.append(f"<td{classes}>{''.join(marks)}</td>")
        cells.append("</tr>")
        rows.append("".join(cells))

    html_text = (
        "<!DOCTYPE html>\n"
        '<html lang="en">\n<head>\n<meta charset="utf-8">\n'
        f"<title>pair {pair.id}</title>\n<style>\n{_GRID_CSS}</style>\n</head>\n<body>\n"
        f"<h1>pair {pair.id}</h1>\n"
        f'<p class="legend">{html_module.escape(" | ".join(legend_parts))}</p>\n'
        '<table class="grid">\n' + "\n".join(rows) + "\n</table>\n</body>\n</html>\n"
    )

    legend_text = ["#=gold"]
    for k, name in enumerate(names):
        legend_text.append(f"{_CANDIDATE_MARKS[k]}={name}")
    text_lines = [
        f"pair {pair.id}",
        f"source tokens: {' '.join(src)}",
        f"target tokens: {' '.join(tgt)}",
        f"legend: {' '.join(legend_text)}",
    ]
    width = 4
    text_lines.append("".join([" " * width] + [f"j{j}".ljust(width) for j in range(len(tgt))]).rstrip())
    for i in range(len(src)):
        cells = [f"i{i}".ljust(width)]
        for j in range(len(tgt)):
            code = ""
            if (i, j) in gold.links:
                code += "#"
            for k, name in enumerate(names):
                if (i, j) in candidates[name].links:
                    code += _CANDIDATE_MARKS[k]
            cells.append((code or ".").ljust(width))
        text_lines.append("".join(cells).rstrip())
    return GridDocument(html=html_text, text="\n".join(text_lines) + "\n")
