"""Statistical word alignment.

EM training of a lexical translation table (with an optional diagonal
position prior), asymmetric Viterbi link extraction with a NULL source
token, bidirectional symmetrization heuristics and a versioned TSV model
format.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .core import AlignmentSet, Corpus, FormatError, SentencePair

__all__ = [
    "NULL_TOKEN",
    "VARIANTS",
    "SYMMETRIZATION_HEURISTICS",
    "TrainConfig",
    "TranslationModel",
    "train",
    "viterbi_align",
    "symmetrize",
    "save_model",
    "load_model",
]

# Reserved source token owning the probability row for unaligned target
# words. train() rejects corpora that contain it as a surface form, which
# keeps it distinct from every real token.
NULL_TOKEN = "<NULL>"

VARIANTS = ("model1", "diagonal")
SYMMETRIZATION_HEURISTICS = ("intersection", "union", "grow-diag-final-and")


@dataclass(frozen=True)
class TrainConfig:
    """EM training settings.

    tension is the strength of the diagonal position prior and only affects
    the "diagonal" variant; p0 is the probability mass reserved for NULL;
    min_prob is the floor returned for unseen token pairs at alignment time.
    seed is reserved for future stochastic variants: current training is
    fully deterministic (uniform initialization).
    """

    iterations: int = 5
    variant: str = "model1"
    tension: float = 4.0
    p0: float = 0.08
    min_prob: float = 1e-12
    seed: int = 0

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}, expected one of {VARIANTS}")
        if not 0.0 <= self.p0 < 1.0:
            raise ValueError(f"p0 must lie in [0, 1), got {self.p0}")
        if self.tension < 0.0:
            raise ValueError(f"tension must be >= 0, got {self.tension}")
        if self.min_prob <= 0.0:
            raise ValueError(f"min_prob must be > 0, got {self.min_prob}")


@dataclass(frozen=True)
class TranslationModel:
    """A trained lexical translation table plus its alignment-prior settings.

    ttable maps source token to {target token: probability}; every row sums
    to one (up to float rounding). log_likelihoods records the corpus
    log-likelihood under the parameters entering each EM iteration; it is a
    training artifact and is not persisted by save_model.
    """

    ttable: Mapping[str, Mapping[str, float]]
    variant: str = "model1"
    tension: float = 4.0
    p0: float = 0.08
    min_prob: float = 1e-12
    vocab_src: frozenset[str] = frozenset()
    vocab_tgt: frozenset[str] = frozenset()
    log_likelihoods: tuple[float, ...] = ()

    def prob(self, src_token: str, tgt_token: str) -> float:
        """t(tgt_token | src_token); unseen pairs fall back to min_prob."""
        row = self.ttable.get(src_token)
        if row is None:
            return self.min_prob
        return row.get(tgt_token, self.min_prob)


def _position_weights(variant: str, tension: float, n: int, m: int, j: int) -> list[float]:
    """Prior weight of each real source position for target position j.

    Weights sum to one. The diagonal variant weights position i by
    exp(-tension * |i/n - j/m|); with tension 0 this is exactly the uniform
    prior of the plain lexical model.
    """
    if variant == "model1" or tension == 0.0:
        w = 1.0 / n
        return [w] * n
    raw = [math.exp(-tension * abs(i / n - j / m)) for i in range(n)]
    total = math.fsum(raw)
    return [r / total for r in raw]


def train(corpus: Corpus, config: TrainConfig = TrainConfig()) -> TranslationModel:
    """Run EM for config.iterations over the corpus and return the model.

    The translation table starts uniform over the target vocabulary, so
    training has no random component. For each target position the E-step
    posterior over source positions (plus NULL) is proportional to the
    position prior times the current translation probability, with NULL
    receiving mass p0 and real positions sharing (1 - p0). Expected counts
    are accumulated in corpus order, which makes repeated runs bit-identical.
    """
    if not len(corpus):
        raise ValueError("cannot train on an empty corpus")
    vocab_src: set[str] = set()
    vocab_tgt: set[str] = set()
    for pair in corpus:
        vocab_src.update(pair.src_tokens)
        vocab_tgt.update(pair.tgt_tokens)
    if NULL_TOKEN in vocab_src or NULL_TOKEN in vocab_tgt:
        raise ValueError(f"corpus contains the reserved token {NULL_TOKEN!r}")

    uniform = 1.0 / len(vocab_tgt)
    p0 = config.p0
    keep = 1.0 - p0
    ttable: dict[str, dict[str, float]] = {}
    weight_cache: dict[tuple[int, int], list[list[float]]] = {}
    likelihoods: list[float] = []

    for _ in range(config.iterations):
        counts: dict[str, dict[str, float]] = {}
        log_likelihood = 0.0
        for pair in corpus:
            src, tgt = pair.src_tokens, pair.tgt_tokens
            n, m = len(src), len(tgt)
            shape = (n, m)
            per_target = weight_cache.get(shape)
            if per_target is None:
                per_target = [
                    _position_weights(config.variant, config.tension, n, m, j)
                    for j in range(m)
                ]
                weight_cache[shape] = per_target
            null_row = ttable.get(NULL_TOKEN)
            for j, f in enumerate(tgt):
                weights = per_target[j]
                t_null = uniform if null_row is None else null_row[f]
                null_score = p0 * t_null
                total = null_score
                scores = []
                for i, e in enumerate(src):
                    row = ttable.get(e)
                    t_ef = uniform if row is None else row[f]
                    s = keep * weights[i] * t_ef
                    scores.append(s)
                    total += s
                log_likelihood += math.log(total)
                inv = 1.0 / total
                null_counts = counts.setdefault(NULL_TOKEN, {})
                null_counts[f] = null_counts.get(f, 0.0) + null_score * inv
                for i, e in enumerate(src):
                    row_counts = counts.setdefault(e, {})
                    row_counts[f] = row_counts.get(f, 0.0) + scores[i] * inv
        likelihoods.append(log_likelihood)
        ttable = {}
        for e, row in counts.items():
            total = math.fsum(row.values())
            ttable[e] = {f: c / total for f, c in row.items()}

    return TranslationModel(
        ttable=ttable,
        variant=config.variant,
        tension=config.tension,
        p0=config.p0,
        min_prob=config.min_prob,
        vocab_src=frozenset(vocab_src),
        vocab_tgt=frozenset(vocab_tgt),
        log_likelihoods=tuple(likelihoods),
    )


def viterbi_align(model: TranslationModel, pair: SentencePair) -> AlignmentSet:
    """Pick the best source position (or NULL) for every target token.

    Scores mirror the training posterior: NULL gets p0 * t(f | NULL), real
    position i gets (1 - p0) * prior(i, j) * t(f | e_i), with unseen pairs
    floored at min_prob. A NULL choice produces no link. NULL wins exact
    ties; among real positions the smallest index wins.
    """
    src, tgt = pair.src_tokens, pair.tgt_tokens
    n, m = len(src), len(tgt)
    p0 = model.p0
    keep = 1.0 - p0
    links = set()
    for j, f in enumerate(tgt):
        weights = _position_weights(model.variant, model.tension, n, m, j)
        best = p0 * model.prob(NULL_TOKEN, f)
        best_i = -1
        for i, e in enumerate(src):
            score = keep * weights[i] * model.prob(e, f)
            if score > best:
                best, best_i = score, i
        if best_i >= 0:
            links.add((best_i, j))
    return AlignmentSet(frozenset(links))


_NEIGHBORS = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


def _grow_diag_final_and(forward: frozenset, reverse: frozenset) -> frozenset:
    union = forward | reverse
    links = set(forward & reverse)
    src_aligned = {i for i, _ in links}
    tgt_aligned = {j for _, j in links}
    # Grow from the intersection into the union through the 8-neighborhood,
    # attaching a cell only while both of its tokens are still unaligned;
    # sweep to a fixpoint in sorted order for determinism.
    changed = True
    while changed:
        changed = False
        for i, j in sorted(links):
            for di, dj in _NEIGHBORS:
                ci, cj = i + di, j + dj
                if (
                    (ci, cj) in union
                    and (ci, cj) not in links
                    and ci not in src_aligned
                    and cj not in tgt_aligned
                ):
                    links.add((ci, cj))
                    src_aligned.add(ci)
                    tgt_aligned.add(cj)
                    changed = True
    # Final-and: adopt any remaining union link whose tokens are both free.
    for i, j in sorted(union):
        if (i, j) not in links and i not in src_aligned and j not in tgt_aligned:
            links.add((i, j))
            src_aligned.add(i)
            tgt_aligned.add(j)
    return frozenset(links)


def symmetrize(forward: AlignmentSet, reverse: AlignmentSet, heuristic: str = "grow-diag-final-and") -> AlignmentSet:
    """Combine two directional alignments that share (i, j) orientation.

    The reverse alignment must already be transposed into source-major
    (i, j) space. The grow-diag-final-and result always lies between the
    intersection and the union of its inputs.
    """
    if heuristic not in SYMMETRIZATION_HEURISTICS:
        raise ValueError(
            f"unknown heuristic {heuristic!r}, expected one of {SYMMETRIZATION_HEURISTICS}"
        )
    fwd, rev = forward.links, reverse.links
    if heuristic == "intersection":
        return AlignmentSet(fwd & rev)
    if heuristic == "union":
        return AlignmentSet(fwd | rev)
    return AlignmentSet(_grow_diag_final_and(fwd, rev))


_MODEL_MAGIC = "#ttable"
_MODEL_VERSION = "v1"


def save_model(model: TranslationModel, path: str | Path) -> None:
    """Write the model as a versioned TSV file.

    The header line carries the variant and prior settings; each following
    row is "source<TAB>target<TAB>probability" with probabilities rendered
    as shortest round-trip decimals, so load_model(save_model(m)) restores
    the table exactly.
    """
    lines = [
        "\t".join(
            [
                f"{_MODEL_MAGIC} {_MODEL_VERSION}",
                f"variant={model.variant}",
                f"tension={model.tension!r}",
                f"p0={model.p0!r}",
                f"min_prob={model.min_prob!r}",
            ]
        )
    ]
    for e in sorted(model.ttable):
        row = model.ttable[e]
        for f in sorted(row):
            lines.append(f"{e}\t{f}\t{row[f]!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> TranslationModel:
    """Read a model file written by save_model."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise FormatError("empty model file")
    header = lines[0].split("\t")
    if header[0] != f"{_MODEL_MAGIC} {_MODEL_VERSION}":
        raise FormatError(f"bad model header {lines[0].split(chr(9))[0]!r}")
    settings: dict[str, str] = {}
    for part in header[1:]:
        key, sep, value = part.partition("=")
        if not sep:
            raise FormatError(f"bad model header field {part!r}")
        settings[key] = value
    try:
        variant = settings["variant"]
        tension = float(settings["tension"])
        p0 = float(settings["p0"])
        min_prob = float(settings["min_prob"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad model header: {exc}") from None
    if variant not in VARIANTS:
        raise FormatError(f"unknown variant {variant!r} in model header")

    ttable: dict[str, dict[str, float]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise FormatError(f"model line {lineno}: expected 3 fields, got {len(fields)}")
        e, f, raw = fields
        try:
            prob = float(raw)
        except ValueError:
            raise FormatError(f"model line {lineno}: bad probability {raw!r}") from None
        if not 0.0 <= prob <= 1.0:
            raise FormatError(f"model line {lineno}: probability {prob} outside [0, 1]")
        ttable.setdefault(e, {})[f] = prob

    vocab_src = frozenset(e for e in ttable if e != NULL_TOKEN)
    vocab_tgt = frozenset(f for row in ttable.values() for f in row)
    return TranslationModel(
        ttable=ttable,
        variant=variant,
        tension=tension,
        p0=p0,
        min_prob=min_prob,
        vocab_src=vocab_src,
        vocab_tgt=vocab_tgt,
    )
