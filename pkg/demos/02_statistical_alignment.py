"""
Training a translation table and aligning words with it
=======================================================

"""

import itertools

from bitalign import (
    Corpus,
    SentencePair,
    TrainConfig,
    symmetrize,
    tokenize,
    train,
    viterbi_align,
)

# A toy German/Romansh corpus built from substitution templates. Every
# subject appears with every verb, so co-occurrence statistics identify the
# word-level correspondences even though no sentence pair repeats.
subjects = [
    ("Der Hund", "Il chaun"),
    ("Die Katze", "Il giat"),
    ("Das Kind", "L'uffant"),
    ("Die Lehrerin", "La scolasta"),
    ("Der Nachbar", "Il vischin"),
]
verbs = [
    ("schläft", "dorma"),
    ("singt", "chanta"),
    ("arbeitet", "lavura"),
    ("wartet", "spetga"),
]

pairs = []
for k, ((de_s, rm_s), (de_v, rm_v)) in enumerate(
    itertools.product(subjects, verbs)
):
    pairs.append(
        SentencePair(
            k,
            tuple(tokenize(f"{de_s} {de_v} .")),
            tuple(tokenize(f"{rm_s} {rm_v} .")),
        )
    )
corpus = Corpus(tuple(pairs))
print(f"corpus: {len(corpus)} sentence pairs, e.g. {' '.join(pairs[0].src_tokens)}"
      f" / {' '.join(pairs[0].tgt_tokens)}")

# Expectation-maximization sharpens the translation table; the data
# log-likelihood must never decrease from one iteration to the next.
config = TrainConfig(iterations=6)
model = train(corpus, config)
print("\nlog-likelihood per iteration:")
for it, ll in enumerate(model.log_likelihoods, start=1):
    print(f"  iteration {it}: {ll:10.4f}")

# The learned table concentrates probability on the right translations.
print("\nstrongest translations of some German words:")
for word in ("Hund", "Katze", "schläft", "arbeitet", "."):
    candidates = sorted(
        ((p, f) for f, p in model.ttable[word].items()), reverse=True
    )[:2]
    shown = ", ".join(f"{f} ({p:.2f})" for p, f in candidates)
    print(f"  {word:>10} -> {shown}")

# Viterbi alignment picks each target word's best source (or none).
example = pairs[7]
forward = viterbi_align(model, example)
print(f"\nviterbi links for pair {example.id}:")
for i, j in sorted(forward.links):
    print(f"  {example.src_tokens[i]:>10} -> {example.tgt_tokens[j]}")

# Training the opposite direction and symmetrizing usually beats either
# single direction; grow-diag-final-and sits between intersection and union.
reverse_corpus = Corpus(
    tuple(SentencePair(p.id, p.tgt_tokens, p.src_tokens) for p in pairs)
)
reverse_model = train(reverse_corpus, config)
reverse = viterbi_align(reverse_model, reverse_corpus[example.id])
reverse_as_forward = type(forward).from_links({(i, j) for j, i in reverse.links})

for heuristic in ("intersection", "grow-diag-final-and", "union"):
    merged = symmetrize(forward, reverse_as_forward, heuristic)
    print(f"{heuristic:>21}: {len(merged.links)} links")

# The diagonal-prior variant prefers links near the sentence diagonal and
# helps once sentences get long enough for position to carry signal.
diagonal = train(corpus, TrainConfig(iterations=6, variant="diagonal", tension=4.0))
print("\ndiagonal variant, same pair:",
      " ".join(f"{i}-{j}" for i, j in sorted(viterbi_align(diagonal, example).links)))
