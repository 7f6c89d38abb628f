"""
From raw bilingual documents to evaluated word alignments
=========================================================

"""

import itertools
import random

from bitalign import (
    AlignmentSet,
    Corpus,
    Dictionary,
    Document,
    SentencePair,
    TrainConfig,
    align_sentences,
    evaluate,
    filter_pairs,
    pair_documents,
    render_grid,
    segment_sentences,
    symmetrize,
    tokenize,
    train,
    viterbi_align,
)

# ---------------------------------------------------------------- raw data
# Fifteen little press items, each published in German and Romansh. The
# sentences are template-generated so the lexicon repeats across documents,
# which is what any statistics-based aligner feeds on.
lexicon = {
    "Hund": "chaun", "Bauer": "pur", "Nachbar": "vischin",
    "sieht": "vesa", "sucht": "tschertga", "findet": "chatta",
    "Wald": "guaud", "Fluss": "flum", "Berg": "munt",
}
subjects = ["Hund", "Bauer", "Nachbar"]
verbs = ["sieht", "sucht", "findet"]
objects = ["Wald", "Fluss", "Berg"]

rng = random.Random(42)
documents = []
for key in range(15):
    de_par, rm_par = [], []
    for _ in range(rng.randint(2, 3)):
        s, v, o = rng.choice(subjects), rng.choice(verbs), rng.choice(objects)
        de_par.append(f"Der {s} {v} den {o}.")
        rm_par.append(f"Il {lexicon[s]} {lexicon[v]} il {lexicon[o]}.")
    documents.append(Document(f"item-{key}", "de", (" ".join(de_par),)))
    documents.append(Document(f"item-{key}", "rm", (" ".join(rm_par),)))

# One item was never translated: the Romansh file repeats the German text.
documents.append(Document("item-99", "de", ("Der Hund sieht den Wald.",)))
documents.append(Document("item-99", "rm", ("Der Hund sieht den Wald.",)))

# -------------------------------------------------- documents to sentences
matched, unmatched = pair_documents(documents, "de", "rm")
print(f"paired {len(matched)} documents ({len(unmatched)} unmatched)")

small_dict = Dictionary(
    {de.lower(): frozenset({rm}) for de, rm in lexicon.items()}
)
bitext = []
for de_doc, rm_doc in matched:
    de_sents = segment_sentences(de_doc)
    rm_sents = segment_sentences(rm_doc)
    for bead in align_sentences(de_sents, rm_sents, small_dict):
        if bead.src_size and bead.tgt_size:
            bitext.append((
                " ".join(de_sents[k] for k in range(*bead.src_span)),
                " ".join(rm_sents[k] for k in range(*bead.tgt_span)),
            ))
print(f"sentence alignment produced {len(bitext)} pairs")

# ------------------------------------------------------------------ filter
kept = filter_pairs(bitext, max_ratio=3.0, min_tokens=2)
print(f"filtering kept {len(kept)} pairs"
      f" (dropped {len(bitext) - len(kept)}: untranslated boilerplate"
      f" and repeated sentences)")

# ------------------------------------------------------------------- train
corpus = Corpus(tuple(
    SentencePair(k, tuple(tokenize(de)), tuple(tokenize(rm)))
    for k, (de, rm) in enumerate(kept)
))
config = TrainConfig(iterations=6, variant="diagonal")
forward_model = train(corpus, config)
reverse_model = train(
    Corpus(tuple(SentencePair(p.id, p.tgt_tokens, p.src_tokens) for p in corpus)),
    config,
)
print(f"trained both directions; final log-likelihood "
      f"{forward_model.log_likelihoods[-1]:.2f}")

# ------------------------------------------------------- align + symmetrize
hypotheses = {}
for pair in corpus:
    fwd = viterbi_align(forward_model, pair)
    rev = viterbi_align(
        reverse_model, SentencePair(pair.id, pair.tgt_tokens, pair.src_tokens)
    )
    rev_t = AlignmentSet.from_links({(i, j) for j, i in rev.links})
    hypotheses[pair.id] = symmetrize(fwd, rev_t, "grow-diag-final-and")

# -------------------------------------------------------------------- score
# The templates are word-parallel, so the true alignment of every pair is
# the identity. That gives us a free gold standard for the whole corpus.
gold = {
    p.id: AlignmentSet.from_links({(k, k) for k in range(len(p.src_tokens))})
    for p in corpus
}
report = evaluate(hypotheses, gold)
print(f"\ncorpus of {len(corpus)} pairs: precision {report.precision:.3f}"
      f"  recall {report.recall:.3f}  AER {report.aer:.3f}")

pair = corpus[0]
print()
print(render_grid(pair, gold[pair.id], {"gdfa": hypotheses[pair.id]}).text)
