"""
Aligning words by embedding similarity
======================================

"""

import numpy as np

from bitalign import (
    EmbeddingRecord,
    aggregate_to_words,
    align_record,
    cosine_matrix,
    extract_argmax,
    extract_itermax,
    extract_match,
    extract_softmax_threshold,
)

# Pretend a multilingual encoder produced these vectors. Each concept gets
# a direction in space; translated words share the concept direction plus a
# little noise, which is exactly the structure cosine similarity picks up.
rng = np.random.default_rng(7)
concepts = {name: rng.normal(size=32) for name in
            ("government", "inform", "population", "year", "function")}


def vec(name, scale=0.15):
    return concepts[name] + rng.normal(scale=scale, size=32)


# German "Die Regierung informiert die Bevölkerung" against Romansh
# "La regenza infurmescha la populaziun". The Romansh verb is split into
# two subword pieces, as real tokenizers do to rare words.
src_words = ["Die", "Regierung", "informiert", "die", "Bevölkerung"]
tgt_words = ["La", "regenza", "infurmescha", "la", "populaziun"]
record = EmbeddingRecord(
    id=0,
    src_sub2word=(0, 1, 2, 3, 4),
    tgt_sub2word=(0, 1, 2, 2, 3, 4),  # subwords 2 and 3 form one word
    src_vecs=np.stack([
        vec("function"), vec("government"), vec("inform"),
        vec("function"), vec("population"),
    ]),
    tgt_vecs=np.stack([
        vec("function"), vec("government"), vec("inform"), vec("inform"),
        vec("function"), vec("population"),
    ]),
)

matrix = cosine_matrix(record, level="subword")
print("subword cosine matrix (rows = German subwords):")
for row in matrix.values:
    print("  " + " ".join(f"{v:5.2f}" for v in row))

# Four extraction rules with different precision/recall trade-offs.
subword_links = {
    "argmax": extract_argmax(matrix),
    "itermax": extract_itermax(matrix),
    "match": extract_match(matrix),
    "softmax-threshold": extract_softmax_threshold(matrix, threshold=0.15),
}
print("\nsubword links per method:")
for method, links in subword_links.items():
    print(f"  {method:>17}: {sorted(links)}")

# Subword links project onto words; the split verb collapses back to one
# word-level link no matter how many of its pieces matched.
words = aggregate_to_words(
    subword_links["itermax"], record.src_sub2word, record.tgt_sub2word
)
print("\nword links from itermax:")
for i, j in sorted(words.links):
    print(f"  {src_words[i]:>11} -> {tgt_words[j]}")

# align_record bundles cosine + extraction + word aggregation. Word-level
# cosine first mean-pools each word's subword vectors.
for level in ("subword", "word"):
    links = align_record(record, method="match", level=level)
    print(f"match at {level} level -> {sorted(links.links)}")

# The function words "Die/die" and "La/la" are interchangeable by design;
# mutual-argmax style rules keep only reciprocal best matches, so ambiguous
# pairs drop out instead of guessing.
ambiguous = {(0, 0), (0, 3), (3, 0), (3, 3)}
kept = subword_links["argmax"] & ambiguous
print("\nreciprocal function-word links kept by argmax:", sorted(kept))
