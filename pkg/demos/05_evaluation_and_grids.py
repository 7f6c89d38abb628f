"""
Scoring alignments and eyeballing them on a grid
================================================

"""

import tempfile
from pathlib import Path

from bitalign import (
    AlignmentSet,
    SentencePair,
    accuracy,
    evaluate,
    parse_pharaoh,
    render_grid,
    tokenize,
)

pairs = [
    SentencePair(0, tuple(tokenize("Der Kanton plant neue Schulen .")),
                 tuple(tokenize("Il chantun planisescha novas scolas ."))),
    SentencePair(1, tuple(tokenize("Die Arbeiten beginnen im Herbst .")),
                 tuple(tokenize("Las lavurs cumenzan l'atun ."))),
]
gold = {
    0: parse_pharaoh("0-0 1-1 2-2 3-3 4-4 5-5"),
    1: parse_pharaoh("0-0 1-1 2-2 3-3 4-3 5-4"),
}

# Two fictional systems: one close to gold, one with a systematic flaw.
careful = {
    0: parse_pharaoh("0-0 1-1 2-2 3-3 4-4 5-5"),
    1: parse_pharaoh("0-0 1-1 2-2 3-3 5-4"),
}
sloppy = {
    0: parse_pharaoh("0-0 1-0 2-2 3-2 4-4 5-5"),
    1: parse_pharaoh("0-0 1-0 2-2 5-4"),
}

# evaluate() micro-averages over the corpus: precision is the share of
# proposed links that are in gold, recall the share of gold links found,
# and the alignment error rate is 1 - F1 for this kind of gold standard.
print("system comparison:")
for name, hyp in (("careful", careful), ("sloppy", sloppy)):
    rep = evaluate(hyp, gold)
    print(f"  {name:>8}: precision {rep.precision:.3f}  recall {rep.recall:.3f}"
          f"  AER {rep.aer:.3f}  ({rep.hyp_count} links vs {rep.gold_count} gold)")

# Per-sentence overlap score, handy for sorting a corpus by difficulty.
print("\nper-sentence accuracy of the sloppy system:")
for pair in pairs:
    print(f"  pair {pair.id}: {accuracy(sloppy[pair.id], gold[pair.id]):.3f}")

# A text grid puts gold and candidates on one picture: '#' marks gold
# cells, letters mark the systems. Disagreements jump out immediately.
doc = render_grid(
    pairs[1], gold[1], {"careful": careful[1], "sloppy": sloppy[1]}
)
print()
print(doc.text)

# The HTML flavour of the same grid is self-contained and opens anywhere.
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "pair1.html"
    out.write_text(doc.html, encoding="utf-8")
    print(f"wrote {out.stat().st_size} bytes of standalone HTML")
