"""
Tokenization and the on-disk alignment formats
==============================================

"""

import tempfile
from pathlib import Path

from bitalign import (
    AlignmentSet,
    SentencePair,
    parse_pharaoh,
    read_gold,
    serialize_pharaoh,
    tokenize,
    write_gold,
)

# The tokenizer peels punctuation off word edges but keeps elided articles
# ("l'onn") together and knows that guillemets never belong to a word.
for text in (
    "Die Regierung informiert: «Das Projekt beginnt 2026.»",
    "L'onn passà è la regenza s'inscuntrada cun la populaziun.",
):
    print(text)
    print("  ->", tokenize(text))

# Word alignments travel as pharaoh pairs: "i-j" means source token i links
# to target token j. validate_for checks the indices against a sentence pair.
pair = SentencePair(
    0,
    tuple(tokenize("Der Kanton informiert die Bevölkerung .")),
    tuple(tokenize("Il chantun infurmescha la populaziun .")),
)
links = parse_pharaoh("0-0 1-1 2-2 3-3 4-4 5-5")
links.validate_for(pair)
print()
print("pharaoh round trip:", serialize_pharaoh(links))
for i, j in sorted(links.links):
    print(f"  {pair.src_tokens[i]:>12} -> {pair.tgt_tokens[j]}")

# Gold files bundle both sentences with their links, one pair per line.
with tempfile.TemporaryDirectory() as tmp:
    gold_path = Path(tmp) / "gold.tsv"
    write_gold(gold_path, [(pair, links)])
    print()
    print("gold.tsv:")
    print(gold_path.read_text(encoding="utf-8"), end="")
    for loaded_pair, loaded_links in read_gold(gold_path):
        assert loaded_links == links
        print("re-read", len(loaded_links.links), "links for pair", loaded_pair.id)

# Malformed input fails loudly, with the offending column spelled out.
try:
    parse_pharaoh("0-0 banana")
except ValueError as exc:
    print()
    print("malformed item rejected:", exc)
try:
    parse_pharaoh("0-0 9-9").validate_for(pair)
except ValueError as exc:
    print("out-of-range link rejected:", exc)
