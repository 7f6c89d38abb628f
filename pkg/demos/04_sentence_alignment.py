"""
Segmenting paragraphs and aligning sentences
============================================

"""

from bitalign import Dictionary, Document, align_sentences, segment_sentences

# Sentence segmentation splits on terminal punctuation but knows about
# abbreviations, initials, and numbers, so "z.B." and "Dr." survive.
doc = Document(
    "press-release-12",
    "de",
    (
        "Dr. Gieri Caduff hat die Sitzung eröffnet. Die Traktanden wurden "
        "z.B. in drei Sprachen verteilt. 2026 folgt die nächste Runde.",
    ),
)
sentences = segment_sentences(doc, abbreviations=["Dr", "z.B"])
print("segmented German paragraph:")
for s in sentences:
    print("  -", s)

# Two translations of the same announcement. The Romansh version merges the
# first two German sentences into one; sentence alignment has to notice.
de_sentences = [
    "Die Regierung hat das neue Gesetz beschlossen.",
    "Es gilt ab dem ersten Januar.",
    "Die Gemeinden wurden gestern informiert.",
]
rm_sentences = [
    "La regenza ha decis la nova lescha, che vala a partir dal prim da schaner.",
    "Las vischnancas èn vegnidas infurmadas ier.",
]

# A small bilingual dictionary steers the alignment: each bead is scored by
# how many of its source words have a known translation in its target side,
# on top of the character-length plausibility term.
dictionary = Dictionary({
    "regierung": frozenset({"regenza"}),
    "gesetz": frozenset({"lescha"}),
    "neue": frozenset({"nova"}),
    "beschlossen": frozenset({"decis"}),
    "gilt": frozenset({"vala"}),
    "ersten": frozenset({"prim"}),
    "januar": frozenset({"schaner"}),
    "gemeinden": frozenset({"vischnancas"}),
    "informiert": frozenset({"infurmadas"}),
    "gestern": frozenset({"ier"}),
})

beads = align_sentences(de_sentences, rm_sentences, dictionary)
print("\nbead structure:")
for bead in beads:
    src = " + ".join(de_sentences[k] for k in range(*bead.src_span)) or "(nothing)"
    tgt = " + ".join(rm_sentences[k] for k in range(*bead.tgt_span)) or "(nothing)"
    print(f"  [{bead.bead_type}] score {bead.score:6.3f}")
    print(f"      de: {src}")
    print(f"      rm: {tgt}")

# Without the dictionary only character lengths speak, and the merge is
# much harder to justify.
plain = align_sentences(de_sentences, rm_sentences)
print("\nbead types without a dictionary:",
      [bead.bead_type for bead in plain])
