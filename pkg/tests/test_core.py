import pytest
from hypothesis import given, strategies as st

from bitalign import (
    AlignmentSet,
    Corpus,
    FormatError,
    SentencePair,
    format_gold,
    load_bitext,
    parse_pharaoh,
    read_gold,
    serialize_pharaoh,
    tokenize,
    write_gold,
)


# -- tokenize ---------------------------------------------------------------


def test_tokenize_splits_on_whitespace():
    assert tokenize("ein kleiner Test") == ["ein", "kleiner", "Test"]


def test_tokenize_detaches_leading_and_trailing_punctuation():
    assert tokenize("Hallo, Welt!") == ["Hallo", ",", "Welt", "!"]
    assert tokenize('"Zitat."') == ['"', "Zitat", ".", '"']
    assert tokenize("(siehe)") == ["(", "siehe", ")"]


def test_tokenize_keeps_apostrophe_after_letter():
    # Elided articles keep their apostrophe and stay one token.
    assert tokenize("pagina d' internet") == ["pagina", "d'", "internet"]
    assert tokenize("l'onn") == ["l'onn"]
    assert tokenize("d’ internet") == ["d’", "internet"]


def test_tokenize_detaches_apostrophe_not_after_letter():
    # A bare apostrophe chunk or one following punctuation is detached.
    assert tokenize("x ' y") == ["x", "'", "y"]
    assert tokenize("gut.'") == ["gut", ".", "'"]


def test_tokenize_unicode_punctuation_detached():
    assert tokenize("«Zitat»") == ["«", "Zitat", "»"]


def test_tokenize_pure_punctuation_chunk():
    assert tokenize("...") == [".", ".", "."]


def test_tokenize_empty_and_whitespace():
    assert tokenize("") == []
    assert tokenize("   \t\n") == []


def test_tokenize_interior_punctuation_stays():
    assert tokenize("z.B. 3,5") == ["z.B", ".", "3,5"]


@given(st.text(max_size=80))
def test_tokenize_never_yields_empty_or_spaced_tokens(text):
    for token in tokenize(text):
        assert token
        assert not any(ch.isspace() for ch in token)


@given(st.text(max_size=80))
def test_tokenize_preserves_all_non_space_characters_in_order(text):
    flattened = "".join(tokenize(text))
    assert flattened == "".join(text.split())


# -- SentencePair -------------------------------------------------------------


def test_sentence_pair_validation():
    pair = SentencePair(3, ("der", "Hund"), ("il", "chaun"))
    assert pair.id == 3 and pair.src_tokens == ("der", "Hund")
    with pytest.raises(ValueError, match="non-negative"):
        SentencePair(-1, ("a",), ("b",))
    with pytest.raises(ValueError, match="no tokens"):
        SentencePair(0, (), ("b",))
    with pytest.raises(ValueError, match="empty token"):
        SentencePair(0, ("a", ""), ("b",))
    with pytest.raises(ValueError, match="whitespace"):
        SentencePair(0, ("a b",), ("b",))


def test_sentence_pair_coerces_lists_to_tuples():
    pair = SentencePair(0, ["a"], ["b"])
    assert isinstance(pair.src_tokens, tuple) and isinstance(pair.tgt_tokens, tuple)


# -- AlignmentSet -------------------------------------------------------------


def test_alignment_set_basics():
    links = AlignmentSet.from_links([(1, 2), (0, 0), (1, 2)])
    assert len(links) == 2
    assert list(links) == [(0, 0), (1, 2)]  # iteration is sorted
    assert (1, 2) in links and (2, 1) not in links
    assert links.transpose().links == frozenset({(0, 0), (2, 1)})
    assert links.transpose().transpose() == links


def test_alignment_set_rejects_negative_indices():
    with pytest.raises(ValueError, match="negative"):
        AlignmentSet.from_links([(0, -1)])


def test_alignment_set_validate_for_bounds():
    pair = SentencePair(0, ("a", "b"), ("x", "y", "z"))
    AlignmentSet.from_links([(1, 2)]).validate_for(pair)
    with pytest.raises(ValueError, match=r"source index 2 out of range for link 2-0 \(2 source tokens\)"):
        AlignmentSet.from_links([(2, 0)]).validate_for(pair)
    with pytest.raises(ValueError, match=r"target index 3 out of range"):
        AlignmentSet.from_links([(0, 3)]).validate_for(pair)


# -- Pharaoh format -----------------------------------------------------------


def test_parse_pharaoh_ok():
    assert parse_pharaoh("0-0 2-1 1-3").links == frozenset({(0, 0), (2, 1), (1, 3)})
    assert parse_pharaoh("").links == frozenset()
    assert parse_pharaoh("  0-0   0-0 ").links == frozenset({(0, 0)})


def test_parse_pharaoh_errors_name_item_and_column():
    with pytest.raises(FormatError, match=r"malformed alignment item '0:0' at column 5"):
        parse_pharaoh("0-0 0:0")
    with pytest.raises(FormatError, match="'-1-2'"):
        parse_pharaoh("-1-2")
    with pytest.raises(FormatError, match="'1-'"):
        parse_pharaoh("1- 2-2")
    with pytest.raises(FormatError, match="'1-2-3'"):
        parse_pharaoh("1-2-3")


def test_serialize_pharaoh_sorted():
    links = AlignmentSet.from_links([(2, 0), (0, 5), (0, 1)])
    assert serialize_pharaoh(links) == "0-1 0-5 2-0"
    assert serialize_pharaoh(AlignmentSet()) == ""


@given(
    st.frozensets(
        st.tuples(st.integers(0, 40), st.integers(0, 40)), max_size=30
    )
)
def test_pharaoh_round_trip(links):
    alignment = AlignmentSet(links)
    assert parse_pharaoh(serialize_pharaoh(alignment)) == alignment


# -- Corpus and bitext loading ------------------------------------------------


def test_corpus_rejects_duplicate_ids():
    a = SentencePair(0, ("a",), ("b",))
    b = SentencePair(0, ("c",), ("d",))
    with pytest.raises(ValueError, match="duplicate pair id 0"):
        Corpus((a, b))


def test_load_bitext(tmp_path):
    src = tmp_path / "de.txt"
    tgt = tmp_path / "rm.txt"
    src.write_text("Der Hund bellt.\nEin Haus\n", encoding="utf-8")
    tgt.write_text("Il chaun laida.\nIna chasa\n", encoding="utf-8")
    corpus = load_bitext(src, tgt)
    assert len(corpus) == 2
    assert corpus[0].id == 0
    assert corpus[0].src_tokens == ("Der", "Hund", "bellt", ".")
    assert corpus[1].tgt_tokens == ("Ina", "chasa")


def test_load_bitext_line_count_mismatch(tmp_path):
    src = tmp_path / "a.txt"
    tgt = tmp_path / "b.txt"
    src.write_text("eins\nzwei\n", encoding="utf-8")
    tgt.write_text("in\n", encoding="utf-8")
    with pytest.raises(FormatError, match="line count mismatch"):
        load_bitext(src, tgt)


def test_load_bitext_empty_line(tmp_path):
    src = tmp_path / "a.txt"
    tgt = tmp_path / "b.txt"
    src.write_text("eins\n\n", encoding="utf-8")
    tgt.write_text("in\ndus\n", encoding="utf-8")
    with pytest.raises(FormatError, match="empty source line 2"):
        load_bitext(src, tgt)
    src.write_text("eins\nzwei\n", encoding="utf-8")
    tgt.write_text("in\n \n", encoding="utf-8")
    with pytest.raises(FormatError, match="empty target line 2"):
        load_bitext(src, tgt)


# -- gold TSV -----------------------------------------------------------------


def _sample_records():
    p0 = SentencePair(0, ("Der", "Hund"), ("Il", "chaun"))
    p1 = SentencePair(4, ("Ende",), ("Fin", "."))
    return [
        (p0, AlignmentSet.from_links([(0, 0), (1, 1)])),
        (p1, AlignmentSet.from_links([(0, 0)])),
    ]


def test_format_gold_layout():
    text = format_gold(_sample_records())
    assert text == (
        "0\tDer Hund\tIl chaun\t0-0 1-1\n"
        "4\tEnde\tFin .\t0-0\n"
    )
    assert format_gold([]) == ""


def test_gold_round_trip(tmp_path):
    path = tmp_path / "gold.tsv"
    records = _sample_records()
    write_gold(path, records)
    loaded = read_gold(path)
    assert loaded == records
    # Serialization is canonical: a second round trip is byte-identical.
    assert format_gold(loaded) == path.read_text(encoding="utf-8")


def test_format_gold_validates_links():
    pair = SentencePair(0, ("a",), ("b",))
    with pytest.raises(ValueError, match="out of range"):
        format_gold([(pair, AlignmentSet.from_links([(1, 0)]))])


def test_read_gold_errors(tmp_path):
    path = tmp_path / "gold.tsv"
    path.write_text("0\ta b\tx\n", encoding="utf-8")
    with pytest.raises(FormatError, match="gold line 1: expected 4 tab-separated fields, got 3"):
        read_gold(path)
    path.write_text("zero\ta\tx\t0-0\n", encoding="utf-8")
    with pytest.raises(FormatError, match="gold line 1: bad pair id 'zero'"):
        read_gold(path)
    path.write_text("0\ta\tx\t0-0\n0\tb\ty\t0-0\n", encoding="utf-8")
    with pytest.raises(FormatError, match="gold line 2: duplicate pair id 0"):
        read_gold(path)
    path.write_text("0\ta\tx\t0-1\n", encoding="utf-8")
    with pytest.raises(FormatError, match="gold line 1: target index 1 out of range"):
        read_gold(path)


def test_read_gold_skips_blank_lines(tmp_path):
    path = tmp_path / "gold.tsv"
    path.write_text("0\ta\tx\t0-0\n\n1\tb\ty\t\n", encoding="utf-8")
    records = read_gold(path)
    assert [pair.id for pair, _ in records] == [0, 1]
    assert records[1][1] == AlignmentSet()
