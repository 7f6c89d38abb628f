import random

import pytest

from bitalign import (
    AlignmentSet,
    Corpus,
    EvalReport,
    SentencePair,
    TrainConfig,
    accuracy,
    evaluate,
    render_grid,
    scaling_experiment,
)
from bitalign.evaluation import ScalingEntry, ScalingResult

from conftest import make_bijective_corpus


def links(*pairs):
    return AlignmentSet.from_links(pairs)


# -- independent scoring route ------------------------------------------------
# Count per link with explicit membership tests, compute F1 from precision
# and recall, and use that the error rate equals 1 - F1 when every gold
# link is both Sure and Possible.


def reference_scores(hyps, golds):
    hyp_total = gold_total = hits = 0
    for pid, gold in golds.items():
        for link in hyps[pid].links:
            hyp_total += 1
            if link in gold.links:
                hits += 1
        gold_total += len(gold.links)
    precision = hits / hyp_total if hyp_total else 1.0
    recall = hits / gold_total
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall > 0
        else 0.0
    )
    return precision, recall, 1.0 - f1


def random_link_sets(rng, n_pairs, grid=4, allow_empty_gold=False):
    hyps, golds = {}, {}
    cells = [(i, j) for i in range(grid) for j in range(grid)]
    for pid in range(n_pairs):
        hyps[pid] = links(*rng.sample(cells, rng.randint(0, 6)))
        lo = 0 if allow_empty_gold else 1
        golds[pid] = links(*rng.sample(cells, rng.randint(lo, 6)))
    return hyps, golds


# -- evaluate -------------------------------------------------------------------


def test_evaluate_hand_case():
    hyps = {0: links((0, 0), (1, 1), (2, 2)), 1: links((0, 1))}
    golds = {0: links((0, 0), (1, 1)), 1: links((0, 0), (0, 1))}
    report = evaluate(hyps, golds)
    assert report.hyp_count == 4 and report.gold_count == 4
    assert report.sure_hits == 3
    assert report.precision == pytest.approx(3 / 4)
    assert report.recall == pytest.approx(3 / 4)
    assert report.aer == pytest.approx(1 - 6 / 8)


def test_evaluate_empty_hypothesis_has_full_precision():
    report = evaluate({0: links()}, {0: links((0, 0))})
    assert report.precision == 1.0
    assert report.recall == 0.0
    assert report.aer == pytest.approx(1.0)


def test_evaluate_perfect_alignment():
    gold = {0: links((0, 0), (1, 2))}
    report = evaluate(gold, gold)
    assert report.aer == 0.0 and report.precision == 1.0 and report.recall == 1.0


def test_evaluate_id_mismatch():
    with pytest.raises(ValueError, match=r"ids missing from hypothesis: \[1\]"):
        evaluate({0: links()}, {0: links((0, 0)), 1: links((0, 0))})
    with pytest.raises(ValueError, match=r"ids not in gold: \[2\]"):
        evaluate({0: links(), 2: links()}, {0: links((0, 0))})


def test_evaluate_empty_gold_is_error():
    with pytest.raises(ValueError, match="no links"):
        evaluate({0: links((0, 0))}, {0: links()})


@pytest.mark.parametrize("seed", range(8))
def test_evaluate_matches_reference_route(seed):
    rng = random.Random(seed)
    hyps, golds = random_link_sets(rng, 25)
    report = evaluate(hyps, golds)
    precision, recall, aer = reference_scores(hyps, golds)
    assert report.precision == pytest.approx(precision, abs=1e-12)
    assert report.recall == pytest.approx(recall, abs=1e-12)
    # Micro-averaged F1 equals the harmonic-mean form only when both are
    # computed from pooled counts; the identity holds to float precision.
    assert report.aer == pytest.approx(aer, abs=1e-12)


def test_eval_report_bounds():
    with pytest.raises(ValueError, match="precision"):
        EvalReport(1.5, 0.5, 0.5, 1, 1, 1, 1)


# -- accuracy ---------------------------------------------------------------------


def test_accuracy_is_f1_of_the_pair():
    gold = links((0, 0), (1, 1))
    assert accuracy(gold, gold) == 1.0
    assert accuracy(links((0, 0)), gold) == pytest.approx(2 / 3)
    assert accuracy(links(), gold) == 0.0
    with pytest.raises(ValueError, match="no links"):
        accuracy(gold, links())


# -- scaling ------------------------------------------------------------------------


def test_scaling_result_sizes_must_be_non_decreasing():
    report = EvalReport(1.0, 1.0, 0.0, 1, 1, 1, 1)
    entries = (
        ScalingEntry(10, report, 0.1),
        ScalingEntry(10, report, 0.1),
        ScalingEntry(20, report, 0.2),
    )
    assert len(ScalingResult(entries).entries) == 3
    with pytest.raises(ValueError, match="non-decreasing"):
        ScalingResult((ScalingEntry(20, report, 0.1), ScalingEntry(10, report, 0.1)))


def test_scaling_result_to_tsv():
    report = EvalReport(0.5, 0.25, 0.375, 4, 8, 2, 2)
    result = ScalingResult((ScalingEntry(100, report, 1.5),))
    assert result.to_tsv() == (
        "size\tprecision\trecall\taer\tseconds\n"
        "100\t0.500000\t0.250000\t0.375000\t1.500\n"
    )


def _scaling_inputs(seed=0, gold_pairs=5, corpus_pairs=40):
    rng = random.Random(seed)
    corpus, golds = make_bijective_corpus(rng, gold_pairs + corpus_pairs, vocab=30)
    gold = [(corpus[k], golds[k]) for k in range(gold_pairs)]
    rest = Corpus(tuple(corpus[gold_pairs + k] for k in range(corpus_pairs)))
    return gold, rest


def test_scaling_experiment_runs_and_improves():
    gold, corpus = _scaling_inputs()
    result = scaling_experiment(gold, corpus, [0, 40], TrainConfig(iterations=3))
    assert [e.size for e in result.entries] == [0, 40]
    assert all(e.seconds >= 0.0 for e in result.entries)
    assert result.entries[1].report.aer <= result.entries[0].report.aer + 1e-9


def test_scaling_experiment_is_deterministic_across_repeats():
    gold, corpus = _scaling_inputs(seed=3)
    result = scaling_experiment(gold, corpus, [20, 20], TrainConfig(iterations=2))
    first, second = result.entries
    assert first.report == second.report


def test_scaling_experiment_accepts_arbitrary_gold_ids():
    gold, corpus = _scaling_inputs(seed=5)
    shifted = [
        (SentencePair(pair.id + 700, pair.src_tokens, pair.tgt_tokens), al)
        for pair, al in gold
    ]
    result = scaling_experiment(shifted, corpus, [10], TrainConfig(iterations=2))
    assert len(result.entries) == 1


def test_scaling_experiment_size_bounds():
    gold, corpus = _scaling_inputs()
    with pytest.raises(ValueError, match="outside corpus"):
        scaling_experiment(gold, corpus, [len(corpus) + 1])
    with pytest.raises(ValueError, match="outside corpus"):
        scaling_experiment(gold, corpus, [-1])
    with pytest.raises(ValueError, match="non-empty"):
        scaling_experiment([], corpus, [1])


def test_scaling_experiment_wraps_trainer_failures():
    gold, corpus = _scaling_inputs()

    def broken_trainer(c, cfg):
        raise ValueError("boom")

    with pytest.raises(RuntimeError, match="training failed at dataset size 10: boom"):
        scaling_experiment(gold, corpus, [10], trainer=broken_trainer)


# -- grids --------------------------------------------------------------------------


def test_render_grid_text_golden_minimal():
    pair = SentencePair(7, ("a",), ("b",))
    doc = render_grid(pair, links((0, 0)), {"m1": links((0, 0))})
    assert doc.text == (
        "pair 7\n"
        "source tokens: a\n"
        "target tokens: b\n"
        "legend: #=gold x=m1\n"
        "    j0\n"
        "i0  #x\n"
    )


def test_render_grid_text_golden_two_candidates():
    pair = SentencePair(2, ("Der", "Hund"), ("Il", "chaun", "."))
    doc = render_grid(
        pair,
        links((0, 0), (1, 1)),
        {"m1": links((0, 0), (1, 2)), "m2": links((1, 1))},
    )
    assert doc.text == (
        "pair 2\n"
        "source tokens: Der Hund\n"
        "target tokens: Il chaun .\n"
        "legend: #=gold x=m1 o=m2\n"
        "    j0  j1  j2\n"
        "i0  #x  .   .\n"
        "i1  .   #o  x\n"
    )


def test_render_grid_html_structure():
    pair = SentencePair(0, ("<b>",), ("&x",))
    doc = render_grid(pair, links((0, 0)), {"c1": links((0, 0))})
    html = doc.html
    assert html.startswith("<!DOCTYPE html>")
    assert "&lt;b&gt;" in html and "&amp;x" in html
    assert "<b>" not in html.replace("<body>", "")
    assert 'class="gold"' in html
    assert '<span class="box">' in html
    assert "<title>pair 0</title>" in html


def test_render_grid_second_candidate_uses_dot():
    pair = SentencePair(0, ("a",), ("b",))
    doc = render_grid(pair, links(), {"c1": links(), "c2": links((0, 0))})
    assert '<span class="dot">' in doc.html
    assert '<span class="box">' not in doc.html


def test_render_grid_is_deterministic():
    pair = SentencePair(1, ("x", "y"), ("u", "v"))
    a = render_grid(pair, links((0, 0)), {"m": links((1, 1))})
    b = render_grid(pair, links((0, 0)), {"m": links((1, 1))})
    assert a.html == b.html and a.text == b.text


def test_render_grid_rejects_more_than_two_candidates():
    pair = SentencePair(0, ("a",), ("b",))
    with pytest.raises(ValueError, match="at most 2 candidate sets"):
        render_grid(pair, links(), {"a": links(), "b": links(), "c": links()})


def test_render_grid_validates_link_bounds():
    pair = SentencePair(0, ("a",), ("b",))
    with pytest.raises(ValueError, match="out of range"):
        render_grid(pair, links((1, 0)))
    with pytest.raises(ValueError, match="out of range"):
        render_grid(pair, links(), {"c": links((0, 5))})
