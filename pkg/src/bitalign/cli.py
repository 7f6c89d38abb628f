"""Command-line entry points for the full pipeline.

Every stage is a subcommand reading and writing plain files, so the whole
path from raw documents to evaluated alignments can be driven from a
shell: segment -> pair-docs -> sentalign -> filter -> train -> align ->
evaluate, with simalign as the embedding-based alternative to
train/align, scale and grid for analysis, and annotate-serve /
export-gold around the manual gold standard.

Exit codes: 0 on success, 1 for data or domain errors (reported on
stderr as ``error: ...``), 2 for command-line usage errors. Defaults for
numeric settings can also come from a ``--config`` file of ``key=value``
lines; explicit flags always win.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .annotation import AnnotationStore
from .core import (
    AlignmentSet,
    Corpus,
    FormatError,
    format_gold,
    load_bitext,
    parse_pharaoh,
    read_gold,
    serialize_pharaoh,
)
from .evaluation import evaluate, render_grid, scaling_experiment
from .sentences import (
    Dictionary,
    align_sentences,
    filter_pairs_report,
    load_abbreviations,
    pair_documents,
    read_documents,
    segment_sentences,
)
from .similarity import (
    DEFAULT_LAYER,
    LEVELS,
    METHODS,
    align_record,
    read_embedding_records,
)
from .statistical import (
    SYMMETRIZATION_HEURISTICS,
    VARIANTS,
    TrainConfig,
    load_model,
    save_model,
    symmetrize,
    train,
    viterbi_align,
)

__all__ = ["main"]

# Keys a --config file may set, with the type used to parse each value.
_CONFIG_TYPES: dict[str, type] = {
    "variant": str,
    "iterations": int,
    "tension": float,
    "p0": float,
    "min_prob": float,
    "heuristic": str,
    "max_ratio": float,
    "min_tokens": int,
    "w_len": float,
    "w_dict": float,
    "variance": float,
    "skip_penalty": float,
    "method": str,
    "level": str,
    "max_iters": int,
    "alpha": float,
    "threshold": float,
    "host": str,
    "port": int,
}


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _announce(command: str, **settings: object) -> None:
    rendered = " ".join(f"{key}={value}" for key, value in settings.items())
    _log(f"# bitalign {__version__} {command}" + (f" {rendered}" if rendered else ""))


def _write_output(path: str | None, content: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(content)
    else:
        Path(path).write_text(content, encoding="utf-8")


def _read_config(path: str) -> dict[str, object]:
    values: dict[str, object] = {}
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise FormatError(f"config line {lineno}: expected key=value, got {line!r}")
        key, _, raw = stripped.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in _CONFIG_TYPES:
            raise FormatError(f"config line {lineno}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_TYPES[key](raw)
        except ValueError as exc:
            raise FormatError(f"config line {lineno}: {exc}") from exc
    return values


def _train_config(args: argparse.Namespace) -> TrainConfig:
    return TrainConfig(
        iterations=args.iterations,
        variant=args.variant,
        tension=args.tension,
        p0=args.p0,
        min_prob=args.min_prob,
    )


def _read_hypothesis_lines(path: str, expected: int) -> list[AlignmentSet]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if len(lines) != expected:
        raise FormatError(
            f"hypothesis file has {len(lines)} lines but the gold file has"
            f" {expected} records"
        )
    return [parse_pharaoh(line) for line in lines]


# -- subcommand implementations -------------------------------------------


def _cmd_segment(args: argparse.Namespace) -> int:
    abbrevs = load_abbreviations(args.abbrev) if args.abbrev else frozenset()
    docs = read_documents(args.docs)
    _announce("segment", docs=len(docs), abbreviations=len(abbrevs))
    out_lines = []
    total = 0
    for doc in docs:
        sentences = segment_sentences(doc, abbrevs)
        total += len(sentences)
        out_lines.append(
            json.dumps(
                {"doc_key": doc.doc_key, "lang": doc.lang, "sentences": sentences},
                ensure_ascii=False,
            )
        )
    _write_output(args.out, "".join(line + "\n" for line in out_lines))
    _log(f"segmented {len(docs)} documents into {total} sentences")
    return 0


def _cmd_pair_docs(args: argparse.Namespace) -> int:
    docs = read_documents(args.docs)
    pairs, unmatched = pair_documents(docs, args.src_lang, args.tgt_lang)
    _announce("pair-docs", src_lang=args.src_lang, tgt_lang=args.tgt_lang)
    out_lines = []
    for src_doc, tgt_doc in pairs:
        out_lines.append(
            json.dumps(
                {
                    "doc_key": src_doc.doc_key,
                    "src_paragraphs": list(src_doc.paragraphs),
                    "tgt_paragraphs": list(tgt_doc.paragraphs),
                },
                ensure_ascii=False,
            )
        )
    _write_output(args.out, "".join(line + "\n" for line in out_lines))
    for doc in unmatched:
        _log(f"unmatched document: doc_key={doc.doc_key!r} lang={doc.lang!r}")
    _log(f"paired {len(pairs)} documents ({len(unmatched)} unmatched)")
    return 0


def _cmd_sentalign(args: argparse.Namespace) -> int:
    src_sentences = Path(args.src).read_text(encoding="utf-8").splitlines()
    tgt_sentences = Path(args.tgt).read_text(encoding="utf-8").splitlines()
    dictionary = Dictionary.load(args.dict) if args.dict else None
    _announce(
        "sentalign",
        src=len(src_sentences),
        tgt=len(tgt_sentences),
        dictionary=len(dictionary) if dictionary else 0,
    )
    beads = align_sentences(
        src_sentences,
        tgt_sentences,
        dictionary,
        w_len=args.w_len,
        w_dict=args.w_dict,
        variance=args.variance,
        skip_penalty=args.skip_penalty,
    )
    histogram: dict[str, int] = {}
    out_lines = []
    for bead in beads:
        histogram[bead.bead_type] = histogram.get(bead.bead_type, 0) + 1
        if bead.src_size and bead.tgt_size:
            src_text = " ".join(src_sentences[bead.src_span[0] : bead.src_span[1]])
            tgt_text = " ".join(tgt_sentences[bead.tgt_span[0] : bead.tgt_span[1]])
            out_lines.append(f"{src_text}\t{tgt_text}")
    _write_output(args.out, "".join(line + "\n" for line in out_lines))
    counts = " ".join(f"{kind}={histogram[kind]}" for kind in sorted(histogram))
    _log(f"beads: {counts}")
    return 0


def _cmd_filter(args: argparse.Namespace) -> int:
    pairs = []
    for lineno, line in enumerate(
        Path(args.input).read_text(encoding="utf-8").splitlines(), start=1
    ):
        fields = line.split("\t")
        if len(fields) != 2:
            raise FormatError(
                f"line {lineno}: expected 2 tab-separated fields, got {len(fields)}"
            )
        pairs.append((fields[0], fields[1]))
    _announce("filter", max_ratio=args.max_ratio, min_tokens=args.min_tokens)
    kept, dropped = filter_pairs_report(
        pairs, max_ratio=args.max_ratio, min_tokens=args.min_tokens
    )
    _write_output(args.out, "".join(f"{src}\t{tgt}\n" for src, tgt in kept))
    if args.report:
        report_lines = [
            f"{idx + 1}\t{rule}\t{src}\t{tgt}\n" for idx, src, tgt, rule in dropped
        ]
        Path(args.report).write_text("".join(report_lines), encoding="utf-8")
    _log(f"kept {len(kept)} of {len(pairs)} pairs (dropped {len(dropped)})")
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    corpus = load_bitext(args.src, args.tgt)
    config = _train_config(args)
    _announce(
        "train",
        pairs=len(corpus),
        variant=config.variant,
        iterations=config.iterations,
        tension=config.tension,
        p0=config.p0,
    )
    model = train(corpus, config)
    for k, ll in enumerate(model.log_likelihoods, start=1):
        _log(f"iteration {k}: log-likelihood {ll:.6f}")
    save_model(model, args.model)
    _log(f"wrote model with {len(model.ttable)} source rows to {args.model}")
    return 0


def _cmd_align(args: argparse.Namespace) -> int:
    corpus = load_bitext(args.src, args.tgt)
    model = load_model(args.model)
    reverse_model = load_model(args.reverse_model) if args.reverse_model else None
    _announce(
        "align",
        pairs=len(corpus),
        symmetrized=reverse_model is not None,
        heuristic=args.heuristic if reverse_model is not None else "none",
    )
    out_lines = []
    for pair in corpus:
        forward = viterbi_align(model, pair)
        if reverse_model is None:
            result = forward
        else:
            flipped = pair.__class__(pair.id, pair.tgt_tokens, pair.src_tokens)
            reverse = viterbi_align(reverse_model, flipped).transpose()
            result = symmetrize(forward, reverse, args.heuristic)
        out_lines.append(serialize_pharaoh(result))
    _write_output(args.out, "".join(line + "\n" for line in out_lines))
    _log(f"aligned {len(corpus)} pairs")
    return 0


def _cmd_simalign(args: argparse.Namespace) -> int:
    _announce("simalign", method=args.method, level=args.level)
    out_lines: list[str] = []
    count = 0
    for record in read_embedding_records(args.embeddings):
        if record.id < len(out_lines):
            raise FormatError(
                f"record ids must be strictly increasing, got {record.id} after"
                f" {len(out_lines) - 1}"
            )
        out_lines.extend([""] * (record.id - len(out_lines)))
        links = align_record(
            record,
            method=args.method,
            level=args.level,
            max_iters=args.max_iters,
            alpha=args.alpha,
            threshold=args.threshold,
        )
        out_lines.append(serialize_pharaoh(links))
        count += 1
    _write_output(args.out, "".join(line + "\n" for line in out_lines))
    _log(f"aligned {count} embedding records")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    gold_records = read_gold(args.gold)
    hyp_links = _read_hypothesis_lines(args.hyp, len(gold_records))
    hypotheses = {}
    gold = {}
    for (pair, gold_set), hyp_set in zip(gold_records, hyp_links):
        hyp_set.validate_for(pair)
        hypotheses[pair.id] = hyp_set
        gold[pair.id] = gold_set
    _announce("evaluate", pairs=len(gold_records))
    report = evaluate(hypotheses, gold)
    rows = [
        ("precision", f"{report.precision:.6f}"),
        ("recall", f"{report.recall:.6f}"),
        ("aer", f"{report.aer:.6f}"),
        ("hyp_links", str(report.hyp_count)),
        ("gold_links", str(report.gold_count)),
        ("sure_hits", str(report.sure_hits)),
    ]
    for key, value in rows[:3]:
        print(f"{key}\t{value}")
    if args.out:
        Path(args.out).write_text(
            "".join(f"{key}\t{value}\n" for key, value in rows), encoding="utf-8"
        )
    return 0


def _cmd_scale(args: argparse.Namespace) -> int:
    gold_pairs = read_gold(args.gold)
    corpus = load_bitext(args.src, args.tgt)
    config = _train_config(args)
    _announce(
        "scale",
        gold=len(gold_pairs),
        corpus=len(corpus),
        sizes=",".join(str(s) for s in args.sizes),
        variant=config.variant,
    )
    result = scaling_experiment(
        gold_pairs, corpus, args.sizes, config, heuristic=args.heuristic
    )
    tsv = result.to_tsv()
    sys.stdout.write(tsv)
    if args.out:
        Path(args.out).write_text(tsv, encoding="utf-8")
    return 0


def _cmd_grid(args: argparse.Namespace) -> int:
    gold_records = read_gold(args.gold)
    index = next(
        (k for k, (pair, _) in enumerate(gold_records) if pair.id == args.id), None
    )
    if index is None:
        raise ValueError(f"no gold record with id {args.id}")
    pair, gold_set = gold_records[index]

    candidates: dict[str, AlignmentSet] = {}
    for spec_text in args.hyp or []:
        name, sep, path = spec_text.partition("=")
        if not sep or not name or not path:
            raise ValueError(f"--hyp expects NAME=FILE, got {spec_text!r}")
        links = _read_hypothesis_lines(path, len(gold_records))[index]
        links.validate_for(pair)
        candidates[name] = links
    _announce("grid", id=args.id, candidates=len(candidates))
    doc = render_grid(pair, gold_set, candidates)
    if args.out_html:
        Path(args.out_html).write_text(doc.html, encoding="utf-8")
    if args.out_text:
        Path(args.out_text).write_text(doc.text, encoding="utf-8")
    if not args.out_html and not args.out_text:
        sys.stdout.write(doc.text)
    return 0


def _cmd_annotate_serve(args: argparse.Namespace) -> int:
    corpus = load_bitext(args.src, args.tgt)
    store = AnnotationStore(corpus, args.dir)
    _announce("annotate-serve", pairs=len(corpus), dir=args.dir, port=args.port)

    from .service import create_app

    app = create_app(store, ui_dir=args.ui)
    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_export_gold(args: argparse.Namespace) -> int:
    records = read_gold(Path(args.dir) / "gold.tsv")
    _announce("export-gold", records=len(records))
    _write_output(args.out, format_gold(records))
    return 0


# -- parser ----------------------------------------------------------------


def _add_train_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--variant", choices=VARIANTS, default="model1")
    parser.add_argument("--iterations", type=int, default=5)
    parser.add_argument("--tension", type=float, default=4.0)
    parser.add_argument("--p0", type=float, default=0.08)
    parser.add_argument("--min-prob", dest="min_prob", type=float, default=1e-12)


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="bitalign",
        description="Bitext sentence and word alignment pipeline.",
    )
    parser.add_argument("--version", action="version", version=f"bitalign {__version__}")
    parser.add_argument(
        "--config",
        default=None,
        help="key=value file supplying defaults for numeric settings",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}

    def sub(name: str, help_text: str, func) -> argparse.ArgumentParser:
        p = subparsers.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        registry[name] = p
        return p

    p = sub("segment", "split documents into sentences", _cmd_segment)
    p.add_argument("--docs", required=True, help="documents as JSONL")
    p.add_argument("--abbrev", default=None, help="abbreviation list, one per line")
    p.add_argument("--out", default=None, help="output JSONL (default stdout)")

    p = sub("pair-docs", "pair documents sharing a key across languages", _cmd_pair_docs)
    p.add_argument("--docs", required=True, help="documents as JSONL")
    p.add_argument("--src-lang", required=True)
    p.add_argument("--tgt-lang", required=True)
    p.add_argument("--out", default=None, help="output JSONL (default stdout)")

    p = sub("sentalign", "align sentence lists into a parallel corpus", _cmd_sentalign)
    p.add_argument("--src", required=True, help="source sentences, one per line")
    p.add_argument("--tgt", required=True, help="target sentences, one per line")
    p.add_argument("--dict", default=None, help="bilingual dictionary TSV")
    p.add_argument("--w-len", dest="w_len", type=float, default=1.0)
    p.add_argument("--w-dict", dest="w_dict", type=float, default=2.0)
    p.add_argument("--variance", type=float, default=6.8)
    p.add_argument("--skip-penalty", dest="skip_penalty", type=float, default=-0.5)
    p.add_argument("--out", default=None, help="output TSV (default stdout)")

    p = sub("filter", "drop noisy pairs from a parallel TSV", _cmd_filter)
    p.add_argument("--in", dest="input", required=True, help="input TSV (src, tgt)")
    p.add_argument("--max-ratio", dest="max_ratio", type=float, default=3.0)
    p.add_argument("--min-tokens", dest="min_tokens", type=int, default=2)
    p.add_argument("--report", default=None, help="write dropped rows here")
    p.add_argument("--out", default=None, help="kept pairs TSV (default stdout)")

    p = sub("train", "train a translation table with EM", _cmd_train)
    p.add_argument("--src", required=True, help="tokenized source, one sentence per line")
    p.add_argument("--tgt", required=True, help="tokenized target, one sentence per line")
    p.add_argument("--model", required=True, help="output model path")
    _add_train_flags(p)

    p = sub("align", "word-align a corpus with a trained model", _cmd_align)
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--model", required=True, help="source-to-target model")
    p.add_argument(
        "--reverse-model",
        dest="reverse_model",
        default=None,
        help="target-to-source model; enables symmetrization",
    )
    p.add_argument(
        "--heuristic", choices=SYMMETRIZATION_HEURISTICS, default="grow-diag-final-and"
    )
    p.add_argument("--out", default=None, help="alignments, one line per pair")

    p = sub("simalign", "align from precomputed embeddings", _cmd_simalign)
    p.add_argument("--embeddings", required=True, help="embedding records JSONL")
    p.add_argument("--method", choices=METHODS, default="itermax")
    p.add_argument("--level", choices=LEVELS, default="subword")
    p.add_argument("--max-iters", dest="max_iters", type=int, default=2)
    p.add_argument("--alpha", type=float, default=0.9)
    p.add_argument("--threshold", type=float, default=0.001)
    p.add_argument("--out", default=None, help="alignments, line index = record id")

    p = sub("evaluate", "score hypothesis alignments against gold", _cmd_evaluate)
    p.add_argument("--hyp", required=True, help="one alignment line per gold record")
    p.add_argument("--gold", required=True, help="gold TSV")
    p.add_argument("--out", default=None, help="also write the full report TSV here")

    p = sub("scale", "alignment quality as training data grows", _cmd_scale)
    p.add_argument("--gold", required=True, help="gold TSV")
    p.add_argument("--src", required=True, help="training corpus source lines")
    p.add_argument("--tgt", required=True, help="training corpus target lines")
    p.add_argument(
        "--sizes", required=True, type=_int_list, help="comma-separated training sizes"
    )
    p.add_argument(
        "--heuristic", choices=SYMMETRIZATION_HEURISTICS, default="grow-diag-final-and"
    )
    p.add_argument("--out", default=None, help="also write the TSV here")
    _add_train_flags(p)

    p = sub("grid", "render one pair's alignment grid", _cmd_grid)
    p.add_argument("--gold", required=True, help="gold TSV")
    p.add_argument("--id", type=int, required=True, help="pair id to render")
    p.add_argument(
        "--hyp",
        action="append",
        metavar="NAME=FILE",
        help="candidate alignments to overlay (repeatable, at most twice)",
    )
    p.add_argument("--out-html", dest="out_html", default=None)
    p.add_argument("--out-text", dest="out_text", default=None)

    p = sub("annotate-serve", "serve the annotation API", _cmd_annotate_serve)
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--dir", required=True, help="annotation state directory")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui", default=None, help="static UI directory to mount at /")

    p = sub("export-gold", "print the finished gold standard", _cmd_export_gold)
    p.add_argument("--dir", required=True, help="annotation state directory")
    p.add_argument("--out", default=None, help="output TSV (default stdout)")

    return parser, registry


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, registry = build_parser()

    try:
        config_path = None
        for k, arg in enumerate(argv):
            if arg == "--config" and k + 1 < len(argv):
                config_path = argv[k + 1]
            elif arg.startswith("--config="):
                config_path = arg.split("=", 1)[1]
        if config_path is not None:
            overrides = _read_config(config_path)
            for subparser in registry.values():
                subparser.set_defaults(**overrides)

        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else 2

        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
