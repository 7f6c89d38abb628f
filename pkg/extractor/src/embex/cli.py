"""Command-line entry point: token files in, embedding records out."""

from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .extract import Extractor, ExtractorConfig, write_records


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embex",
        description="Extract per-subword encoder states from pre-tokenized, "
        "line-parallel sentence files as JSON Lines.",
    )
    parser.add_argument("--version", action="version", version=f"embex {__version__}")
    parser.add_argument("--src", required=True, help="source-side token file")
    parser.add_argument("--tgt", required=True, help="target-side token file")
    parser.add_argument("--out", required=True, help="output JSONL path")
    parser.add_argument(
        "--model",
        default="multilingual-bert",
        help="encoder: multilingual-bert, xlm-roberta, or any model path/id",
    )
    parser.add_argument("--layer", type=int, default=8,
                        help="hidden layer to extract (0 = embedding output)")
    parser.add_argument("--batch", type=int, default=16, help="sentences per batch")
    parser.add_argument("--device", default="cpu", help="torch device")
    parser.add_argument("--max-subwords", type=int, default=384,
                        help="skip sentences longer than this many subwords")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = ExtractorConfig(
            model=args.model,
            layer=args.layer,
            batch_size=args.batch,
            device=args.device,
            max_subwords=args.max_subwords,
        )
        extractor = Extractor(config)
        with open(args.out, "w", encoding="utf-8") as handle:
            written = write_records(
                handle, extractor.extract_files(args.src, args.tgt)
            )
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {written} records to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
