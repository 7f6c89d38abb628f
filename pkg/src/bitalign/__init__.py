"""Bitext word alignment toolkit.

Statistical (EM-trained) and similarity-matrix word aligners, a hybrid
length+dictionary sentence aligner, corpus cleanup heuristics, alignment
evaluation with visual diagnostics and a small HTTP service for building
gold-standard annotations.
"""

from .core import (
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
from .evaluation import EvalReport, GridDocument, ScalingResult, accuracy, evaluate, render_grid, scaling_experiment
from .sentences import (
    AlignedPairCandidate,
    Dictionary,
    Document,
    align_sentences,
    filter_pairs,
    pair_documents,
    segment_sentences,
)
from .similarity import (
    EmbeddingRecord,
    SimilarityMatrix,
    align_record,
    aggregate_to_words,
    cosine_matrix,
    extract_argmax,
    extract_itermax,
    extract_match,
    extract_softmax_threshold,
    read_embedding_records,
    write_embedding_records,
)
from .statistical import (
    NULL_TOKEN,
    TrainConfig,
    TranslationModel,
    load_model,
    save_model,
    symmetrize,
    train,
    viterbi_align,
)

__version__ = "0.1.0"

__all__ = [
    "AlignedPairCandidate",
    "AlignmentSet",
    "Corpus",
    "Dictionary",
    "Document",
    "EmbeddingRecord",
    "EvalReport",
    "FormatError",
    "GridDocument",
    "NULL_TOKEN",
    "ScalingResult",
    "SentencePair",
    "SimilarityMatrix",
    "TrainConfig",
    "TranslationModel",
    "accuracy",
    "aggregate_to_words",
    "align_record",
    "align_sentences",
    "cosine_matrix",
    "evaluate",
    "extract_argmax",
    "extract_itermax",
    "extract_match",
    "extract_softmax_threshold",
    "filter_pairs",
    "format_gold",
    "load_bitext",
    "load_model",
    "pair_documents",
    "parse_pharaoh",
    "read_embedding_records",
    "read_gold",
    "render_grid",
    "save_model",
    "scaling_experiment",
    "segment_sentences",
    "serialize_pharaoh",
    "symmetrize",
    "tokenize",
    "train",
    "viterbi_align",
    "write_embedding_records",
    "write_gold",
]
