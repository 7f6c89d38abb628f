"""Encoder hidden-state extraction for word-alignment pipelines."""

from .extract import (
    MODEL_ALIASES,
    Extractor,
    ExtractorConfig,
    read_token_files,
    resolve_model,
    write_records,
)

__all__ = [
    "MODEL_ALIASES",
    "Extractor",
    "ExtractorConfig",
    "read_token_files",
    "resolve_model",
    "write_records",
]

__version__ = "0.1.0"
