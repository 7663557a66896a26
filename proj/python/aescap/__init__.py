"""Aesthetic caption corpus toolkit: lexicon transfer, comment screening,
dataset assembly, caption metrics and the multi-attribute loss family."""

from ._aescap import (  # noqa: F401
    ClassifierModel,
    DataError,
    HeadBatch,
    Lexicon,
    LossBatch,
    PipelineConfig,
    __version__,
    attribute_loss,
    bleu4,
    bow_weight,
    build_lexicon,
    file_checksum,
    global_loss,
    gradient_check,
    normalize,
    object_loss,
    read_lexicons_csv,
    run_pipeline,
    sample_without_replacement,
    spice_lite,
    tokenize,
    total_loss,
    train_classifier,
)

__all__ = [
    "ClassifierModel",
    "DataError",
    "HeadBatch",
    "Lexicon",
    "LossBatch",
    "PipelineConfig",
    "__version__",
    "attribute_loss",
    "bleu4",
    "bow_weight",
    "build_lexicon",
    "file_checksum",
    "global_loss",
    "gradient_check",
    "normalize",
    "object_loss",
    "read_lexicons_csv",
    "run_pipeline",
    "sample_without_replacement",
    "spice_lite",
    "tokenize",
    "total_loss",
    "train_classifier",
]
