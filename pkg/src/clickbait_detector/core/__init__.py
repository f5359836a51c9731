"""Deterministic text-to-score pipeline: normalize, tokenize, embed, classify."""

from .features import DEFAULT_FEATURE_DIM, DEFAULT_HASH_SEED, embed, feature_index, fnv1a_64
from .model import (
    DEFAULT_THRESHOLD,
    HIDDEN_WIDTH,
    Gradients,
    Label,
    ModelArtifact,
    Prediction,
    bce_loss,
    classify,
    forward,
    gradients,
)
from .serialize import (
    BadMagicError,
    ModelFormatError,
    TruncatedFileError,
    UnsupportedVersionError,
    load_model,
    save_model,
)
from .text import (
    DEFAULT_MAX_SEQ_LEN,
    SPECIAL_TOKENS,
    TokenSequence,
    Vocabulary,
    normalize,
    tokenize,
)
from .train import (
    DatasetError,
    InvalidTrainingSetError,
    TrainConfig,
    load_training_file,
    mean_loss,
    train,
)

__all__ = [
    "DEFAULT_FEATURE_DIM",
    "DEFAULT_HASH_SEED",
    "DEFAULT_MAX_SEQ_LEN",
    "DEFAULT_THRESHOLD",
    "HIDDEN_WIDTH",
    "SPECIAL_TOKENS",
    "BadMagicError",
    "DatasetError",
    "Gradients",
    "InvalidTrainingSetError",
    "Label",
    "ModelArtifact",
    "ModelFormatError",
    "Prediction",
    "TokenSequence",
    "TrainConfig",
    "TruncatedFileError",
    "UnsupportedVersionError",
    "Vocabulary",
    "bce_loss",
    "classify",
    "embed",
    "feature_index",
    "fnv1a_64",
    "forward",
    "gradients",
    "load_model",
    "load_training_file",
    "mean_loss",
    "normalize",
    "save_model",
    "tokenize",
    "train",
]
