"""Clickbait headline detector: subword classifier, metrics, and serving stack."""

from .core.model import Label, ModelArtifact, Prediction, classify, forward
from .core.serialize import load_model, save_model
from .core.text import Vocabulary, normalize, tokenize
from .core.train import TrainConfig, train

__version__ = "0.1.0"

__all__ = [
    "Label",
    "ModelArtifact",
    "Prediction",
    "TrainConfig",
    "Vocabulary",
    "classify",
    "forward",
    "load_model",
    "normalize",
    "save_model",
    "tokenize",
    "train",
    "__version__",
]
