"""Classifier head: one 100-unit relu layer into a sigmoid output."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .features import embed
from .text import Vocabulary, normalize, tokenize

HIDDEN_WIDTH = 100
DEFAULT_THRESHOLD = 0.5

# Scores are clamped into [floor, 1 - floor] so they stay strictly inside
# (0, 1) and cross-entropy terms remain finite at sigmoid saturation.
SCORE_FLOOR = 1e-15


class Label(str, Enum):
    CLICKBAIT = "clickbait"
    NON_CLICKBAIT = "non_clickbait"


@dataclass(frozen=True)
class Prediction:
    score: float
    label: Label


@dataclass(eq=False)
class ModelArtifact:
    """Deployable classifier: encoder parameters plus head weights.

    Weights are held as float32 (the serialized precision); the decision
    threshold is float64. Artifacts are immutable by convention: concurrent
    classification on a shared artifact needs no synchronization.
    """

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: float
    vocab: Vocabulary
    hash_seed: int
    feature_dim: int
    threshold: float = DEFAULT_THRESHOLD
    format_version: int = field(default=1)

    def __post_init__(self):
        self.w1 = np.ascontiguousarray(self.w1, dtype=np.float32)
        self.b1 = np.ascontiguousarray(self.b1, dtype=np.float32)
        self.w2 = np.ascontiguousarray(self.w2, dtype=np.float32)
        self.b2 = float(np.float32(self.b2))
        if self.feature_dim < 1:
            raise ValueError(f"feature_dim must be positive, got {self.feature_dim}")
        if self.w1.shape != (HIDDEN_WIDTH, self.feature_dim):
            raise ValueError(
                f"w1 must have shape ({HIDDEN_WIDTH}, {self.feature_dim}), got {self.w1.shape}"
            )
        if self.b1.shape != (HIDDEN_WIDTH,):
            raise ValueError(f"b1 must have shape ({HIDDEN_WIDTH},), got {self.b1.shape}")
        if self.w2.shape != (HIDDEN_WIDTH,):
            raise ValueError(f"w2 must have shape ({HIDDEN_WIDTH},), got {self.w2.shape}")
        for name, arr in (("w1", self.w1), ("b1", self.b1), ("w2", self.w2)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite values")
        if not math.isfinite(self.b2):
            raise ValueError("b2 is not finite")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must lie strictly in (0, 1), got {self.threshold}")
        if not 0 <= self.hash_seed < 1 << 64:
            raise ValueError(f"hash_seed must be a 64-bit unsigned value, got {self.hash_seed}")
        if not isinstance(self.vocab, Vocabulary):
            raise ValueError("vocab must be a Vocabulary")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModelArtifact):
            return NotImplemented
        return (
            self.w1.tobytes() == other.w1.tobytes()
            and self.b1.tobytes() == other.b1.tobytes()
            and self.w2.tobytes() == other.w2.tobytes()
            and np.float32(self.b2).tobytes() == np.float32(other.b2).tobytes()
            and self.vocab == other.vocab
            and self.hash_seed == other.hash_seed
            and self.feature_dim == other.feature_dim
            and self.threshold == other.threshold
            and self.format_version == other.format_version
        )


def score_from_logit(logit: float) -> float:
    """Numerically stable sigmoid, clamped strictly inside (0, 1)."""
    if logit >= 0:
        s = 1.0 / (1.0 + math.exp(-logit))
    else:
        e = math.exp(logit)
        s = e / (1.0 + e)
    return min(max(s, SCORE_FLOOR), 1.0 - SCORE_FLOOR)


def sigmoid_scores(logits: np.ndarray) -> np.ndarray:
    """Vectorized counterpart of score_from_logit."""
    out = np.empty_like(logits, dtype=np.float64)
    pos = logits >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-logits[pos]))
    e = np.exp(logits[~pos])
    out[~pos] = e / (1.0 + e)
    return np.clip(out, SCORE_FLOOR, 1.0 - SCORE_FLOOR)


def _check_input(model: ModelArtifact, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (model.feature_dim,):
        raise ValueError(f"input must have shape ({model.feature_dim},), got {x.shape}")
    return x


def forward(model: ModelArtifact, x: np.ndarray) -> float:
    """Score a feature vector: sigmoid(w2 . relu(W1 x + b1) + b2)."""
    x = _check_input(model, x)
    hidden = np.maximum(model.w1 @ x + model.b1, 0.0)
    return score_from_logit(float(model.w2 @ hidden + model.b2))


def classify(model: ModelArtifact, text: str) -> Prediction:
    """Run the full pipeline on raw text; clickbait iff score >= threshold."""
    tokens = tokenize(normalize(text), model.vocab)
    x = embed(tokens, model.hash_seed, model.feature_dim)
    score = forward(model, x)
    label = Label.CLICKBAIT if score >= model.threshold else Label.NON_CLICKBAIT
    return Prediction(score=score, label=label)


def bce_loss(score: float, target: float) -> float:
    """Binary cross-entropy of a clamped score against a target in [0, 1]."""
    return -(target * math.log(score) + (1.0 - target) * math.log(1.0 - score))


@dataclass(frozen=True)
class Gradients:
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: float


def gradients(model: ModelArtifact, x: np.ndarray, target: float) -> Gradients:
    """Cross-entropy gradients for one example.

    The target is nominally a {0, 1} class label; any value in [0, 1] is
    accepted so soft targets and the vanishing-gradient identity at
    score == target stay expressible. The relu subgradient at 0 is 0.
    """
    x = _check_input(model, x)
    if not 0.0 <= target <= 1.0:
        raise ValueError(f"target must lie in [0, 1], got {target}")
    z1 = model.w1 @ x + model.b1
    hidden = np.maximum(z1, 0.0)
    score = score_from_logit(float(model.w2 @ hidden + model.b2))
    delta = score - target
    dz1 = (delta * model.w2.astype(np.float64)) * (z1 > 0.0)
    return Gradients(
        w1=np.outer(dz1, x),
        b1=dz1,
        w2=delta * hidden,
        b2=delta,
    )
