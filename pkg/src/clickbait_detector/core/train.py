"""Mini-batch gradient-descent trainer for the classifier head."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .features import DEFAULT_FEATURE_DIM, DEFAULT_HASH_SEED, embed
from .model import (
    DEFAULT_THRESHOLD,
    HIDDEN_WIDTH,
    ModelArtifact,
    bce_loss,
    classify,
    sigmoid_scores,
)
from .text import Vocabulary, normalize, tokenize

INIT_SCALE = 0.05

LabeledPair = tuple[str, int]


class InvalidTrainingSetError(ValueError):
    """Training data is empty or single-class."""


class DatasetError(ValueError):
    """Training data file is malformed."""


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 30
    learning_rate: float = 0.5
    batch_size: int = 16
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be positive, got {self.epochs}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be positive, got {self.batch_size}")


def _encode(texts: Sequence[str], vocab: Vocabulary, hash_seed: int, feature_dim: int) -> np.ndarray:
    rows = [embed(tokenize(normalize(t), vocab), hash_seed, feature_dim) for t in texts]
    return np.stack(rows) if rows else np.zeros((0, feature_dim))


def train(
    data: Sequence[LabeledPair],
    config: TrainConfig,
    vocab: Vocabulary,
    *,
    hash_seed: int = DEFAULT_HASH_SEED,
    feature_dim: int = DEFAULT_FEATURE_DIM,
    threshold: float = DEFAULT_THRESHOLD,
) -> ModelArtifact:
    """Fit the head by mini-batch gradient descent on binary cross-entropy.

    Deterministic for a fixed data order and seed: weight init and the
    per-epoch shuffle both draw from one seeded generator.
    """
    if not data:
        raise InvalidTrainingSetError("training data is empty")
    labels = [label for _, label in data]
    if any(label not in (0, 1) for label in labels):
        raise InvalidTrainingSetError("labels must be 0 or 1")
    if len(set(labels)) < 2:
        raise InvalidTrainingSetError("training data must contain both classes")

    x = _encode([text for text, _ in data], vocab, hash_seed, feature_dim)
    y = np.asarray(labels, dtype=np.float64)
    n = len(data)

    rng = np.random.default_rng(config.seed)
    w1 = rng.uniform(-INIT_SCALE, INIT_SCALE, size=(HIDDEN_WIDTH, feature_dim))
    w2 = rng.uniform(-INIT_SCALE, INIT_SCALE, size=HIDDEN_WIDTH)
    b1 = np.zeros(HIDDEN_WIDTH)
    b2 = 0.0
    lr = config.learning_rate

    for _ in range(config.epochs):
        order = rng.permutation(n)
        for start in range(0, n, config.batch_size):
            idx = order[start : start + config.batch_size]
            xb = x[idx]
            yb = y[idx]
            z1 = xb @ w1.T + b1
            hidden = np.maximum(z1, 0.0)
            scores = sigmoid_scores(hidden @ w2 + b2)
            delta = (scores - yb) / len(idx)
            dz1 = (delta[:, None] * w2[None, :]) * (z1 > 0.0)
            w2 -= lr * (hidden.T @ delta)
            b2 -= lr * float(delta.sum())
            w1 -= lr * (dz1.T @ xb)
            b1 -= lr * dz1.sum(axis=0)

    return ModelArtifact(
        w1=w1,
        b1=b1,
        w2=w2,
        b2=b2,
        vocab=vocab,
        hash_seed=hash_seed,
        feature_dim=feature_dim,
        threshold=threshold,
    )


def mean_loss(model: ModelArtifact, data: Sequence[LabeledPair]) -> float:
    """Mean binary cross-entropy of the model over labeled texts."""
    if not data:
        raise InvalidTrainingSetError("no examples to score")
    total = 0.0
    for text, label in data:
        total += bce_loss(classify(model, text).score, float(label))
    return total / len(data)


def load_training_file(path: Union[str, Path]) -> list[LabeledPair]:
    """Read labeled headlines from CSV (header text,label) or JSONL.

    The format is picked by extension: .jsonl is JSON-lines with "text" and
    "label" fields, anything else is parsed as CSV. Labels must be 0 or 1.
    """
    path = Path(path)
    if path.suffix.lower() == ".jsonl":
        return _load_jsonl(path)
    return _load_csv(path)


def _parse_label(raw: object, where: str) -> int:
    if isinstance(raw, bool) or raw in (0, 1):
        return int(raw)
    if isinstance(raw, str) and raw.strip() in ("0", "1"):
        return int(raw.strip())
    raise DatasetError(f"{where}: label must be 0 or 1, got {raw!r}")


def _load_csv(path: Path) -> list[LabeledPair]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"text", "label"} <= set(reader.fieldnames):
            raise DatasetError(f"{path}: expected CSV header with 'text' and 'label' columns")
        pairs = []
        for i, row in enumerate(reader, start=2):
            text = row.get("text")
            if text is None or row.get("label") is None:
                raise DatasetError(f"{path}:{i}: missing text or label")
            pairs.append((text, _parse_label(row["label"], f"{path}:{i}")))
    return pairs


def _load_jsonl(path: Path) -> list[LabeledPair]:
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"{path}:{i}: invalid JSON: {exc}") from exc
            if not isinstance(obj, dict) or "text" not in obj or "label" not in obj:
                raise DatasetError(f"{path}:{i}: expected an object with 'text' and 'label'")
            if not isinstance(obj["text"], str):
                raise DatasetError(f"{path}:{i}: text must be a string")
            pairs.append((obj["text"], _parse_label(obj["label"], f"{path}:{i}")))
    return pairs
