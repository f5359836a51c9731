"""ROC curves, AUC, and k-fold cross-validated model evaluation."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO, Union

import numpy as np

from .core.features import DEFAULT_FEATURE_DIM, DEFAULT_HASH_SEED
from .core.model import DEFAULT_THRESHOLD
from .core.text import Vocabulary
from .core.train import LabeledPair, TrainConfig, classify, train


class DegenerateInputError(ValueError):
    """Scored set lacks one of the two classes."""


@dataclass(frozen=True)
class ScoredSet:
    """Parallel scores and binary labels for metric computation."""

    scores: tuple[float, ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "scores", tuple(float(s) for s in self.scores))
        object.__setattr__(self, "labels", tuple(int(l) for l in self.labels))
        if len(self.scores) != len(self.labels):
            raise ValueError(
                f"scores and labels must be parallel, got {len(self.scores)} vs {len(self.labels)}"
            )
        if not self.scores:
            raise ValueError("scored set is empty")
        if any(not 0.0 <= s <= 1.0 for s in self.scores):
            raise ValueError("scores must lie in [0, 1]")
        if any(l not in (0, 1) for l in self.labels):
            raise ValueError("labels must be 0 or 1")

    @property
    def n_pos(self) -> int:
        return sum(self.labels)

    @property
    def n_neg(self) -> int:
        return len(self.labels) - self.n_pos


@dataclass(frozen=True)
class RocReport:
    """ROC curve points ordered by descending threshold, plus trapezoidal AUC."""

    points: tuple[tuple[float, float], ...]
    auc: float
    n_pos: int
    n_neg: int


def _require_both_classes(s: ScoredSet) -> None:
    if s.n_pos == 0 or s.n_neg == 0:
        raise DegenerateInputError(
            f"need at least one positive and one negative, got {s.n_pos} pos / {s.n_neg} neg"
        )


def trapezoid_area(points: Sequence[tuple[float, float]]) -> float:
    area = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        area += (x1 - x0) * (y1 + y0) / 2.0
    return area


def roc_points(s: ScoredSet) -> RocReport:
    """Sweep thresholds over the distinct scores, descending.

    A prediction is positive iff score >= threshold; tied scores enter
    together, so tie groups produce diagonal segments. The curve starts at
    (0, 0) (sentinel threshold above the maximum) and ends at (1, 1).
    """
    _require_both_classes(s)
    n_pos, n_neg = s.n_pos, s.n_neg
    ranked = sorted(zip(s.scores, s.labels), key=lambda p: -p[0])
    points = [(0.0, 0.0)]
    tp = fp = 0
    i = 0
    while i < len(ranked):
        j = i
        while j < len(ranked) and ranked[j][0] == ranked[i][0]:
            if ranked[j][1] == 1:
                tp += 1
            else:
                fp += 1
            j += 1
        points.append((fp / n_neg, tp / n_pos))
        i = j
    return RocReport(
        points=tuple(points),
        auc=trapezoid_area(points),
        n_pos=n_pos,
        n_neg=n_neg,
    )


def auc_rank(s: ScoredSet) -> float:
    """AUC as the Mann-Whitney pair statistic: wins plus half-credit ties.

    Computed by a single pass over score-sorted tie groups; every term is an
    integer or half-integer, so the result is exact in float arithmetic.
    """
    _require_both_classes(s)
    ranked = sorted(zip(s.scores, s.labels))
    total = 0.0
    negs_below = 0
    i = 0
    while i < len(ranked):
        j = i
        group_pos = group_neg = 0
        while j < len(ranked) and ranked[j][0] == ranked[i][0]:
            if ranked[j][1] == 1:
                group_pos += 1
            else:
                group_neg += 1
            j += 1
        total += group_pos * negs_below + 0.5 * group_pos * group_neg
        negs_below += group_neg
        i = j
    return total / (s.n_pos * s.n_neg)


def kfold_split(n: int, k: int, seed: int) -> list[list[int]]:
    """Partition [0, n) into k shuffled folds whose sizes differ by at most 1."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if k > n:
        raise ValueError(f"k must not exceed the number of examples ({n}), got {k}")
    order = np.random.default_rng(seed).permutation(n)
    base, extra = divmod(n, k)
    folds = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        folds.append([int(v) for v in order[start : start + size]])
        start += size
    return folds


@dataclass(frozen=True)
class EvaluationReport:
    folds: tuple[RocReport, ...]
    mean_auc: float
    accuracy: float

    def to_dict(self) -> dict:
        return {
            "mean_auc": self.mean_auc,
            "accuracy": self.accuracy,
            "folds": [
                {"auc": r.auc, "n_pos": r.n_pos, "n_neg": r.n_neg} for r in self.folds
            ],
        }


def evaluate(
    data: Sequence[LabeledPair],
    *,
    k: int = 5,
    seed: int = 0,
    train_config: TrainConfig | None = None,
    vocab: Vocabulary,
    hash_seed: int = DEFAULT_HASH_SEED,
    feature_dim: int = DEFAULT_FEATURE_DIM,
    threshold: float = DEFAULT_THRESHOLD,
) -> EvaluationReport:
    """k-fold cross-validation: train on k-1 folds, score the held-out fold.

    Returns per-fold ROC reports in fold order, their mean AUC, and pooled
    held-out accuracy at the decision threshold. Trainer and metric errors
    from individual folds propagate.
    """
    folds = kfold_split(len(data), k, seed)
    config = train_config or TrainConfig()
    reports: list[RocReport] = []
    correct = 0
    for fold in folds:
        held = set(fold)
        train_pairs = [pair for i, pair in enumerate(data) if i not in held]
        model = train(
            train_pairs,
            config,
            vocab,
            hash_seed=hash_seed,
            feature_dim=feature_dim,
            threshold=threshold,
        )
        scores = [classify(model, data[i][0]).score for i in fold]
        labels = [data[i][1] for i in fold]
        reports.append(roc_points(ScoredSet(tuple(scores), tuple(labels))))
        correct += sum(
            (score >= threshold) == bool(label) for score, label in zip(scores, labels)
        )
    mean_auc = float(np.mean([r.auc for r in reports]))
    return EvaluationReport(
        folds=tuple(reports),
        mean_auc=mean_auc,
        accuracy=correct / len(data),
    )


def emit_roc_csv(report: RocReport, sink: Union[str, Path, TextIO]) -> None:
    """Write the ROC points as UTF-8 CSV with an fpr,tpr header."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            _write_csv(report, fh)
    else:
        _write_csv(report, sink)


def _write_csv(report: RocReport, fh: TextIO) -> None:
    writer = csv.writer(fh)
    writer.writerow(["fpr", "tpr"])
    for fpr, tpr in report.points:
        writer.writerow([fpr, tpr])
