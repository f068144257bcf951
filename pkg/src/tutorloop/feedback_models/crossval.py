"""k-fold cross-validation over ranked-feedback training examples.

Examples are shuffled once with a seeded generator, then cut into contiguous
folds (the first ``n mod k`` folds take one extra example). The trainer is
pluggable: any callable from examples to a model with ``predict``. Per-fold
accuracy and positive-class F1 aggregate into t-distribution confidence
intervals over the folds.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol, Sequence

import numpy as np

from ..errors import TutorError
from ..stats_numerics import mean_confidence_interval
from .features import TrainingExample


class Classifier(Protocol):
    def predict(self, x: np.ndarray) -> int: ...


Trainer = Callable[[Sequence[TrainingExample]], Classifier]


@dataclass(frozen=True)
class FoldResult:
    fold: int
    n_test: int
    accuracy: float
    f1: float


@dataclass(frozen=True)
class CvReport:
    folds: tuple[FoldResult, ...]
    mean_accuracy: float
    accuracy_ci: tuple[float, float]
    mean_f1: float
    f1_ci: tuple[float, float]

    @property
    def k_folds(self) -> int:
        return len(self.folds)

    def to_dict(self) -> dict:
        return {
            "k_folds": self.k_folds,
            "mean_accuracy": self.mean_accuracy,
            "accuracy_ci": list(self.accuracy_ci),
            "mean_f1": self.mean_f1,
            "f1_ci": list(self.f1_ci),
            "folds": [
                {
                    "fold": f.fold,
                    "n_test": f.n_test,
                    "accuracy": f.accuracy,
                    "f1": f.f1,
                }
                for f in self.folds
            ],
        }


def _f1_positive(y_true: np.ndarray, y_pred: np.ndarray) -> float:
    tp = int(((y_true == 1) & (y_pred == 1)).sum())
    fp = int(((y_true == 0) & (y_pred == 1)).sum())
    fn = int(((y_true == 1) & (y_pred == 0)).sum())
    denom = 2 * tp + fp + fn
    if denom == 0:
        return 1.0
    return 2 * tp / denom


def fold_sizes(n: int, k: int) -> list[int]:
    base, extra = divmod(n, k)
    return [base + 1 if i < extra else base for i in range(k)]


def cross_validate(
    examples: Sequence[TrainingExample],
    k_folds: int,
    trainer: Trainer,
    seed: int = 0,
) -> CvReport:
    n = len(examples)
    if k_folds < 2:
        raise TutorError("k_folds must be >= 2")
    if k_folds > n:
        raise TutorError(
            f"k_folds ({k_folds}) exceeds the number of examples ({n})"
        )
    perm = np.random.default_rng(seed).permutation(n)
    sizes = fold_sizes(n, k_folds)
    results: list[FoldResult] = []
    start = 0
    for fold_idx, size in enumerate(sizes):
        test_idx = perm[start : start + size]
        train_idx = np.concatenate([perm[:start], perm[start + size :]])
        start += size
        model = trainer([examples[i] for i in train_idx])
        y_true = np.array([examples[i].label for i in test_idx], dtype=int)
        y_pred = np.array(
            [model.predict(examples[i].features.as_array()) for i in test_idx],
            dtype=int,
        )
        accuracy = float((y_true == y_pred).mean())
        results.append(
            FoldResult(
                fold=fold_idx,
                n_test=int(size),
                accuracy=accuracy,
                f1=_f1_positive(y_true, y_pred),
            )
        )
    accs = [r.accuracy for r in results]
    f1s = [r.f1 for r in results]
    mean_acc, acc_lo, acc_hi = mean_confidence_interval(accs)
    mean_f1, f1_lo, f1_hi = mean_confidence_interval(f1s)
    return CvReport(
        folds=tuple(results),
        mean_accuracy=mean_acc,
        accuracy_ci=(acc_lo, acc_hi),
        mean_f1=mean_f1,
        f1_ci=(f1_lo, f1_hi),
    )
