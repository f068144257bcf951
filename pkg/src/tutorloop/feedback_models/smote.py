"""Synthetic minority oversampling (SMOTE) for imbalanced training sets.

Each synthetic point is a convex combination ``x + u * (x_nn - x)`` of a
seeded-random minority point and one of its k nearest minority neighbours
under Euclidean distance, so synthetics always lie on the segment between two
real minority examples.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import TutorError
from .features import FeatureVector, TrainingExample


def _nearest_neighbours(X: np.ndarray, k: int) -> list[list[int]]:
    n = len(X)
    diffs = X[:, None, :] - X[None, :, :]
    dists = np.sqrt((diffs * diffs).sum(axis=2))
    neighbours = []
    for i in range(n):
        order = np.argsort(dists[i], kind="stable")
        neighbours.append([int(j) for j in order if j != i][:k])
    return neighbours


def smote_oversample(
    examples: Sequence[TrainingExample],
    k_neighbors: int = 5,
    target_ratio: float = 1.0,
    seed: int = 0,
) -> list[TrainingExample]:
    """Append synthetic minority examples until minority/majority ≈ target_ratio.

    Originals are returned first, in their input order, followed by the
    synthetics. Already-balanced (or over-target) inputs come back unchanged.
    """
    if k_neighbors < 1:
        raise TutorError("k_neighbors must be >= 1")
    by_label: dict[int, list[TrainingExample]] = {0: [], 1: []}
    for ex in examples:
        by_label[ex.label].append(ex)
    n0, n1 = len(by_label[0]), len(by_label[1])
    if n0 == n1:
        return list(examples)
    minority_label = 1 if n1 < n0 else 0
    minority = by_label[minority_label]
    majority_count = max(n0, n1)
    if len(minority) < 2:
        raise TutorError(
            "SMOTE needs at least two minority examples, "
            f"got {len(minority)}"
        )
    target = round(target_ratio * majority_count)
    need = target - len(minority)
    if need <= 0:
        return list(examples)

    X = np.array([ex.features.values for ex in minority], dtype=float)
    k_eff = min(k_neighbors, len(minority) - 1)
    neighbours = _nearest_neighbours(X, k_eff)
    template = minority[0].features
    rng = np.random.default_rng(seed)
    synthetic: list[TrainingExample] = []
    for _ in range(need):
        i = int(rng.integers(len(minority)))
        j = neighbours[i][int(rng.integers(k_eff))]
        u = float(rng.random())
        point = X[i] + u * (X[j] - X[i])
        fv = FeatureVector(
            names=template.names,
            values=tuple(float(v) for v in point),
            tier=template.tier,
        )
        synthetic.append(TrainingExample(features=fv, label=minority_label))
    return list(examples) + synthetic
