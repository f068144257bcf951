"""Gini decision trees and bootstrap random forests, implemented directly.

Split search is exhaustive over midpoints of consecutive sorted feature
values; ties between equally good splits resolve to the lowest feature index
and then the lowest threshold, which makes training fully deterministic.
Zero-gain splits are permitted (required for parity-style targets such as
XOR, where no single split improves Gini). Forest trees draw their bootstrap
sample and per-node feature subsets from a generator seeded at
``master_seed + tree_index`` so any tree can be rebuilt in isolation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import TutorError
from .features import TrainingExample

JSON_SEPARATORS = (",", ":")


@dataclass(frozen=True)
class TreeNode:
    """Either an internal split (feature/threshold/children) or a leaf."""

    counts: tuple[int, int]
    feature: Optional[int] = None
    threshold: Optional[float] = None
    left: Optional["TreeNode"] = None
    right: Optional["TreeNode"] = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    @property
    def probability(self) -> float:
        total = self.counts[0] + self.counts[1]
        return self.counts[1] / total if total else 0.0

    @property
    def label(self) -> int:
        return 1 if self.counts[1] > self.counts[0] else 0

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"kind": "leaf", "counts": list(self.counts)}
        return {
            "kind": "split",
            "feature": self.feature,
            "threshold": self.threshold,
            "counts": list(self.counts),
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TreeNode":
        counts = (int(data["counts"][0]), int(data["counts"][1]))
        if data["kind"] == "leaf":
            return cls(counts=counts)
        return cls(
            counts=counts,
            feature=int(data["feature"]),
            threshold=float(data["threshold"]),
            left=cls.from_dict(data["left"]),
            right=cls.from_dict(data["right"]),
        )


def _gini(n_pos: float, n: float) -> float:
    if n == 0:
        return 0.0
    p = n_pos / n
    return 1.0 - p * p - (1.0 - p) * (1.0 - p)


def _best_split(
    X: np.ndarray,
    y: np.ndarray,
    feature_indices: Sequence[int],
    min_samples_leaf: int,
) -> Optional[tuple[int, float]]:
    n = len(y)
    total_pos = int(y.sum())
    best: Optional[tuple[float, int, float]] = None
    for f in feature_indices:
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        pos = np.cumsum(y[order])
        n_left = np.arange(1, n)
        valid = (xs[1:] != xs[:-1]) & (n_left >= min_samples_leaf)
        valid &= (n - n_left) >= min_samples_leaf
        if not valid.any():
            continue
        left_pos = pos[:-1]
        n_right = n - n_left
        right_pos = total_pos - left_pos
        with np.errstate(invalid="ignore", divide="ignore"):
            p_l = left_pos / n_left
            p_r = right_pos / n_right
            gini_l = 1.0 - p_l * p_l - (1.0 - p_l) * (1.0 - p_l)
            gini_r = 1.0 - p_r * p_r - (1.0 - p_r) * (1.0 - p_r)
            weighted = (n_left * gini_l + n_right * gini_r) / n
        weighted = np.where(valid, weighted, np.inf)
        i = int(np.argmin(weighted))
        score = float(weighted[i])
        if not np.isfinite(score):
            continue
        threshold = float((xs[i] + xs[i + 1]) / 2.0)
        if best is None or score < best[0]:
            best = (score, f, threshold)
    if best is None:
        return None
    return int(best[1]), float(best[2])


def _build(
    X: np.ndarray,
    y: np.ndarray,
    depth: int,
    max_depth: int,
    min_samples_leaf: int,
    features_per_split: int,
    rng: Optional[np.random.Generator],
) -> TreeNode:
    n = len(y)
    n_pos = int(y.sum())
    counts = (n - n_pos, n_pos)
    if (
        depth >= max_depth
        or n_pos in (0, n)
        or n < 2 * min_samples_leaf
    ):
        return TreeNode(counts=counts)
    d = X.shape[1]
    if rng is not None and features_per_split < d:
        feats = np.sort(rng.choice(d, size=features_per_split, replace=False))
    else:
        feats = np.arange(d)
    split = _best_split(X, y, feats, min_samples_leaf)
    if split is None:
        return TreeNode(counts=counts)
    f, threshold = split
    mask = X[:, f] <= threshold
    left = _build(
        X[mask], y[mask], depth + 1, max_depth, min_samples_leaf,
        features_per_split, rng,
    )
    right = _build(
        X[~mask], y[~mask], depth + 1, max_depth, min_samples_leaf,
        features_per_split, rng,
    )
    return TreeNode(
        counts=counts, feature=f, threshold=threshold, left=left, right=right
    )


@dataclass(frozen=True)
class DecisionTree:
    root: TreeNode
    n_features: int
    max_depth: int
    min_samples_leaf: int

    def _leaf(self, x: np.ndarray) -> TreeNode:
        node = self.root
        while not node.is_leaf:
            node = node.left if x[node.feature] <= node.threshold else node.right
        return node

    def predict_proba(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n_features,):
            raise TutorError(
                f"expected {self.n_features} features, got {x.shape}"
            )
        return self._leaf(x).probability

    def predict(self, x: np.ndarray) -> int:
        return 1 if self.predict_proba(x) >= 0.5 else 0

    def depth(self) -> int:
        def walk(node: TreeNode) -> int:
            if node.is_leaf:
                return 0
            return 1 + max(walk(node.left), walk(node.right))

        return walk(self.root)

    def to_dict(self) -> dict:
        return {
            "type": "decision_tree",
            "n_features": self.n_features,
            "max_depth": self.max_depth,
            "min_samples_leaf": self.min_samples_leaf,
            "root": self.root.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=JSON_SEPARATORS)

    @classmethod
    def from_dict(cls, data: dict) -> "DecisionTree":
        return cls(
            root=TreeNode.from_dict(data["root"]),
            n_features=int(data["n_features"]),
            max_depth=int(data["max_depth"]),
            min_samples_leaf=int(data["min_samples_leaf"]),
        )


def _to_arrays(examples: Sequence[TrainingExample]) -> tuple[np.ndarray, np.ndarray]:
    if not examples:
        raise TutorError("cannot train on an empty example list")
    names = examples[0].features.names
    for ex in examples:
        if ex.features.names != names:
            raise TutorError("feature schema mismatch across training examples")
    X = np.array([ex.features.values for ex in examples], dtype=float)
    y = np.array([ex.label for ex in examples], dtype=int)
    if X.shape[1] < 1:
        raise TutorError("training examples must have at least one feature")
    return X, y


def train_decision_tree(
    examples: Sequence[TrainingExample],
    max_depth: int = 8,
    min_samples_leaf: int = 1,
    seed: int = 0,
) -> DecisionTree:
    X, y = _to_arrays(examples)
    root = _build(X, y, 0, max_depth, min_samples_leaf, X.shape[1], None)
    return DecisionTree(
        root=root,
        n_features=X.shape[1],
        max_depth=max_depth,
        min_samples_leaf=min_samples_leaf,
    )


@dataclass(frozen=True)
class RandomForest:
    trees: tuple[DecisionTree, ...]
    tree_seeds: tuple[int, ...]
    features_per_split: int
    master_seed: int
    n_features: int

    def __post_init__(self) -> None:
        if not self.trees:
            raise TutorError("a forest needs at least one tree")

    def predict_proba(self, x: np.ndarray) -> float:
        return float(
            sum(tree.predict_proba(x) for tree in self.trees) / len(self.trees)
        )

    def predict(self, x: np.ndarray) -> int:
        return 1 if self.predict_proba(x) >= 0.5 else 0

    def to_dict(self) -> dict:
        return {
            "type": "random_forest",
            "master_seed": self.master_seed,
            "features_per_split": self.features_per_split,
            "n_features": self.n_features,
            "tree_seeds": list(self.tree_seeds),
            "trees": [tree.to_dict() for tree in self.trees],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=JSON_SEPARATORS)

    @classmethod
    def from_dict(cls, data: dict) -> "RandomForest":
        return cls(
            trees=tuple(DecisionTree.from_dict(t) for t in data["trees"]),
            tree_seeds=tuple(int(s) for s in data["tree_seeds"]),
            features_per_split=int(data["features_per_split"]),
            master_seed=int(data["master_seed"]),
            n_features=int(data["n_features"]),
        )


def bootstrap_indices(seed: int, n: int) -> np.ndarray:
    """The bootstrap sample drawn by the tree with this per-tree seed."""
    return np.random.default_rng(seed).integers(0, n, size=n)


def train_random_forest(
    examples: Sequence[TrainingExample],
    n_trees: int = 100,
    max_depth: int = 8,
    features_per_split: Optional[int] = None,
    seed: int = 0,
    min_samples_leaf: int = 2,
) -> RandomForest:
    X, y = _to_arrays(examples)
    if n_trees < 1:
        raise TutorError("n_trees must be >= 1")
    d = X.shape[1]
    if features_per_split is None:
        features_per_split = int(np.ceil(np.sqrt(d)))
    features_per_split = min(features_per_split, d)
    trees = []
    seeds = []
    n = len(y)
    for i in range(n_trees):
        tree_seed = seed + i
        rng = np.random.default_rng(tree_seed)
        boot = rng.integers(0, n, size=n)
        root = _build(
            X[boot], y[boot], 0, max_depth, min_samples_leaf,
            features_per_split, rng,
        )
        trees.append(
            DecisionTree(
                root=root,
                n_features=d,
                max_depth=max_depth,
                min_samples_leaf=min_samples_leaf,
            )
        )
        seeds.append(tree_seed)
    return RandomForest(
        trees=tuple(trees),
        tree_seeds=tuple(seeds),
        features_per_split=features_per_split,
        master_seed=seed,
        n_features=d,
    )
