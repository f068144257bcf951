"""Personalized candidate-ranking models.

Three feature tiers (linguistic only, + profile counters, + recent-turn
history), a from-scratch Gini decision tree and bootstrap random forest,
SMOTE oversampling for imbalanced training sets, a k-fold cross-validation
harness with t-based confidence intervals, and the candidate ranker.
"""
from .features import (
    FeatureExtractor,
    FeatureVector,
    ModelTier,
    TrainingExample,
    feature_names,
)
from .trees import (
    DecisionTree,
    RandomForest,
    TreeNode,
    bootstrap_indices,
    train_decision_tree,
    train_random_forest,
)
from .smote import smote_oversample
from .crossval import CvReport, FoldResult, cross_validate, fold_sizes
from .ranking import RankingContext, rank_candidates

__all__ = [
    "CvReport",
    "DecisionTree",
    "FeatureExtractor",
    "FeatureVector",
    "FoldResult",
    "ModelTier",
    "RandomForest",
    "RankingContext",
    "TrainingExample",
    "TreeNode",
    "bootstrap_indices",
    "cross_validate",
    "feature_names",
    "fold_sizes",
    "rank_candidates",
    "smote_oversample",
    "train_decision_tree",
    "train_random_forest",
]
