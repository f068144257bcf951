"""Feature extraction for candidate ranking, in three personalization tiers.

The Baseline tier looks only at the candidate text itself relative to the
question. Shallow appends aggregate profile counters; Deep appends a block of
four features for each of the student's last four interaction turns,
zero-padded when the history is shorter. Each tier's feature list is a strict
prefix of the next, so a model trained at one tier can be compared against
richer ones feature-by-feature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from ..errors import TutorError
from ..hint_generation import extract_question_keywords
from ..text_analysis import (
    PUNCT,
    CorpusStats,
    NGramModel,
    cosine_similarity,
    keyword_in_tokens,
    tfidf_vector,
    tokenize,
)

if TYPE_CHECKING:  # pragma: no cover - typing only, avoids an import cycle
    from ..tutoring_core import Exercise, InteractionTurn, StudentProfile


class ModelTier(str, Enum):
    BASELINE = "baseline"
    SHALLOW = "shallow"
    DEEP = "deep"


_BASELINE_NAMES = (
    "token_length",
    "char_length",
    "keyword_overlap",
    "topic_overlap",
    "lm_score",
    "tfidf_cosine",
)
_PROFILE_NAMES = (
    "attempted_count",
    "proportion_correct",
    "proportion_incorrect",
    "skip_count",
    "mean_attempts_per_exercise",
)
HISTORY_TURNS = 4
_TURN_NAMES = (
    "attempt_tokens",
    "expectation_cosine",
    "graded_correct",
    "intervention_shown",
)


def feature_names(tier: ModelTier) -> tuple[str, ...]:
    names = _BASELINE_NAMES
    if tier in (ModelTier.SHALLOW, ModelTier.DEEP):
        names = names + _PROFILE_NAMES
    if tier is ModelTier.DEEP:
        names = names + tuple(
            f"turn{j}_{field}"
            for j in range(1, HISTORY_TURNS + 1)
            for field in _TURN_NAMES
        )
    return names


@dataclass(frozen=True)
class FeatureVector:
    names: tuple[str, ...]
    values: tuple[float, ...]
    tier: ModelTier

    def __post_init__(self) -> None:
        if len(self.names) != len(self.values):
            raise TutorError("feature names and values must align")
        for name, value in zip(self.names, self.values):
            if not math.isfinite(value):
                raise TutorError(f"feature {name!r} is not finite: {value!r}")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class TrainingExample:
    features: FeatureVector
    label: int

    def __post_init__(self) -> None:
        if self.label not in (0, 1):
            raise TutorError(f"label must be 0 or 1, got {self.label!r}")


def _content_tokens(text: str) -> list:
    return [t for t in tokenize(text) if t.tag != PUNCT]


class FeatureExtractor:
    """Turns a candidate text plus tutoring context into a FeatureVector.

    Corpus statistics feed the TF-IDF cosine feature and the n-gram model
    feeds the fluency score; both are fit once over the exercise bank and
    shared across extractions.
    """

    def __init__(self, corpus_stats: CorpusStats, lm: NGramModel) -> None:
        self.corpus_stats = corpus_stats
        self.lm = lm

    @classmethod
    def from_texts(cls, texts: Iterable[str]) -> "FeatureExtractor":
        texts = [t for t in texts if t.strip()]
        if not texts:
            raise TutorError("cannot fit an extractor on an empty corpus")
        stats = CorpusStats.from_documents(texts)
        lm = NGramModel.train_on_texts(texts, order=2, k=0.1)
        return cls(stats, lm)

    @classmethod
    def from_exercises(cls, exercises: Sequence["Exercise"]) -> "FeatureExtractor":
        texts: list[str] = []
        for ex in exercises:
            texts.append(ex.question)
            texts.extend(ex.expectations)
        return cls.from_texts(texts)

    def similarity(self, text_a: str, text_b: str) -> float:
        """TF-IDF cosine between two raw texts under the fitted corpus."""
        va = tfidf_vector(text_a, self.corpus_stats)
        vb = tfidf_vector(text_b, self.corpus_stats)
        return cosine_similarity(va, vb)

    def extract(
        self,
        candidate_text: str,
        exercise: "Exercise",
        profile: "StudentProfile",
        history: Sequence["InteractionTurn"],
        tier: ModelTier,
    ) -> FeatureVector:
        values = list(self._baseline_block(candidate_text, exercise))
        if tier in (ModelTier.SHALLOW, ModelTier.DEEP):
            values.extend(self._profile_block(profile))
        if tier is ModelTier.DEEP:
            values.extend(self._history_block(history))
        return FeatureVector(feature_names(tier), tuple(values), tier)

    def _baseline_block(self, text: str, exercise: "Exercise") -> list[float]:
        tokens = _content_tokens(text)
        keyword_set = extract_question_keywords(exercise.question)
        keywords = sorted(keyword_set.keywords)
        heads = sorted(keyword_set.heads)
        kw_hits = sum(1 for k in keywords if keyword_in_tokens(tokens, k))
        head_hits = sum(1 for h in heads if keyword_in_tokens(tokens, h))
        normalized = [t.normalized for t in tokens]
        lm_score = self.lm.score(normalized) if normalized else 0.0
        cos = self.similarity(text, exercise.question)
        return [
            float(len(tokens)),
            float(len(text)),
            kw_hits / len(keywords) if keywords else 0.0,
            head_hits / len(heads) if heads else 0.0,
            lm_score,
            cos,
        ]

    @staticmethod
    def _profile_block(profile: "StudentProfile") -> list[float]:
        attempted = profile.attempted
        return [
            float(attempted),
            profile.correct / attempted if attempted else 0.0,
            profile.incorrect / attempted if attempted else 0.0,
            float(profile.skips),
            attempted / profile.exercises_attempted
            if profile.exercises_attempted
            else 0.0,
        ]

    @staticmethod
    def _history_block(history: Sequence["InteractionTurn"]) -> list[float]:
        window = list(history)[-HISTORY_TURNS:]
        values: list[float] = []
        for turn in window:
            attempt_text = getattr(turn, "attempt_text", None) or ""
            n_tokens = len(_content_tokens(attempt_text)) if attempt_text else 0
            score = getattr(turn, "score", None)
            grade = getattr(turn, "grade", None)
            correct = 1.0 if getattr(grade, "value", grade) == "Correct" else 0.0
            shown = 1.0 if getattr(turn, "intervention", None) is not None else 0.0
            values.extend([float(n_tokens), float(score or 0.0), correct, shown])
        values.extend([0.0] * (4 * (HISTORY_TURNS - len(window))))
        return values
