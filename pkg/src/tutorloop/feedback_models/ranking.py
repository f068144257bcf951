"""Ranking of intervention candidates by model probability.

Candidates (text hints or explanations — anything with a ``text`` attribute)
are featurized against the current exercise, profile, and history, scored by
a trained tree or forest, and returned in descending probability. Equal
scores fall back to shorter text, then lexicographic order, so rankings are
reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Protocol, Sequence, TypeVar

import numpy as np

from ..errors import TutorError
from .features import FeatureExtractor, ModelTier

if TYPE_CHECKING:  # pragma: no cover - typing only
    from ..tutoring_core import Exercise, InteractionTurn, StudentProfile


class Scorer(Protocol):
    n_features: int

    def predict_proba(self, x: np.ndarray) -> float: ...


class TextCandidate(Protocol):
    text: str


C = TypeVar("C", bound="TextCandidate")


@dataclass(frozen=True)
class RankingContext:
    exercise: "Exercise"
    profile: "StudentProfile"
    extractor: FeatureExtractor
    history: Sequence["InteractionTurn"] = field(default_factory=tuple)


def rank_candidates(
    candidates: Sequence[C],
    context: RankingContext,
    model: Scorer,
    tier: ModelTier,
) -> list[tuple[C, float]]:
    scored: list[tuple[C, float]] = []
    for candidate in candidates:
        fv = context.extractor.extract(
            candidate.text,
            context.exercise,
            context.profile,
            context.history,
            tier,
        )
        if len(fv) != model.n_features:
            raise TutorError(
                f"model expects {model.n_features} features but tier "
                f"{tier.value!r} produced {len(fv)}"
            )
        scored.append((candidate, model.predict_proba(fv.as_array())))
    scored.sort(key=lambda item: (-item[1], len(item[0].text), item[0].text))
    return scored
