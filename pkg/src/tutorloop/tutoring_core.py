"""The per-exercise tutoring loop: grade, track, intervene.

An attempt is graded against the exercise's reference solutions — text
attempts by maximum TF-IDF cosine over the expectations (corpus fit on the
spot from the expectations plus the attempt, so grading needs no global
state), math attempts through the equivalence checker. Incorrect attempts
and help requests trigger intervention selection: top-ranked text hints per
personalization tier, the best encyclopedia explanation, and math gap/diff
hints when the exercise carries an equation. A zone-of-proximal-development
band around the student's skill estimate filters candidates by score, an
experiment mode assigns the serving tier uniformly at random for unbiased
per-tier comparisons, and everything falls back to a stock re-read hint
rather than silence.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import IllegalTransition, ParseError, TutorError
from .feedback_models.features import FeatureExtractor, ModelTier
from .feedback_models.ranking import RankingContext, rank_candidates
from .hint_generation import DiscourseCue, generate_candidates
from .math_hints import (
    EquivalenceVerdict,
    GapPolicy,
    MathContext,
    Symbol,
    VerdictStatus,
    check_equivalence,
    free_variables,
    make_gap_hint,
    parse_latex,
    select_parse,
)
from .text_analysis import (
    PUNCT,
    CorpusStats,
    cosine_similarity,
    tfidf_vector,
    tokenize,
)
from .wiki_explanations import ArticleIndex, score_and_select

SKILL_INIT = 0.5
SKILL_ALPHA = 0.1
ZPD_BAND = 0.35
GRADING_THRESHOLD = 0.5
MATH_HINT_SCORE = 0.6
STOCK_HINT_TEXT = "Re-read the question and restate it in your own words."


class Grade(str, Enum):
    CORRECT = "Correct"
    INCORRECT = "Incorrect"


class EventKind(str, Enum):
    ATTEMPT = "attempt"
    HELP = "help"
    SKIP = "skip"


class Phase(str, Enum):
    AWAITING_ATTEMPT = "AwaitingAttempt"
    INTERVENTION_SHOWN = "InterventionShown"
    SOLVED = "Solved"
    SKIPPED = "Skipped"


class InterventionType(str, Enum):
    TEXT_HINT = "TextHint"
    WIKI_EXPLANATION = "WikiExplanation"
    MATH_GAP_HINT = "MathGapHint"
    MATH_DIFF_HINT = "MathDiffHint"
    # Declared for completeness; selection never emits these.
    ELABORATION = "Elaboration"
    CONCEPT_TREE = "ConceptTree"
    MULTIPLE_CHOICE = "MultipleChoice"


IMPLEMENTED_INTERVENTIONS = frozenset(
    {
        InterventionType.TEXT_HINT,
        InterventionType.WIKI_EXPLANATION,
        InterventionType.MATH_GAP_HINT,
        InterventionType.MATH_DIFF_HINT,
    }
)


class Mode(str, Enum):
    EXPERIMENT = "experiment"
    PRODUCTION = "production"


@dataclass(frozen=True)
class MathExpectation:
    latex: str
    functions: tuple[str, ...] = ()


@dataclass(frozen=True)
class Exercise:
    id: str
    question: str
    expectations: tuple[str, ...] = ()
    math_expectation: Optional[MathExpectation] = None
    tags: tuple[str, ...] = ()
    difficulty: float = 0.5

    def __post_init__(self) -> None:
        if not self.id:
            raise TutorError("exercise id must be non-empty")
        if not self.expectations and self.math_expectation is None:
            raise TutorError(
                f"exercise {self.id!r} needs a text expectation or an equation"
            )
        if not 0.0 <= self.difficulty <= 1.0:
            raise TutorError(
                f"exercise {self.id!r} difficulty must be in [0, 1]"
            )


@dataclass(frozen=True)
class StudentProfile:
    id: str
    attempted: int = 0
    correct: int = 0
    incorrect: int = 0
    skips: int = 0
    exercises_attempted: int = 0
    topic_counts: tuple[tuple[str, int, int], ...] = ()
    skill: float = SKILL_INIT

    def __post_init__(self) -> None:
        if self.correct + self.incorrect > self.attempted:
            raise TutorError(
                "correct + incorrect cannot exceed attempted "
                f"({self.correct}+{self.incorrect} > {self.attempted})"
            )
        if not 0.0 <= self.skill <= 1.0:
            raise TutorError(f"skill must be in [0, 1], got {self.skill}")

    @property
    def topic_rates(self) -> dict[str, float]:
        return {
            topic: hits / total
            for topic, hits, total in self.topic_counts
            if total
        }


@dataclass(frozen=True)
class InterventionRef:
    type: InterventionType
    tier: Optional[ModelTier]
    content_id: str


@dataclass(frozen=True)
class Intervention:
    type: InterventionType
    tier: Optional[ModelTier]
    content_id: str
    text: str
    score: float
    extra: dict = field(default_factory=dict)

    def ref(self) -> InterventionRef:
        return InterventionRef(
            type=self.type, tier=self.tier, content_id=self.content_id
        )


@dataclass(frozen=True)
class InteractionTurn:
    sequence: int
    exercise_id: str
    attempt_index: int
    kind: EventKind
    attempt_text: Optional[str] = None
    grade: Optional[Grade] = None
    score: Optional[float] = None
    intervention: Optional[InterventionRef] = None
    helpful: Optional[bool] = None

    def __post_init__(self) -> None:
        if (self.kind is EventKind.ATTEMPT) != (self.grade is not None):
            raise TutorError(
                "a grade is recorded exactly for attempt events "
                f"(kind={self.kind.value}, grade={self.grade})"
            )
        if self.kind is EventKind.ATTEMPT and not self.attempt_text:
            raise TutorError("attempt events must carry the attempt text")
        if self.intervention is not None:
            after_incorrect = self.grade is Grade.INCORRECT
            if not (after_incorrect or self.kind is EventKind.HELP):
                raise TutorError(
                    "interventions follow an incorrect attempt or help request"
                )
        if self.attempt_index < 1:
            raise TutorError("attempt_index is 1-based")


@dataclass(frozen=True)
class SessionState:
    phase: Phase
    exercise_id: str
    attempt_index: int = 1

    def terminal(self) -> bool:
        return self.phase in (Phase.SOLVED, Phase.SKIPPED)


@dataclass(frozen=True)
class GradeResult:
    grade: Grade
    score: float
    verdict: Optional[EquivalenceVerdict] = None


def _content_tokens(text: str) -> list[str]:
    return [t.normalized for t in tokenize(text) if t.tag != PUNCT]


def _text_similarity(attempt: str, expectations: Sequence[str]) -> float:
    # The corpus is tiny (the expectations plus the attempt itself), so we
    # count one phantom empty document. Without it a term present in every
    # document gets idf ln(N/N) = 0, and a verbatim-correct attempt would
    # score cosine 0 instead of 1.
    fitted = CorpusStats.from_documents(list(expectations) + [attempt])
    stats = CorpusStats(
        document_count=fitted.document_count + 1,
        document_frequency=fitted.document_frequency,
    )
    attempt_vec = tfidf_vector(attempt, stats)
    best = 0.0
    for expectation in expectations:
        best = max(best, cosine_similarity(attempt_vec, tfidf_vector(expectation, stats)))
    return best


def parse_math_attempt(
    attempt: str, expectation: MathExpectation
):
    """Parse the expectation and the attempt under the exercise's symbol
    knowledge; returns (attempt_tree, expectation_tree)."""
    declared = frozenset(expectation.functions)
    expectation_tree = select_parse(
        parse_latex(expectation.latex), MathContext(declared_functions=declared)
    )
    bound = frozenset(
        node.name
        for node in free_variables(expectation_tree)
        if isinstance(node, Symbol)
    )
    context = MathContext(declared_functions=declared, bound_variables=bound)
    attempt_tree = select_parse(parse_latex(attempt), context)
    return attempt_tree, expectation_tree


def grade_attempt(
    attempt: str,
    exercise: Exercise,
    threshold: float = GRADING_THRESHOLD,
    seed: int = 0,
) -> GradeResult:
    if not attempt or not attempt.strip():
        raise TutorError("empty attempt")
    if exercise.math_expectation is not None:
        try:
            attempt_tree, expectation_tree = parse_math_attempt(
                attempt, exercise.math_expectation
            )
        except ParseError:
            if exercise.expectations:
                score = _text_similarity(attempt, exercise.expectations)
                grade = Grade.CORRECT if score >= threshold else Grade.INCORRECT
                return GradeResult(grade=grade, score=score)
            return GradeResult(grade=Grade.INCORRECT, score=0.0)
        verdict = check_equivalence(attempt_tree, expectation_tree, seed=seed)
        if verdict.status is VerdictStatus.EQUIVALENT:
            return GradeResult(grade=Grade.CORRECT, score=1.0, verdict=verdict)
        return GradeResult(grade=Grade.INCORRECT, score=0.0, verdict=verdict)
    score = _text_similarity(attempt, exercise.expectations)
    grade = Grade.CORRECT if score >= threshold else Grade.INCORRECT
    return GradeResult(grade=grade, score=score)


_TRANSITIONS = {
    Phase.AWAITING_ATTEMPT: {EventKind.ATTEMPT, EventKind.HELP, EventKind.SKIP},
    Phase.INTERVENTION_SHOWN: {EventKind.ATTEMPT},
    Phase.SOLVED: set(),
    Phase.SKIPPED: set(),
}


def advance_session(
    state: SessionState, kind: EventKind, grade: Optional[Grade] = None
) -> SessionState:
    if kind not in _TRANSITIONS[state.phase]:
        raise IllegalTransition(state.phase.value, kind.value)
    if kind is EventKind.SKIP:
        return replace(state, phase=Phase.SKIPPED)
    if kind is EventKind.HELP:
        return replace(state, phase=Phase.INTERVENTION_SHOWN)
    if grade is None:
        raise TutorError("attempt events require a grade")
    if grade is Grade.CORRECT:
        return replace(state, phase=Phase.SOLVED)
    return replace(
        state,
        phase=Phase.INTERVENTION_SHOWN,
        attempt_index=state.attempt_index + 1,
    )


def update_profile(
    profile: StudentProfile,
    turn: InteractionTurn,
    exercise: Optional[Exercise] = None,
) -> StudentProfile:
    if turn.kind is EventKind.SKIP:
        return replace(profile, skips=profile.skips + 1)
    if turn.kind is EventKind.HELP:
        return profile
    correct = turn.grade is Grade.CORRECT
    counts = dict_from_topic_counts(profile.topic_counts)
    if exercise is not None:
        for tag in exercise.tags:
            hits, total = counts.get(tag, (0, 0))
            counts[tag] = (hits + (1 if correct else 0), total + 1)
    return replace(
        profile,
        attempted=profile.attempted + 1,
        correct=profile.correct + (1 if correct else 0),
        incorrect=profile.incorrect + (0 if correct else 1),
        exercises_attempted=profile.exercises_attempted
        + (1 if turn.attempt_index == 1 else 0),
        topic_counts=topic_counts_from_dict(counts),
        skill=(1 - SKILL_ALPHA) * profile.skill
        + SKILL_ALPHA * (1.0 if correct else 0.0),
    )


def dict_from_topic_counts(
    counts: tuple[tuple[str, int, int], ...]
) -> dict[str, tuple[int, int]]:
    return {topic: (hits, total) for topic, hits, total in counts}


def topic_counts_from_dict(
    counts: dict[str, tuple[int, int]]
) -> tuple[tuple[str, int, int], ...]:
    return tuple(
        (topic, hits, total) for topic, (hits, total) in sorted(counts.items())
    )


@dataclass
class ModelBundle:
    """Everything intervention selection needs, trained ahead of time."""

    extractor: FeatureExtractor
    tier_models: dict[ModelTier, object] = field(default_factory=dict)
    cues: Optional[list[DiscourseCue]] = None
    wiki_index: Optional[ArticleIndex] = None
    wiki_model: Optional[object] = None


_TYPE_ORDER = {
    InterventionType.TEXT_HINT: 0,
    InterventionType.WIKI_EXPLANATION: 1,
    InterventionType.MATH_DIFF_HINT: 2,
    InterventionType.MATH_GAP_HINT: 3,
}


def stock_hint() -> Intervention:
    return Intervention(
        type=InterventionType.TEXT_HINT,
        tier=None,
        content_id="stock:reread",
        text=STOCK_HINT_TEXT,
        score=0.0,
    )


def _text_hint_candidates(
    profile: StudentProfile,
    exercise: Exercise,
    models: ModelBundle,
    history: Sequence[InteractionTurn],
) -> dict[ModelTier, Intervention]:
    if not exercise.expectations or not models.tier_models:
        return {}
    candidates = generate_candidates(exercise, cues=models.cues)
    if not candidates:
        return {}
    context = RankingContext(
        exercise=exercise,
        profile=profile,
        extractor=models.extractor,
        history=tuple(history),
    )
    per_tier: dict[ModelTier, Intervention] = {}
    for tier in ModelTier:
        model = models.tier_models.get(tier)
        if model is None:
            continue
        ranked = rank_candidates(candidates, context, model, tier)
        best, score = ranked[0]
        per_tier[tier] = Intervention(
            type=InterventionType.TEXT_HINT,
            tier=tier,
            content_id=f"hint:{exercise.id}:{tier.value}:{best.cue_id}",
            text=best.text,
            score=float(score),
        )
    return per_tier


def _wiki_candidate(
    exercise: Exercise, models: ModelBundle
) -> Optional[Intervention]:
    if models.wiki_index is None or models.wiki_model is None:
        return None
    from .hint_generation import extract_question_keywords

    best = None
    for keyword in sorted(extract_question_keywords(exercise.question).keywords):
        candidate = score_and_select(keyword, models.wiki_index, models.wiki_model)
        if candidate is None:
            continue
        if best is None or candidate.quality > best[1].quality:
            best = (keyword, candidate)
    if best is None:
        return None
    keyword, candidate = best
    title, (lo, hi) = candidate.source
    return Intervention(
        type=InterventionType.WIKI_EXPLANATION,
        tier=None,
        content_id=f"wiki:{title}:{lo}-{hi}",
        text=candidate.text,
        score=float(candidate.quality),
        extra={"keyword": keyword, "kind": candidate.kind.value},
    )


def _math_candidate(
    last_turn: InteractionTurn, exercise: Exercise, rng_seed: int
) -> Optional[Intervention]:
    expectation = exercise.math_expectation
    if expectation is None:
        return None
    if last_turn.kind is EventKind.HELP:
        try:
            expectation_tree = select_parse(
                parse_latex(expectation.latex),
                MathContext(declared_functions=frozenset(expectation.functions)),
            )
            gap = make_gap_hint(
                expectation_tree, GapPolicy.BLANK_ONE_LEAF, seed=rng_seed
            )
        except (ParseError, TutorError):
            return None
        return Intervention(
            type=InterventionType.MATH_GAP_HINT,
            tier=None,
            content_id=f"gap:{exercise.id}:{rng_seed}",
            text=gap.rendered,
            score=MATH_HINT_SCORE,
            extra={"answers": list(gap.answers), "policy": gap.policy.value},
        )
    if last_turn.attempt_text is None:
        return None
    try:
        attempt_tree, expectation_tree = parse_math_attempt(
            last_turn.attempt_text, expectation
        )
    except ParseError:
        return None
    verdict = check_equivalence(attempt_tree, expectation_tree, seed=rng_seed)
    if verdict.status is not VerdictStatus.DIFFERENT or verdict.diff is None:
        return None
    return Intervention(
        type=InterventionType.MATH_DIFF_HINT,
        tier=None,
        content_id=f"diff:{exercise.id}:{verdict.diff.kind.value}",
        text=verdict.diff.message(),
        score=MATH_HINT_SCORE,
        extra={
            "kind": verdict.diff.kind.value,
            "expected": verdict.diff.expected,
            "found": verdict.diff.found,
        },
    )


def select_intervention(
    profile: StudentProfile,
    last_turn: InteractionTurn,
    exercise: Exercise,
    models: ModelBundle,
    rng_seed: int = 0,
    mode: Mode = Mode.EXPERIMENT,
    history: Sequence[InteractionTurn] = (),
) -> Intervention:
    if not (
        last_turn.grade is Grade.INCORRECT or last_turn.kind is EventKind.HELP
    ):
        raise TutorError(
            "interventions are selected after an incorrect attempt "
            "or a help request"
        )
    tier_hints = _text_hint_candidates(profile, exercise, models, history)
    pool: list[Intervention] = list(tier_hints.values())
    wiki = _wiki_candidate(exercise, models)
    if wiki is not None:
        pool.append(wiki)
    math = _math_candidate(last_turn, exercise, rng_seed)
    if math is not None:
        pool.append(math)
    if not pool:
        return stock_hint()

    lo, hi = profile.skill - ZPD_BAND, profile.skill + ZPD_BAND
    filtered = [c for c in pool if lo <= c.score <= hi]
    if not filtered:
        filtered = pool

    if mode is Mode.EXPERIMENT and tier_hints:
        tiers = [t for t in ModelTier if t in tier_hints]
        rng = np.random.default_rng(rng_seed)
        tier = tiers[int(rng.integers(len(tiers)))]
        in_band = [
            c for c in filtered
            if c.type is InterventionType.TEXT_HINT and c.tier is tier
        ]
        return in_band[0] if in_band else tier_hints[tier]

    filtered.sort(key=lambda c: (-c.score, _TYPE_ORDER[c.type], c.text))
    return filtered[0]
