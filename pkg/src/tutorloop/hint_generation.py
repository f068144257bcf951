"""Three-step text hint generation.

Step 1 pulls keywords (noun phrases) out of the question, step 2 finds
clause spans in the reference solutions that avoid those keywords, step 3
wraps a surviving span in a discourse cue to form a grammatical hint.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Sequence, TYPE_CHECKING

from .errors import TutorError
from .text_analysis import (
    ClauseSpan,
    extract_noun_phrases,
    INTERROGATIVE_PRONOUNS,
    segment_clauses,
    split_sentences,
    tokenize,
)

if TYPE_CHECKING:  # pragma: no cover
    from .tutoring_core import Exercise

MIN_SPAN_TOKENS = 3


@dataclass(frozen=True)
class KeywordSet:
    keywords: frozenset[str]
    heads: frozenset[str]
    source: str = ""

    def __iter__(self):
        return iter(self.keywords)

    def __len__(self) -> int:
        return len(self.keywords)


@dataclass(frozen=True)
class DiscourseCue:
    cue_id: str
    template: str
    required_introducer: str | None = None

    def __post_init__(self) -> None:
        if self.template.count("{span}") != 1:
            raise TutorError(
                f"cue {self.cue_id!r} template must contain exactly one {{span}} slot"
            )


@dataclass(frozen=True)
class HintCandidate:
    text: str
    exercise_id: str
    expectation_id: int
    span: ClauseSpan
    cue_id: str
    keyword_free: bool = True


def default_cues() -> list[DiscourseCue]:
    path = resources.files("tutorloop.data").joinpath("cues.json")
    return load_cues_text(path.read_text(encoding="utf-8"))


def load_cues_text(text: str) -> list[DiscourseCue]:
    raw = json.loads(text)
    return [
        DiscourseCue(
            cue_id=entry["cue_id"],
            template=entry["template"],
            required_introducer=entry.get("required_introducer"),
        )
        for entry in raw
    ]


def extract_question_keywords(question: str) -> KeywordSet:
    if not question.strip():
        raise TutorError("question must be non-empty")
    phrases = extract_noun_phrases(tokenize(question))
    keywords = set()
    heads = set()
    for phrase in phrases:
        if phrase.head_token.normalized in INTERROGATIVE_PRONOUNS:
            continue
        keywords.add(phrase.keyword)
        heads.add(phrase.head_token.normalized)
    return KeywordSet(frozenset(keywords), frozenset(heads), source=question)


def select_hint_spans(expectation: str, keywords: KeywordSet) -> list[ClauseSpan]:
    """Keyword-free clause spans of the expectation, in order of appearance."""
    if not expectation.strip():
        raise TutorError("expectation must be non-empty")
    selected: list[ClauseSpan] = []
    for sentence in split_sentences(expectation):
        tokens = tokenize(sentence)
        if not tokens:
            continue
        offset = expectation.find(sentence)
        source = sentence if offset < 0 else expectation
        if offset > 0:
            tokens = [
                type(t)(t.surface, t.normalized, t.tag,
                        (t.span[0] + offset, t.span[1] + offset))
                for t in tokens
            ]
        for span in segment_clauses(tokens, keywords.keywords, source_text=source):
            if span.contains_keyword:
                continue
            if span.token_count() < MIN_SPAN_TOKENS:
                continue
            selected.append(span)
    return selected


def assemble_hint(
    span: ClauseSpan,
    cues: Sequence[DiscourseCue],
    exercise_id: str = "",
    expectation_id: int = 0,
) -> HintCandidate:
    if not cues:
        raise TutorError("cue inventory is empty")
    if span.contains_keyword:
        raise TutorError("refusing to build a hint from a keyword-bearing span")
    introducer = span.introducer.normalized if span.introducer else None
    cue = None
    for candidate in cues:
        if candidate.required_introducer == introducer:
            cue = candidate
            break
    if cue is None:
        for candidate in cues:
            if candidate.required_introducer is None:
                cue = candidate
                break
    if cue is None:
        cue = cues[0]
    text = cue.template.replace("{span}", span.text)
    text = text[0].upper() + text[1:]
    if not text.endswith((".", "!", "?")):
        text += "."
    return HintCandidate(
        text=text,
        exercise_id=exercise_id,
        expectation_id=expectation_id,
        span=span,
        cue_id=cue.cue_id,
    )


def generate_candidates(
    exercise: "Exercise", cues: Sequence[DiscourseCue] | None = None
) -> list[HintCandidate]:
    """Full 3-step pipeline across all expectations, deduplicated on text."""
    if not exercise.expectations:
        raise TutorError(f"exercise {exercise.id!r} has no expectations")
    if cues is None:
        cues = default_cues()
    keywords = extract_question_keywords(exercise.question)
    candidates: list[HintCandidate] = []
    seen: set[str] = set()
    for exp_idx, expectation in enumerate(exercise.expectations):
        for span in select_hint_spans(expectation, keywords):
            candidate = assemble_hint(span, cues, exercise.id, exp_idx)
            key = candidate.text.lower()
            if key in seen:
                continue
            seen.add(key)
            candidates.append(candidate)
    return candidates
