#!/usr/bin/env python3
"""Build the bundled demo exercise bank.

The bank mixes free-text conceptual questions (whose reference solutions
carry subordinate clauses the hint generator can cue) with formula
exercises that exercise the math grading and gap/diff hint paths. Text
expectations deliberately phrase their key clause with an introducer
(when / if / because / that) whose content avoids the question's noun
phrases, so every text exercise yields at least one rankable hint
candidate. Keywords line up with titles in the bundled reading corpus so
passage-based explanations resolve too.

Writes src/tutorloop/data/exercise_bank.jsonl. Run from the repo root:

    python scripts/build_exercise_bank.py
"""
from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from tutorloop.hint_generation import default_cues, generate_candidates
from tutorloop.storage import save_exercises
from tutorloop.tutoring_core import Exercise, MathExpectation


BANK = [
    Exercise(
        id="ml-001",
        question="What is the difference between overfitting and underfitting?",
        expectations=(
            "A model is overfitting when it performs well on training data"
            " but poorly on new data.",
            "A model is underfitting when it has a high bias.",
        ),
        tags=("model-fit", "core-concepts"),
        difficulty=0.4,
    ),
    Exercise(
        id="ml-002",
        question="How does gradient descent make progress?",
        expectations=(
            "It works because every update takes a small step downhill"
            " on the loss surface.",
        ),
        tags=("optimization",),
        difficulty=0.5,
    ),
    Exercise(
        id="ml-003",
        question="Why is cross-validation a trustworthy way to estimate skill?",
        expectations=(
            "It is trustworthy because every example serves exactly once"
            " as held-out evaluation data.",
        ),
        tags=("evaluation",),
        difficulty=0.5,
    ),
    Exercise(
        id="ml-004",
        question="What does regularization do to a model?",
        expectations=(
            "It shrinks the weights, and that matters when they would"
            " otherwise grow without limit to fit noise.",
        ),
        tags=("core-concepts",),
        difficulty=0.6,
    ),
    Exercise(
        id="ml-005",
        question="When would you prefer recall over precision?",
        expectations=(
            "Recall wins if a missed positive carries a far higher cost"
            " than a false alarm.",
        ),
        tags=("evaluation",),
        difficulty=0.6,
    ),
    Exercise(
        id="ml-006",
        question="What tension does the bias-variance tradeoff describe?",
        expectations=(
            "It captures a tension because lowering one error source"
            " usually raises the other.",
        ),
        tags=("core-concepts",),
        difficulty=0.7,
    ),
    Exercise(
        id="ml-007",
        question="Why must the test set stay untouched during training?",
        expectations=(
            "Remember that an honest estimate needs examples never used"
            " for fitting.",
        ),
        tags=("evaluation",),
        difficulty=0.4,
    ),
    Exercise(
        id="alg-001",
        question="Write the slope-intercept form of a straight line"
        " through intercept b with slope m.",
        math_expectation=MathExpectation(latex=r"y = m \cdot x + b"),
        tags=("algebra",),
        difficulty=0.3,
    ),
    Exercise(
        id="alg-002",
        question="Write the perimeter P of a rectangle with length l"
        " and width w.",
        math_expectation=MathExpectation(latex=r"P = 2 \cdot l + 2 \cdot w"),
        tags=("algebra", "geometry"),
        difficulty=0.3,
    ),
    Exercise(
        id="alg-003",
        question="State the Pythagorean theorem for a right triangle"
        " with legs a, b and hypotenuse c.",
        expectations=(
            "Remember that the longest side squared equals the two"
            " shorter sides squared and then added together.",
        ),
        math_expectation=MathExpectation(latex=r"c^2 = a^2 + b^2"),
        tags=("algebra", "geometry"),
        difficulty=0.5,
    ),
]


def main() -> None:
    cues = default_cues()
    for exercise in BANK:
        if exercise.expectations:
            candidates = generate_candidates(exercise, cues)
            if not candidates:
                raise SystemExit(
                    f"{exercise.id}: expectations yield no hint candidates"
                )
            print(f"{exercise.id}: {len(candidates)} hint candidate(s)")
        else:
            print(f"{exercise.id}: math-only")
    out = ROOT / "src" / "tutorloop" / "data" / "exercise_bank.jsonl"
    save_exercises(out, BANK)
    print(f"wrote {len(BANK)} exercises to {out}")


if __name__ == "__main__":
    main()
