#!/usr/bin/env python3
"""Write tests/fixtures/table2.jsonl, an interaction log whose per-tier
learning gains reproduce the published results table.

The trial counts come from scripts/infer_gain_counts.py, which recovers
them from the printed percentages and confidence intervals. Each trial is
one short session:

  * before-second-attempt trials: incorrect first attempt carrying the
    tier-tagged hint, then a second attempt whose grade encodes success;
  * later trials: an untagged incorrect attempt first, so the tier-tagged
    hint lands before the third attempt and the trial only counts under
    the all-attempts filter.

Six of the sessions also rate their intervention (five helpful, one not),
so the "either or both" helpfulness rate over rated groups is 5/6 =
83.33%, matching the published figure. The file goes through the storage
layer, so it carries the schema header and passes sequence validation;
the log is replayable and `report --log tests/fixtures/table2.jsonl`
reproduces all six cells.
"""
from __future__ import annotations

import sys
from datetime import datetime, timedelta, timezone
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from tutorloop.feedback_models import ModelTier
from tutorloop.storage import LogRecord, LogWriter, RatingRecord
from tutorloop.tutoring_core import (
    EventKind,
    Grade,
    InteractionTurn,
    InterventionRef,
    InterventionType,
)

# Per tier: (before_successes, before_trials, later_successes, later_trials)
TIER_COUNTS = {
    ModelTier.BASELINE: (11, 29, 4, 9),
    ModelTier.SHALLOW: (18, 35, 2, 8),
    ModelTier.DEEP: (26, 43, 7, 25),
}

EXERCISE_ID = "ex-1"
RATED_STUDENTS = 6  # first six baseline before-bucket students rate
RATED_UNHELPFUL = {5}  # index of the single "not helpful" rating


def _clock():
    base = datetime(2026, 2, 1, tzinfo=timezone.utc)
    n = [0]

    def tick() -> str:
        n[0] += 1
        return (base + timedelta(seconds=n[0])).strftime(
            "%Y-%m-%dT%H:%M:%SZ"
        )

    return tick


def _ref(tier: ModelTier) -> InterventionRef:
    return InterventionRef(
        type=InterventionType.TEXT_HINT,
        tier=tier,
        content_id=f"hint:{EXERCISE_ID}:{tier.value}:case-when",
    )


def _attempt(sequence, attempt_index, grade, ref=None) -> InteractionTurn:
    return InteractionTurn(
        sequence=sequence,
        exercise_id=EXERCISE_ID,
        attempt_index=attempt_index,
        kind=EventKind.ATTEMPT,
        attempt_text="(fixture attempt)",
        grade=grade,
        score=1.0 if grade is Grade.CORRECT else 0.0,
        intervention=ref,
    )


def main() -> None:
    out = ROOT / "tests" / "fixtures" / "table2.jsonl"
    out.parent.mkdir(parents=True, exist_ok=True)
    if out.exists():
        out.unlink()
    tick = _clock()
    writer = LogWriter(out)
    try:
        for tier, (bs, bn, ls, ln) in TIER_COUNTS.items():
            for i in range(bn):
                student = f"{tier.value}-b{i:02d}"
                success = i < bs
                writer.append(
                    LogRecord(
                        student, "sess", _attempt(1, 1, Grade.INCORRECT, _ref(tier)),
                        timestamp=tick(),
                    )
                )
                writer.append(
                    LogRecord(
                        student,
                        "sess",
                        _attempt(
                            2, 2, Grade.CORRECT if success else Grade.INCORRECT
                        ),
                        timestamp=tick(),
                    )
                )
                if tier is ModelTier.BASELINE and i < RATED_STUDENTS:
                    writer.append_rating(
                        RatingRecord(
                            student_id=student,
                            session_id="sess",
                            sequence=3,
                            target_sequence=1,
                            helpful=i not in RATED_UNHELPFUL,
                            timestamp=tick(),
                        )
                    )
            for i in range(ln):
                student = f"{tier.value}-l{i:02d}"
                success = i < ls
                writer.append(
                    LogRecord(
                        student, "sess", _attempt(1, 1, Grade.INCORRECT),
                        timestamp=tick(),
                    )
                )
                writer.append(
                    LogRecord(
                        student, "sess", _attempt(2, 2, Grade.INCORRECT, _ref(tier)),
                        timestamp=tick(),
                    )
                )
                writer.append(
                    LogRecord(
                        student,
                        "sess",
                        _attempt(
                            3, 3, Grade.CORRECT if success else Grade.INCORRECT
                        ),
                        timestamp=tick(),
                    )
                )
    finally:
        writer.close()
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
