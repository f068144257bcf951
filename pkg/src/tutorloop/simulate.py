"""Deterministic cohort simulation against the live session engine.

Students are simple stochastic agents with two traits: a base ``ability``
(their chance of producing a correct attempt unaided) and a
``hint_responsiveness`` (how much a shown hint raises that chance, scaled
by the hint's ranked score):

    P(correct attempt) = clamp(ability + responsiveness * hint_score, 0, 1)

The generative model is intentionally transparent so expected per-tier
learning gains are derivable in closed form: with responsiveness 0 every
tier performs identically, and with positive responsiveness the measured
gain ordering follows the tiers' calibrated hint scores.

Every event goes through the real engine (grading, state machine,
intervention selection, logging), so a simulation log is a faithful
production log: it replays, and the analytics pipeline consumes it
unchanged. All randomness derives from the master seed, and timestamps
come from a synthetic clock, so the same call produces a byte-identical
log file.

Per exercise a student may (with small probability) skip it outright or
ask for help before the first attempt; otherwise they attempt up to
``max_attempts`` times, seeing an intervention after each incorrect
attempt. After each post-intervention attempt the student usually rates
the intervention: helpful iff that attempt succeeded. A student who
exhausts their attempts abandons the session (it stays open, which is a
legal non-terminal state).
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import TutorError
from .storage import LogRecord
from .tutoring_core import (
    Exercise,
    Grade,
    Mode,
    ModelBundle,
    SessionState,
    StudentProfile,
)
from .engine import TutorEngine

__all__ = [
    "SimulatedStudent",
    "SimulationResult",
    "make_cohort",
    "simulate",
]


@dataclass(frozen=True)
class SimulatedStudent:
    """A stochastic test student; both traits live in [0, 1]."""

    seed: int
    ability: float
    hint_responsiveness: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.ability <= 1.0:
            raise TutorError("ability must lie in [0, 1]")
        if not 0.0 <= self.hint_responsiveness <= 1.0:
            raise TutorError("hint_responsiveness must lie in [0, 1]")

    def success_probability(self, hint_score: float) -> float:
        p = self.ability + self.hint_responsiveness * hint_score
        return min(1.0, max(0.0, p))


@dataclass(frozen=True)
class SimulationResult:
    log_path: Path
    students: tuple[SimulatedStudent, ...]
    states: dict[str, SessionState]
    profiles: dict[str, StudentProfile]
    records: tuple[LogRecord, ...]


def make_cohort(
    n_students: int,
    seed: int,
    *,
    ability_range: tuple[float, float] = (0.15, 0.45),
    responsiveness_range: tuple[float, float] = (0.0, 0.0),
) -> list[SimulatedStudent]:
    """Draw a cohort with traits uniform over the given ranges."""
    if n_students <= 0:
        raise TutorError("n_students must be positive")
    rng = np.random.default_rng(seed)
    students = []
    for i in range(n_students):
        ability = float(rng.uniform(*ability_range))
        responsiveness = float(rng.uniform(*responsiveness_range))
        students.append(
            SimulatedStudent(
                seed=seed * 100003 + i,
                ability=ability,
                hint_responsiveness=responsiveness,
            )
        )
    return students


def _correct_attempt(exercise: Exercise) -> str:
    if exercise.expectations:
        return exercise.expectations[0]
    if exercise.math_expectation is not None:
        return exercise.math_expectation.latex
    raise TutorError(f"exercise {exercise.id!r} has nothing to answer")


def _wrong_attempt(exercise: Exercise, attempt_index: int) -> str:
    if exercise.expectations:
        return f"Honestly I am stuck on this one (try {attempt_index})."
    return exercise.math_expectation.latex + " + 999"


def _synthetic_clock(start: str = "2026-01-01T00:00:00Z"):
    base = datetime.strptime(start, "%Y-%m-%dT%H:%M:%SZ").replace(
        tzinfo=timezone.utc
    )
    counter = [0]

    def clock() -> str:
        counter[0] += 1
        return (base + timedelta(seconds=counter[0])).strftime(
            "%Y-%m-%dT%H:%M:%SZ"
        )

    return clock


def simulate(
    bank: Sequence[Exercise],
    models: ModelBundle,
    n_students: int,
    seed: int,
    *,
    out_path: Union[str, Path],
    mode: Mode = Mode.EXPERIMENT,
    ability_range: tuple[float, float] = (0.15, 0.45),
    responsiveness_range: tuple[float, float] = (0.0, 0.0),
    students: Optional[Sequence[SimulatedStudent]] = None,
    max_attempts: int = 3,
    skip_rate: float = 0.05,
    help_rate: float = 0.10,
    rating_rate: float = 0.70,
) -> SimulationResult:
    """Run a cohort through every bank exercise and write the log.

    The log file is byte-identical across runs with the same arguments.
    """
    if students is None:
        students = make_cohort(
            n_students,
            seed,
            ability_range=ability_range,
            responsiveness_range=responsiveness_range,
        )
    elif n_students != len(students):
        raise TutorError("n_students does not match the cohort size")

    out_path = Path(out_path)
    if out_path.exists():
        out_path.unlink()
    engine = TutorEngine(
        bank,
        models,
        mode=mode,
        master_seed=seed,
        log_path=out_path,
        clock=_synthetic_clock(),
    )
    try:
        for i, student in enumerate(students):
            rng = np.random.default_rng(student.seed)
            student_id = f"sim-{i:04d}"
            for exercise in bank:
                _run_session(
                    engine,
                    student_id,
                    exercise,
                    student,
                    rng,
                    max_attempts=max_attempts,
                    skip_rate=skip_rate,
                    help_rate=help_rate,
                    rating_rate=rating_rate,
                )
        return SimulationResult(
            log_path=out_path,
            students=tuple(students),
            states=engine.session_states(),
            profiles=engine.profiles(),
            records=tuple(engine.records()),
        )
    finally:
        engine.close()


def _run_session(
    engine: TutorEngine,
    student_id: str,
    exercise: Exercise,
    student: SimulatedStudent,
    rng: np.random.Generator,
    *,
    max_attempts: int,
    skip_rate: float,
    help_rate: float,
    rating_rate: float,
) -> None:
    session_id, _ = engine.open_session(student_id, exercise.id)
    opening = rng.random()
    hint_score = 0.0
    pending_rating: Optional[str] = None
    if opening < skip_rate:
        engine.skip(session_id)
        return
    if opening < skip_rate + help_rate:
        outcome = engine.request_help(session_id)
        hint_score = outcome.intervention.score
        pending_rating = outcome.intervention_id
    for attempt_index in range(1, max_attempts + 1):
        success = rng.random() < student.success_probability(hint_score)
        text = (
            _correct_attempt(exercise)
            if success
            else _wrong_attempt(exercise, attempt_index)
        )
        outcome = engine.attempt(session_id, text)
        if pending_rating is not None and rng.random() < rating_rate:
            engine.rate(
                pending_rating, helpful=outcome.grade.grade is Grade.CORRECT
            )
        pending_rating = None
        if outcome.grade.grade is Grade.CORRECT:
            return
        hint_score = outcome.intervention.score
        pending_rating = outcome.intervention_id
