"""Session orchestration over the inner tutoring loop.

The engine owns the session store (in memory) and the append-only
interaction log (write-ahead: every event is logged before the response is
returned). Given the same bank, models, seed, and event order it is fully
deterministic, so any log it produced can be replayed to reconstruct the
exact session states and profiles — that is how restarts recover and how
the replay checks in the test suite work.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

from .errors import TutorError
from .feedback_models import (
    DecisionTree,
    FeatureExtractor,
    ModelTier,
    TrainingExample,
    TreeNode,
    feature_names,
)
from .hint_generation import generate_candidates
from .storage import LogRecord, LogWriter, RatingRecord, load_log
from .tutoring_core import (
    EventKind,
    Exercise,
    Grade,
    GradeResult,
    InteractionTurn,
    Intervention,
    Mode,
    ModelBundle,
    Phase,
    SessionState,
    StudentProfile,
    advance_session,
    grade_attempt,
    select_intervention,
    update_profile,
)

__all__ = [
    "CALIBRATED_SCORES",
    "ReplayResult",
    "TurnOutcome",
    "TutorEngine",
    "UnknownSessionError",
    "build_training_examples",
    "calibrated_bundle",
    "default_bank",
    "replay_log",
    "utc_now",
]

# Hint-quality probabilities assigned to the constant ranking models used by
# simulation studies and CLI demos when no trained artifacts are supplied.
# They are ordered on purpose: with score-responsive simulated students the
# deeper tiers then produce larger measured gains, which is the effect the
# analytics layer is meant to detect.
CALIBRATED_SCORES: dict[ModelTier, float] = {
    ModelTier.BASELINE: 0.30,
    ModelTier.SHALLOW: 0.50,
    ModelTier.DEEP: 0.70,
}


def default_bank() -> list[Exercise]:
    """The demo exercise bank bundled with the package."""
    from .storage import load_exercises

    path = resources.files("tutorloop.data").joinpath("exercise_bank.jsonl")
    with resources.as_file(path) as concrete:
        return load_exercises(concrete)


def calibrated_bundle(
    bank: Sequence[Exercise],
    scores: Optional[dict[ModelTier, float]] = None,
) -> ModelBundle:
    """A model bundle whose tier rankers are constant-probability leaves.

    Useful wherever deterministic, interpretable hint scores matter more
    than learned ranking: simulation studies and command-line demos.
    """
    scores = dict(CALIBRATED_SCORES if scores is None else scores)
    tier_models = {}
    for tier, score in scores.items():
        positives = round(score * 1000)
        tier_models[tier] = DecisionTree(
            root=TreeNode(counts=(1000 - positives, positives)),
            n_features=len(feature_names(tier)),
            max_depth=1,
            min_samples_leaf=1,
        )
    return ModelBundle(
        extractor=FeatureExtractor.from_exercises(bank),
        tier_models=tier_models,
    )


class UnknownSessionError(TutorError):
    """Request referenced a session or intervention the engine never issued."""


def utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass
class _SessionRuntime:
    student_id: str
    session_id: str
    exercise: Exercise
    state: SessionState
    turns: list[InteractionTurn] = field(default_factory=list)


@dataclass(frozen=True)
class TurnOutcome:
    """Everything a caller needs to render the engine's reaction to an event."""

    session_id: str
    state: SessionState
    turn: InteractionTurn
    grade: Optional[GradeResult] = None
    intervention: Optional[Intervention] = None
    intervention_id: Optional[str] = None


class TutorEngine:
    def __init__(
        self,
        bank: Sequence[Exercise],
        models: ModelBundle,
        *,
        mode: Mode = Mode.EXPERIMENT,
        master_seed: int = 0,
        log_path: Optional[Union[str, Path]] = None,
        clock: Optional[Callable[[], str]] = None,
    ) -> None:
        if not bank:
            raise TutorError("engine needs a non-empty exercise bank")
        self.bank: dict[str, Exercise] = {}
        for exercise in bank:
            if exercise.id in self.bank:
                raise TutorError(f"duplicate exercise id {exercise.id!r} in bank")
            self.bank[exercise.id] = exercise
        self.bank_order = tuple(e.id for e in bank)
        self.models = models
        self.mode = mode
        self.master_seed = master_seed
        self.clock = clock or utc_now

        self._sessions: dict[str, _SessionRuntime] = {}
        self._profiles: dict[str, StudentProfile] = {}
        self._student_history: dict[str, list[InteractionTurn]] = {}
        self._sessions_per_student: dict[str, int] = {}
        self._started_exercises: dict[str, set[str]] = {}
        # intervention id -> (session_id, sequence of the turn that carried it)
        self._interventions: dict[str, tuple[str, int]] = {}
        self._records: list[LogRecord] = []
        self._record_index: dict[tuple[str, int], int] = {}
        self._turn_counter = 0
        self._lock = threading.Lock()
        self._session_locks: dict[str, threading.Lock] = {}

        self._writer: Optional[LogWriter] = None
        if log_path is not None:
            path = Path(log_path)
            if path.exists() and path.stat().st_size > 0:
                self._absorb(load_log(path))
            self._writer = LogWriter(path)

    # -- bookkeeping ---------------------------------------------------------

    def profile(self, student_id: str) -> StudentProfile:
        return self._profiles.setdefault(
            student_id, StudentProfile(id=student_id)
        )

    def profiles(self) -> dict[str, StudentProfile]:
        return dict(self._profiles)

    def session_states(self) -> dict[str, SessionState]:
        return {sid: rt.state for sid, rt in self._sessions.items()}

    def records(self) -> list[LogRecord]:
        """The log as written so far, ratings folded, in append order."""
        return list(self._records)

    def close(self) -> None:
        if self._writer is not None:
            self._writer.close()
            self._writer = None

    def __enter__(self) -> "TutorEngine":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    def _session(self, session_id: str) -> _SessionRuntime:
        runtime = self._sessions.get(session_id)
        if runtime is None:
            raise UnknownSessionError(f"unknown session {session_id!r}")
        return runtime

    def _session_lock(self, session_id: str) -> threading.Lock:
        with self._lock:
            return self._session_locks.setdefault(session_id, threading.Lock())

    def _next_sequence(self, runtime: _SessionRuntime) -> int:
        if self._writer is not None:
            return self._writer.next_sequence(
                runtime.student_id, runtime.session_id
            )
        last = 0
        for key, index in self._record_index.items():
            if key[0] == runtime.session_id:
                last = max(last, self._records[index].turn.sequence)
        return last + 1

    def _log_turn(
        self, runtime: _SessionRuntime, turn: InteractionTurn, seed: int
    ) -> None:
        record = LogRecord(
            student_id=runtime.student_id,
            session_id=runtime.session_id,
            turn=turn,
            timestamp=self.clock(),
            seed=seed,
        )
        if self._writer is not None:
            self._writer.append(record)
        self._record_index[(runtime.session_id, turn.sequence)] = len(
            self._records
        )
        self._records.append(record)
        runtime.turns.append(turn)
        self._student_history.setdefault(runtime.student_id, []).append(turn)

    # -- the public event surface --------------------------------------------

    def open_session(
        self, student_id: str, exercise_id: Optional[str] = None
    ) -> tuple[str, Exercise]:
        if not student_id or not student_id.strip():
            raise TutorError("student_id must be non-empty")
        with self._lock:
            if exercise_id is None:
                exercise_id = self._pick_exercise(student_id)
            exercise = self.bank.get(exercise_id)
            if exercise is None:
                raise TutorError(f"unknown exercise {exercise_id!r}")
            n = self._sessions_per_student.get(student_id, 0) + 1
            self._sessions_per_student[student_id] = n
            session_id = f"{student_id}-s{n}"
            self._sessions[session_id] = _SessionRuntime(
                student_id=student_id,
                session_id=session_id,
                exercise=exercise,
                state=SessionState(Phase.AWAITING_ATTEMPT, exercise.id),
            )
            self._started_exercises.setdefault(student_id, set()).add(
                exercise.id
            )
            self.profile(student_id)
            return session_id, exercise

    def _pick_exercise(self, student_id: str) -> str:
        started = self._started_exercises.get(student_id, set())
        for exercise_id in self.bank_order:
            if exercise_id not in started:
                return exercise_id
        return self.bank_order[0]

    def attempt(self, session_id: str, text: str) -> TurnOutcome:
        with self._session_lock(session_id):
            runtime = self._session(session_id)
            seed = self.master_seed + self._turn_counter
            result = grade_attempt(text, runtime.exercise, seed=seed)
            new_state = advance_session(
                runtime.state, EventKind.ATTEMPT, result.grade
            )
            turn = InteractionTurn(
                sequence=self._next_sequence(runtime),
                exercise_id=runtime.exercise.id,
                attempt_index=runtime.state.attempt_index,
                kind=EventKind.ATTEMPT,
                attempt_text=text,
                grade=result.grade,
                score=result.score,
            )
            intervention = None
            if result.grade is Grade.INCORRECT:
                intervention = select_intervention(
                    self.profile(runtime.student_id),
                    turn,
                    runtime.exercise,
                    self.models,
                    rng_seed=seed,
                    mode=self.mode,
                    history=tuple(
                        self._student_history.get(runtime.student_id, ())
                    ),
                )
                turn = replace(turn, intervention=intervention.ref())
            self._turn_counter += 1
            self._log_turn(runtime, turn, seed)
            runtime.state = new_state
            self._profiles[runtime.student_id] = update_profile(
                self.profile(runtime.student_id), turn, runtime.exercise
            )
            intervention_id = None
            if intervention is not None:
                intervention_id = f"{session_id}-t{turn.sequence}"
                self._interventions[intervention_id] = (
                    session_id,
                    turn.sequence,
                )
            return TurnOutcome(
                session_id=session_id,
                state=new_state,
                turn=turn,
                grade=result,
                intervention=intervention,
                intervention_id=intervention_id,
            )

    def request_help(self, session_id: str) -> TurnOutcome:
        with self._session_lock(session_id):
            runtime = self._session(session_id)
            seed = self.master_seed + self._turn_counter
            new_state = advance_session(runtime.state, EventKind.HELP)
            turn = InteractionTurn(
                sequence=self._next_sequence(runtime),
                exercise_id=runtime.exercise.id,
                attempt_index=runtime.state.attempt_index,
                kind=EventKind.HELP,
            )
            intervention = select_intervention(
                self.profile(runtime.student_id),
                turn,
                runtime.exercise,
                self.models,
                rng_seed=seed,
                mode=self.mode,
                history=tuple(self._student_history.get(runtime.student_id, ())),
            )
            turn = replace(turn, intervention=intervention.ref())
            self._turn_counter += 1
            self._log_turn(runtime, turn, seed)
            runtime.state = new_state
            intervention_id = f"{session_id}-t{turn.sequence}"
            self._interventions[intervention_id] = (session_id, turn.sequence)
            return TurnOutcome(
                session_id=session_id,
                state=new_state,
                turn=turn,
                intervention=intervention,
                intervention_id=intervention_id,
            )

    def skip(self, session_id: str) -> TurnOutcome:
        with self._session_lock(session_id):
            runtime = self._session(session_id)
            seed = self.master_seed + self._turn_counter
            new_state = advance_session(runtime.state, EventKind.SKIP)
            turn = InteractionTurn(
                sequence=self._next_sequence(runtime),
                exercise_id=runtime.exercise.id,
                attempt_index=runtime.state.attempt_index,
                kind=EventKind.SKIP,
            )
            self._turn_counter += 1
            self._log_turn(runtime, turn, seed)
            runtime.state = new_state
            self._profiles[runtime.student_id] = update_profile(
                self.profile(runtime.student_id), turn, runtime.exercise
            )
            return TurnOutcome(
                session_id=session_id, state=new_state, turn=turn
            )

    def rate(self, intervention_id: str, helpful: bool) -> None:
        target = self._interventions.get(intervention_id)
        if target is None:
            raise UnknownSessionError(
                f"unknown intervention {intervention_id!r}"
            )
        session_id, sequence = target
        with self._session_lock(session_id):
            runtime = self._session(session_id)
            index = self._record_index[(session_id, sequence)]
            record = self._records[index]
            if record.turn.helpful is not None:
                raise TutorError(
                    f"intervention {intervention_id!r} is already rated"
                )
            rating = RatingRecord(
                student_id=runtime.student_id,
                session_id=session_id,
                sequence=self._next_sequence(runtime)
                if self._writer is not None
                else sequence + 1,
                target_sequence=sequence,
                helpful=helpful,
                timestamp=self.clock(),
            )
            if self._writer is not None:
                self._writer.append_rating(rating)
            folded = replace(record, turn=replace(record.turn, helpful=helpful))
            self._records[index] = folded
            for i, turn in enumerate(runtime.turns):
                if turn.sequence == sequence:
                    runtime.turns[i] = folded.turn
                    break

    # -- restart recovery ----------------------------------------------------

    def _absorb(self, records: Sequence[LogRecord]) -> None:
        """Rebuild the session store from an existing log (ratings already
        folded by load_log)."""
        for record in records:
            turn = record.turn
            runtime = self._sessions.get(record.session_id)
            if runtime is None:
                exercise = self.bank.get(turn.exercise_id)
                if exercise is None:
                    raise TutorError(
                        f"log references exercise {turn.exercise_id!r} "
                        "missing from the bank"
                    )
                runtime = _SessionRuntime(
                    student_id=record.student_id,
                    session_id=record.session_id,
                    exercise=exercise,
                    state=SessionState(Phase.AWAITING_ATTEMPT, exercise.id),
                )
                self._sessions[record.session_id] = runtime
                self._sessions_per_student[record.student_id] = (
                    self._sessions_per_student.get(record.student_id, 0) + 1
                )
                self._started_exercises.setdefault(
                    record.student_id, set()
                ).add(exercise.id)
            runtime.state = advance_session(
                runtime.state, turn.kind, turn.grade
            )
            self._record_index[(record.session_id, turn.sequence)] = len(
                self._records
            )
            self._records.append(record)
            runtime.turns.append(turn)
            self._student_history.setdefault(record.student_id, []).append(turn)
            self._profiles[record.student_id] = update_profile(
                self.profile(record.student_id), turn, runtime.exercise
            )
            if turn.intervention is not None:
                intervention_id = f"{record.session_id}-t{turn.sequence}"
                self._interventions[intervention_id] = (
                    record.session_id,
                    turn.sequence,
                )
            self._turn_counter += 1


# ---------------------------------------------------------------------------
# Replay and training-set extraction


@dataclass(frozen=True)
class ReplayResult:
    states: dict[str, SessionState]
    profiles: dict[str, StudentProfile]
    records: tuple[LogRecord, ...]


def replay_log(
    records: Sequence[LogRecord],
    bank: Sequence[Exercise],
    *,
    verify_grades: bool = False,
) -> ReplayResult:
    """Drive every logged turn back through the session state machine.

    Raises if any logged event is illegal in its reconstructed state, so a
    log that replays cleanly is internally consistent. With
    ``verify_grades`` attempts are re-graded (using each record's logged
    seed) and compared against the recorded grade.
    """
    by_id = {e.id: e for e in bank}
    states: dict[str, SessionState] = {}
    profiles: dict[str, StudentProfile] = {}
    for record in records:
        turn = record.turn
        exercise = by_id.get(turn.exercise_id)
        if exercise is None:
            raise TutorError(
                f"log references exercise {turn.exercise_id!r} missing "
                "from the bank"
            )
        state = states.get(record.session_id)
        if state is None:
            state = SessionState(Phase.AWAITING_ATTEMPT, exercise.id)
        if state.exercise_id != turn.exercise_id:
            raise TutorError(
                f"session {record.session_id!r} switches exercise mid-way"
            )
        if turn.kind is EventKind.ATTEMPT and turn.attempt_index != state.attempt_index:
            raise TutorError(
                f"session {record.session_id!r} attempt_index "
                f"{turn.attempt_index} does not match replayed state "
                f"{state.attempt_index}"
            )
        if verify_grades and turn.kind is EventKind.ATTEMPT:
            regraded = grade_attempt(
                turn.attempt_text, exercise, seed=record.seed or 0
            )
            if regraded.grade is not turn.grade:
                raise TutorError(
                    f"session {record.session_id!r} sequence {turn.sequence}: "
                    f"recorded grade {turn.grade.value} but replay graded "
                    f"{regraded.grade.value}"
                )
        states[record.session_id] = advance_session(state, turn.kind, turn.grade)
        profiles[record.student_id] = update_profile(
            profiles.get(record.student_id, StudentProfile(id=record.student_id)),
            turn,
            exercise,
        )
    return ReplayResult(
        states=states, profiles=profiles, records=tuple(records)
    )


def _candidate_text(exercise: Exercise, content_id: str) -> Optional[str]:
    """Recover the hint text behind a logged content id of the form
    ``hint:<exercise>:<tier>:<cue>`` by regenerating the candidate pool."""
    parts = content_id.split(":")
    if len(parts) != 4 or parts[0] != "hint":
        return None
    cue_id = parts[3]
    try:
        for candidate in generate_candidates(exercise):
            if candidate.cue_id == cue_id:
                return candidate.text
    except TutorError:
        return None
    return None


def build_training_examples(
    records: Sequence[LogRecord],
    bank: Sequence[Exercise],
    extractor: FeatureExtractor,
    tier: Optional[ModelTier] = None,
) -> list[TrainingExample]:
    """Label every tier-tagged text hint in the log by whether the next
    attempt on the same exercise was correct, with features as they were at
    serving time (profile and history reconstructed turn by turn)."""
    by_id = {e.id: e for e in bank}
    examples: list[TrainingExample] = []
    streams: dict[tuple[str, str], list[InteractionTurn]] = {}
    positions: dict[tuple[str, str, int], int] = {}
    for record in records:
        key = (record.student_id, record.session_id)
        stream = streams.setdefault(key, [])
        positions[key + (record.turn.sequence,)] = len(stream)
        stream.append(record.turn)

    profiles: dict[str, StudentProfile] = {}
    histories: dict[str, list[InteractionTurn]] = {}
    for record in records:
        turn = record.turn
        student = record.student_id
        exercise = by_id.get(turn.exercise_id)
        if exercise is None:
            raise TutorError(
                f"log references exercise {turn.exercise_id!r} missing "
                "from the bank"
            )
        ref = turn.intervention
        if (
            ref is not None
            and ref.tier is not None
            and (tier is None or ref.tier is tier)
        ):
            text = _candidate_text(exercise, ref.content_id)
            if text is not None:
                features = extractor.extract(
                    text,
                    exercise,
                    profiles.get(student, StudentProfile(id=student)),
                    tuple(histories.get(student, ())),
                    ref.tier,
                )
                key = (student, record.session_id)
                label = _trial_success(
                    streams[key],
                    positions[key + (turn.sequence,)],
                    turn.exercise_id,
                )
                examples.append(
                    TrainingExample(features=features, label=label)
                )
        profiles[student] = update_profile(
            profiles.get(student, StudentProfile(id=student)), turn, exercise
        )
        histories.setdefault(student, []).append(turn)
    return examples


def _trial_success(
    stream: Sequence[InteractionTurn], position: int, exercise_id: str
) -> int:
    """1 iff the next attempt in the same session on the same exercise was
    graded Correct."""
    for turn in stream[position + 1 :]:
        if turn.kind is EventKind.ATTEMPT and turn.exercise_id == exercise_id:
            return 1 if turn.grade is Grade.CORRECT else 0
    return 0
