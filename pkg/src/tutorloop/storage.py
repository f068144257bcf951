"""File formats: exercise banks, interaction logs, and trained models.

Everything is JSON-per-line (JSONL) with a schema-version header line so
files stay streamable, diff-able, and migratable.  Logs are append-only and
replayable: every line carries the student, session, timestamp, and the seed
used for any randomized decision on that turn.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

from .errors import SchemaError, TutorError
from .feedback_models import ModelTier
from .feedback_models.trees import DecisionTree, RandomForest
from .tutoring_core import (
    EventKind,
    Exercise,
    Grade,
    InteractionTurn,
    InterventionRef,
    InterventionType,
    MathExpectation,
)

__all__ = [
    "EXERCISES_SCHEMA",
    "LOG_SCHEMA",
    "MODEL_SCHEMA",
    "LogRecord",
    "LogWriter",
    "ModelArtifact",
    "RatingRecord",
    "append_turn",
    "exercise_from_dict",
    "exercise_to_dict",
    "feature_schema_hash",
    "load_exercises",
    "load_log",
    "load_model",
    "rating_from_dict",
    "rating_to_dict",
    "record_from_dict",
    "record_to_dict",
    "save_exercises",
    "save_model",
    "turn_from_dict",
    "turn_to_dict",
]

EXERCISES_SCHEMA = "exercises/1"
LOG_SCHEMA = "log/1"
MODEL_SCHEMA = "model/1"


def _dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _read_jsonl(path: Union[str, Path], schema: str) -> Iterator[tuple[int, dict]]:
    """Yield (line_number, payload) for every body line, checking the header."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TutorError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines:
        raise SchemaError(f"{path}: empty file, expected header {schema!r}")
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}:{number}: invalid JSON: {exc.msg}") from exc
        if number == 1:
            found = payload.get("schema") if isinstance(payload, dict) else None
            if found != schema:
                raise SchemaError(
                    f"{path}:1: schema header {found!r}, expected {schema!r}"
                )
            continue
        if not isinstance(payload, dict):
            raise SchemaError(f"{path}:{number}: expected a JSON object")
        yield number, payload


# ---------------------------------------------------------------------------
# Exercise banks


def exercise_to_dict(exercise: Exercise) -> dict:
    payload: dict = {
        "id": exercise.id,
        "question": exercise.question,
        "expectations": list(exercise.expectations),
        "tags": list(exercise.tags),
        "difficulty": exercise.difficulty,
    }
    if exercise.math_expectation is not None:
        payload["math"] = {
            "latex": exercise.math_expectation.latex,
            "functions": list(exercise.math_expectation.functions),
        }
    return payload


def exercise_from_dict(payload: dict, where: str = "") -> Exercise:
    try:
        math = None
        if payload.get("math") is not None:
            math = MathExpectation(
                latex=payload["math"]["latex"],
                functions=tuple(payload["math"].get("functions", ())),
            )
        return Exercise(
            id=payload["id"],
            question=payload["question"],
            expectations=tuple(payload.get("expectations", ())),
            math_expectation=math,
            tags=tuple(payload.get("tags", ())),
            difficulty=float(payload.get("difficulty", 0.5)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{where}: malformed exercise: {exc!r}") from exc


def load_exercises(path: Union[str, Path]) -> list[Exercise]:
    exercises: list[Exercise] = []
    seen: dict[str, int] = {}
    for number, payload in _read_jsonl(path, EXERCISES_SCHEMA):
        exercise = exercise_from_dict(payload, where=f"{path}:{number}")
        if exercise.id in seen:
            raise SchemaError(
                f"{path}:{number}: duplicate exercise id {exercise.id!r} "
                f"(first defined on line {seen[exercise.id]})"
            )
        seen[exercise.id] = number
        exercises.append(exercise)
    if not exercises:
        raise SchemaError(f"{path}: bank contains no exercises")
    return exercises


def save_exercises(path: Union[str, Path], exercises: Sequence[Exercise]) -> None:
    ids = [e.id for e in exercises]
    if len(set(ids)) != len(ids):
        raise TutorError("exercise ids must be unique")
    lines = [_dump({"schema": EXERCISES_SCHEMA})]
    lines.extend(_dump(exercise_to_dict(e)) for e in exercises)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# Interaction logs


@dataclass(frozen=True)
class LogRecord:
    """One log line: an interaction turn plus its replay envelope."""

    student_id: str
    session_id: str
    turn: InteractionTurn
    timestamp: str = "1970-01-01T00:00:00Z"
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.student_id:
            raise TutorError("log records need a student id")
        if not self.session_id:
            raise TutorError("log records need a session id")


def turn_to_dict(turn: InteractionTurn) -> dict:
    payload: dict = {
        "sequence": turn.sequence,
        "exercise_id": turn.exercise_id,
        "attempt_index": turn.attempt_index,
        "kind": turn.kind.value,
    }
    if turn.attempt_text is not None:
        payload["attempt_text"] = turn.attempt_text
    if turn.grade is not None:
        payload["grade"] = turn.grade.value
    if turn.score is not None:
        payload["score"] = turn.score
    if turn.intervention is not None:
        payload["intervention"] = {
            "type": turn.intervention.type.value,
            "tier": (
                turn.intervention.tier.value
                if turn.intervention.tier is not None
                else None
            ),
            "content_id": turn.intervention.content_id,
        }
    if turn.helpful is not None:
        payload["helpful"] = turn.helpful
    return payload


def turn_from_dict(payload: dict, where: str = "") -> InteractionTurn:
    try:
        intervention = None
        if payload.get("intervention") is not None:
            raw = payload["intervention"]
            intervention = InterventionRef(
                type=InterventionType(raw["type"]),
                tier=(
                    ModelTier(raw["tier"]) if raw.get("tier") is not None else None
                ),
                content_id=raw["content_id"],
            )
        return InteractionTurn(
            sequence=payload["sequence"],
            exercise_id=payload["exercise_id"],
            attempt_index=payload["attempt_index"],
            kind=EventKind(payload["kind"]),
            attempt_text=payload.get("attempt_text"),
            grade=(
                Grade(payload["grade"]) if payload.get("grade") is not None else None
            ),
            score=payload.get("score"),
            intervention=intervention,
            helpful=payload.get("helpful"),
        )
    except (KeyError, TypeError, ValueError, TutorError) as exc:
        raise SchemaError(f"{where}: malformed turn: {exc!r}") from exc


def record_to_dict(record: LogRecord) -> dict:
    payload = {
        "student_id": record.student_id,
        "session_id": record.session_id,
        "timestamp": record.timestamp,
        "turn": turn_to_dict(record.turn),
    }
    if record.seed is not None:
        payload["seed"] = record.seed
    return payload


def record_from_dict(payload: dict, where: str = "") -> LogRecord:
    try:
        return LogRecord(
            student_id=payload["student_id"],
            session_id=payload["session_id"],
            turn=turn_from_dict(payload["turn"], where=where),
            timestamp=payload.get("timestamp", "1970-01-01T00:00:00Z"),
            seed=payload.get("seed"),
        )
    except (KeyError, TypeError, TutorError) as exc:
        raise SchemaError(f"{where}: malformed log record: {exc!r}") from exc


@dataclass(frozen=True)
class RatingRecord:
    """A helpfulness rating appended after the rated intervention's turn.

    The log is append-only, so the rating cannot be written into the turn
    that carried the intervention; it gets its own line (with its own
    position in the session's sequence) naming the turn it rates, and
    ``load_log`` folds it into that turn's ``helpful`` field.
    """

    student_id: str
    session_id: str
    sequence: int
    target_sequence: int
    helpful: bool
    timestamp: str = "1970-01-01T00:00:00Z"

    def __post_init__(self) -> None:
        if not self.student_id:
            raise TutorError("rating records need a student id")
        if not self.session_id:
            raise TutorError("rating records need a session id")
        if self.target_sequence >= self.sequence:
            raise TutorError("ratings follow the turn they rate")


def rating_to_dict(rating: RatingRecord) -> dict:
    return {
        "student_id": rating.student_id,
        "session_id": rating.session_id,
        "timestamp": rating.timestamp,
        "rating": {
            "sequence": rating.sequence,
            "target_sequence": rating.target_sequence,
            "helpful": rating.helpful,
        },
    }


def rating_from_dict(payload: dict, where: str = "") -> RatingRecord:
    try:
        raw = payload["rating"]
        return RatingRecord(
            student_id=payload["student_id"],
            session_id=payload["session_id"],
            sequence=raw["sequence"],
            target_sequence=raw["target_sequence"],
            helpful=bool(raw["helpful"]),
            timestamp=payload.get("timestamp", "1970-01-01T00:00:00Z"),
        )
    except (KeyError, TypeError, TutorError) as exc:
        raise SchemaError(f"{where}: malformed rating record: {exc!r}") from exc


def _scan_log(
    path: Union[str, Path]
) -> Iterator[tuple[int, Union[LogRecord, RatingRecord]]]:
    """Yield every log line as its record type, checking sequence order."""
    last: dict[tuple[str, str], tuple[int, int]] = {}
    for number, payload in _read_jsonl(path, LOG_SCHEMA):
        where = f"{path}:{number}"
        record: Union[LogRecord, RatingRecord]
        if "rating" in payload:
            record = rating_from_dict(payload, where=where)
            sequence = record.sequence
            key = (record.student_id, record.session_id)
        elif "turn" in payload:
            record = record_from_dict(payload, where=where)
            sequence = record.turn.sequence
            key = (record.student_id, record.session_id)
        else:
            raise SchemaError(f"{where}: log line is neither a turn nor a rating")
        if key in last:
            previous_seq, previous_line = last[key]
            if sequence <= previous_seq:
                raise SchemaError(
                    f"{where}: sequence {sequence} not greater than "
                    f"{previous_seq} (line {previous_line}) for student "
                    f"{key[0]!r} session {key[1]!r}"
                )
        last[key] = (sequence, number)
        yield number, record


class LogWriter:
    """Append-only log writer enforcing per-(student, session) ordering.

    Lines are written whole and flushed, so a concurrent reader never sees a
    partial record.  Opening an existing log validates it and resumes the
    sequence bookkeeping where the file left off.
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._last: dict[tuple[str, str], int] = {}
        if self.path.exists() and self.path.stat().st_size > 0:
            for _, record in _scan_log(self.path):
                key = (record.student_id, record.session_id)
                sequence = (
                    record.sequence
                    if isinstance(record, RatingRecord)
                    else record.turn.sequence
                )
                self._last[key] = sequence
            self._handle = self.path.open("a", encoding="utf-8")
        else:
            self._handle = self.path.open("w", encoding="utf-8")
            self._handle.write(_dump({"schema": LOG_SCHEMA}) + "\n")
            self._handle.flush()

    def _check_order(self, key: tuple[str, str], sequence: int) -> None:
        previous = self._last.get(key)
        if previous is not None and sequence <= previous:
            raise TutorError(
                f"sequence must increase within a session: got "
                f"{sequence} after {previous} for {key}"
            )

    def append(self, record: LogRecord) -> None:
        key = (record.student_id, record.session_id)
        self._check_order(key, record.turn.sequence)
        self._handle.write(_dump(record_to_dict(record)) + "\n")
        self._handle.flush()
        self._last[key] = record.turn.sequence

    def append_rating(self, rating: RatingRecord) -> None:
        key = (rating.student_id, rating.session_id)
        self._check_order(key, rating.sequence)
        self._handle.write(_dump(rating_to_dict(rating)) + "\n")
        self._handle.flush()
        self._last[key] = rating.sequence

    def next_sequence(self, student_id: str, session_id: str) -> int:
        return self._last.get((student_id, session_id), 0) + 1

    def close(self) -> None:
        self._handle.close()

    def __enter__(self) -> "LogWriter":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def append_turn(path: Union[str, Path], record: LogRecord) -> None:
    """One-shot append; for bulk writing keep a LogWriter open instead."""
    with LogWriter(path) as writer:
        writer.append(record)


def load_log(path: Union[str, Path]) -> list[LogRecord]:
    """Read a log; ratings are folded into the turns they target, so the
    result is turn records only, in file order."""
    records: list[LogRecord] = []
    by_sequence: dict[tuple[str, str, int], int] = {}
    for number, record in _scan_log(path):
        if isinstance(record, LogRecord):
            key = (record.student_id, record.session_id, record.turn.sequence)
            by_sequence[key] = len(records)
            records.append(record)
            continue
        where = f"{path}:{number}"
        key = (record.student_id, record.session_id, record.target_sequence)
        index = by_sequence.get(key)
        if index is None:
            raise SchemaError(
                f"{where}: rating targets unknown sequence "
                f"{record.target_sequence}"
            )
        target = records[index]
        if target.turn.intervention is None:
            raise SchemaError(
                f"{where}: rated turn {record.target_sequence} carries "
                "no intervention"
            )
        if target.turn.helpful is not None:
            raise SchemaError(
                f"{where}: turn {record.target_sequence} is already rated"
            )
        records[index] = replace(
            target, turn=replace(target.turn, helpful=record.helpful)
        )
    return records


# ---------------------------------------------------------------------------
# Trained models


def feature_schema_hash(feature_names: Sequence[str]) -> str:
    digest = hashlib.sha256(
        json.dumps(list(feature_names)).encode("utf-8")
    ).hexdigest()
    return digest[:16]


@dataclass(frozen=True)
class ModelArtifact:
    """A trained ranking model plus everything needed to trust and replay it."""

    tier: ModelTier
    feature_names: tuple[str, ...]
    model: Union[RandomForest, DecisionTree]
    seed: int
    data_hash: str
    created: str

    def __post_init__(self) -> None:
        if self.model.n_features != len(self.feature_names):
            raise TutorError(
                f"model expects {self.model.n_features} features but the "
                f"schema lists {len(self.feature_names)}"
            )


def save_model(path: Union[str, Path], artifact: ModelArtifact) -> None:
    kind = "forest" if isinstance(artifact.model, RandomForest) else "tree"
    payload = {
        "schema": MODEL_SCHEMA,
        "tier": artifact.tier.value,
        "feature_names": list(artifact.feature_names),
        "feature_schema_hash": feature_schema_hash(artifact.feature_names),
        "model": {"kind": kind, "payload": artifact.model.to_dict()},
        "metadata": {
            "seed": artifact.seed,
            "data_hash": artifact.data_hash,
            "created": artifact.created,
        },
    }
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, indent=1) + "\n", encoding="utf-8"
    )


def load_model(path: Union[str, Path]) -> ModelArtifact:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise TutorError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc.msg}") from exc
    if payload.get("schema") != MODEL_SCHEMA:
        raise SchemaError(
            f"{path}: schema {payload.get('schema')!r}, expected {MODEL_SCHEMA!r}"
        )
    try:
        names = tuple(payload["feature_names"])
        stored_hash = payload["feature_schema_hash"]
        if feature_schema_hash(names) != stored_hash:
            raise SchemaError(
                f"{path}: feature schema hash mismatch "
                f"(stored {stored_hash}, computed {feature_schema_hash(names)})"
            )
        kind = payload["model"]["kind"]
        if kind == "forest":
            model: Union[RandomForest, DecisionTree] = RandomForest.from_dict(
                payload["model"]["payload"]
            )
        elif kind == "tree":
            model = DecisionTree.from_dict(payload["model"]["payload"])
        else:
            raise SchemaError(f"{path}: unknown model kind {kind!r}")
        metadata = payload["metadata"]
        return ModelArtifact(
            tier=ModelTier(payload["tier"]),
            feature_names=names,
            model=model,
            seed=metadata["seed"],
            data_hash=metadata["data_hash"],
            created=metadata["created"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: malformed model file: {exc!r}") from exc
