"""File-format round trips, schema validation, and error reporting."""

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tutorloop.errors import SchemaError, TutorError
from tutorloop.feedback_models import (
    FeatureVector,
    ModelTier,
    TrainingExample,
    feature_names,
    train_decision_tree,
    train_random_forest,
)
from tutorloop.storage import (
    LogRecord,
    LogWriter,
    ModelArtifact,
    RatingRecord,
    append_turn,
    exercise_from_dict,
    exercise_to_dict,
    load_exercises,
    load_log,
    load_model,
    save_exercises,
    save_model,
)
from tutorloop.tutoring_core import (
    EventKind,
    Exercise,
    Grade,
    InteractionTurn,
    InterventionRef,
    InterventionType,
    MathExpectation,
)

clean_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",)),
    min_size=1,
    max_size=20,
)


@st.composite
def exercises(draw, ident=None):
    has_math = draw(st.booleans())
    n_expect = draw(st.integers(min_value=0 if has_math else 1, max_value=3))
    math = None
    if has_math:
        math = MathExpectation(
            latex=draw(st.sampled_from(["y = m \\cdot x + b", "x^{2}", "a + b"])),
            functions=tuple(draw(st.lists(st.sampled_from(["f", "g"]), max_size=2))),
        )
    return Exercise(
        id=ident if ident is not None else draw(clean_text),
        question=draw(clean_text),
        expectations=tuple(draw(st.lists(clean_text, min_size=n_expect, max_size=n_expect))),
        math_expectation=math,
        tags=tuple(draw(st.lists(st.sampled_from(["ml", "math", "stats"]), max_size=2))),
        difficulty=draw(st.floats(min_value=0.0, max_value=1.0, allow_nan=False)),
    )


@st.composite
def turns(draw, sequence):
    kind = draw(st.sampled_from(list(EventKind)))
    exercise_id = draw(st.sampled_from(["ex-a", "ex-b"]))
    attempt_index = draw(st.integers(min_value=1, max_value=5))
    grade = None
    attempt_text = None
    intervention = None
    helpful = None
    if kind is EventKind.ATTEMPT:
        grade = draw(st.sampled_from(list(Grade)))
        attempt_text = draw(clean_text)
    may_intervene = kind is EventKind.HELP or grade is Grade.INCORRECT
    if may_intervene and draw(st.booleans()):
        intervention = InterventionRef(
            type=draw(st.sampled_from(list(InterventionType))),
            tier=draw(st.sampled_from([None, *ModelTier])),
            content_id=draw(clean_text),
        )
        helpful = draw(st.sampled_from([None, True, False]))
    return InteractionTurn(
        sequence=sequence,
        exercise_id=exercise_id,
        attempt_index=attempt_index,
        kind=kind,
        attempt_text=attempt_text,
        grade=grade,
        score=draw(st.sampled_from([None, 0.0, 0.75])),
        intervention=intervention,
        helpful=helpful,
    )


@st.composite
def log_records(draw):
    n_streams = draw(st.integers(min_value=1, max_value=3))
    records = []
    for s in range(n_streams):
        n_turns = draw(st.integers(min_value=1, max_value=4))
        for i in range(n_turns):
            records.append(
                LogRecord(
                    student_id=f"student-{s}",
                    session_id=f"session-{s}",
                    turn=draw(turns(sequence=i + 1)),
                    timestamp=f"2026-01-01T00:00:{i:02d}Z",
                    seed=draw(st.sampled_from([None, 0, 17])),
                )
            )
    return records


class TestExerciseBank:
    def test_three_exercise_round_trip(self, tmp_path):
        bank = [
            Exercise(id="a", question="Q1?", expectations=("E1",)),
            Exercise(
                id="b",
                question="Q2?",
                expectations=("E2", "E3"),
                tags=("ml",),
                difficulty=0.7,
            ),
            Exercise(
                id="c",
                question="Q3?",
                math_expectation=MathExpectation("y = m \\cdot x + b", ("f",)),
            ),
        ]
        path = tmp_path / "bank.jsonl"
        save_exercises(path, bank)
        assert load_exercises(path) == bank
        header = json.loads(path.read_text().splitlines()[0])
        assert header == {"schema": "exercises/1"}

    @given(bank=st.lists(st.integers(), min_size=1, max_size=4), data=st.data())
    @settings(max_examples=40, deadline=None)
    def test_round_trip_property(self, tmp_path_factory, bank, data):
        items = [
            data.draw(exercises(ident=f"ex-{i}")) for i in range(len(bank))
        ]
        path = tmp_path_factory.mktemp("bank") / "bank.jsonl"
        save_exercises(path, items)
        assert load_exercises(path) == items

    def test_duplicate_id_reports_line(self, tmp_path):
        path = tmp_path / "bank.jsonl"
        lines = [
            '{"schema": "exercises/1"}',
            '{"id": "a", "question": "q", "expectations": ["e"]}',
            '{"id": "a", "question": "q2", "expectations": ["e"]}',
        ]
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(SchemaError, match=r"bank\.jsonl:3.*duplicate"):
            load_exercises(path)

    def test_wrong_header(self, tmp_path):
        path = tmp_path / "bank.jsonl"
        path.write_text('{"schema": "log/1"}\n')
        with pytest.raises(SchemaError, match="exercises/1"):
            load_exercises(path)

    def test_invalid_json_reports_line(self, tmp_path):
        path = tmp_path / "bank.jsonl"
        path.write_text('{"schema": "exercises/1"}\n{oops\n')
        with pytest.raises(SchemaError, match=r"bank\.jsonl:2"):
            load_exercises(path)

    def test_malformed_exercise_reports_line(self, tmp_path):
        path = tmp_path / "bank.jsonl"
        path.write_text('{"schema": "exercises/1"}\n{"id": "a"}\n')
        with pytest.raises(SchemaError, match=r"bank\.jsonl:2"):
            load_exercises(path)

    def test_dict_round_trip(self):
        exercise = Exercise(
            id="a", question="q", expectations=("e",), tags=("t",)
        )
        assert exercise_from_dict(exercise_to_dict(exercise)) == exercise


class TestInteractionLog:
    @given(records=log_records())
    @settings(max_examples=40, deadline=None)
    def test_round_trip_property(self, tmp_path_factory, records):
        path = tmp_path_factory.mktemp("log") / "log.jsonl"
        with LogWriter(path) as writer:
            for record in records:
                writer.append(record)
        assert load_log(path) == records

    def test_append_turn_creates_and_extends(self, tmp_path):
        path = tmp_path / "log.jsonl"
        first = LogRecord(
            student_id="s",
            session_id="sess",
            turn=InteractionTurn(
                sequence=1,
                exercise_id="ex",
                attempt_index=1,
                kind=EventKind.SKIP,
            ),
        )
        second = LogRecord(
            student_id="s",
            session_id="sess",
            turn=InteractionTurn(
                sequence=2,
                exercise_id="ex",
                attempt_index=1,
                kind=EventKind.HELP,
            ),
        )
        append_turn(path, first)
        append_turn(path, second)
        assert load_log(path) == [first, second]
        headers = [
            line
            for line in path.read_text().splitlines()
            if '"schema"' in line
        ]
        assert len(headers) == 1

    def test_writer_rejects_non_monotone_sequence(self, tmp_path):
        path = tmp_path / "log.jsonl"
        turn = InteractionTurn(
            sequence=5, exercise_id="ex", attempt_index=1, kind=EventKind.SKIP
        )
        record = LogRecord(student_id="s", session_id="sess", turn=turn)
        with LogWriter(path) as writer:
            writer.append(record)
            with pytest.raises(TutorError, match="sequence must increase"):
                writer.append(record)

    def test_writer_resumes_bookkeeping(self, tmp_path):
        path = tmp_path / "log.jsonl"
        turn = InteractionTurn(
            sequence=3, exercise_id="ex", attempt_index=1, kind=EventKind.SKIP
        )
        append_turn(path, LogRecord(student_id="s", session_id="x", turn=turn))
        stale = InteractionTurn(
            sequence=2, exercise_id="ex", attempt_index=1, kind=EventKind.SKIP
        )
        with pytest.raises(TutorError, match="sequence must increase"):
            append_turn(path, LogRecord(student_id="s", session_id="x", turn=stale))

    def test_load_reports_out_of_order_line(self, tmp_path):
        path = tmp_path / "log.jsonl"
        body = {
            "student_id": "s",
            "session_id": "sess",
            "timestamp": "2026-01-01T00:00:00Z",
            "turn": {
                "sequence": 2,
                "exercise_id": "ex",
                "attempt_index": 1,
                "kind": "skip",
            },
        }
        lines = ['{"schema": "log/1"}', json.dumps(body), json.dumps(body)]
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(SchemaError, match=r"log\.jsonl:3.*sequence"):
            load_log(path)

    def test_different_sessions_do_not_interfere(self, tmp_path):
        path = tmp_path / "log.jsonl"
        turn = InteractionTurn(
            sequence=1, exercise_id="ex", attempt_index=1, kind=EventKind.SKIP
        )
        with LogWriter(path) as writer:
            writer.append(LogRecord(student_id="a", session_id="1", turn=turn))
            writer.append(LogRecord(student_id="b", session_id="1", turn=turn))
            writer.append(LogRecord(student_id="a", session_id="2", turn=turn))
        assert len(load_log(path)) == 3


def _intervention_record(sequence: int = 1) -> LogRecord:
    return LogRecord(
        student_id="s",
        session_id="sess",
        turn=InteractionTurn(
            sequence=sequence,
            exercise_id="ex",
            attempt_index=1,
            kind=EventKind.ATTEMPT,
            attempt_text="wrong",
            grade=Grade.INCORRECT,
            intervention=InterventionRef(
                type=InterventionType.TEXT_HINT, tier=None, content_id="h1"
            ),
        ),
    )


class TestRatings:
    def test_rating_folds_into_target_turn(self, tmp_path):
        path = tmp_path / "log.jsonl"
        with LogWriter(path) as writer:
            writer.append(_intervention_record(sequence=1))
            writer.append_rating(
                RatingRecord(
                    student_id="s",
                    session_id="sess",
                    sequence=2,
                    target_sequence=1,
                    helpful=True,
                )
            )
        (record,) = load_log(path)
        assert record.turn.helpful is True
        assert record.turn.sequence == 1

    def test_unhelpful_rating_folds_as_false(self, tmp_path):
        path = tmp_path / "log.jsonl"
        with LogWriter(path) as writer:
            writer.append(_intervention_record(sequence=1))
            writer.append_rating(
                RatingRecord("s", "sess", 2, 1, helpful=False)
            )
        (record,) = load_log(path)
        assert record.turn.helpful is False

    def test_rating_participates_in_sequence_order(self, tmp_path):
        path = tmp_path / "log.jsonl"
        with LogWriter(path) as writer:
            writer.append(_intervention_record(sequence=1))
            writer.append(_intervention_record(sequence=5))
            with pytest.raises(TutorError, match="sequence must increase"):
                writer.append_rating(RatingRecord("s", "sess", 2, 1, True))

    def test_writer_resumes_after_rating(self, tmp_path):
        path = tmp_path / "log.jsonl"
        with LogWriter(path) as writer:
            writer.append(_intervention_record(sequence=1))
            writer.append_rating(RatingRecord("s", "sess", 2, 1, True))
        with LogWriter(path) as writer:
            assert writer.next_sequence("s", "sess") == 3
            with pytest.raises(TutorError, match="sequence must increase"):
                writer.append(_intervention_record(sequence=2))

    def test_rating_unknown_target_rejected(self, tmp_path):
        path = tmp_path / "log.jsonl"
        with LogWriter(path) as writer:
            writer.append(_intervention_record(sequence=1))
            writer.append_rating(RatingRecord("s", "sess", 2, -5, True))
        with pytest.raises(SchemaError, match=r":3.*unknown sequence"):
            load_log(path)

    def test_rating_turn_without_intervention_rejected(self, tmp_path):
        path = tmp_path / "log.jsonl"
        plain = LogRecord(
            student_id="s",
            session_id="sess",
            turn=InteractionTurn(
                sequence=1, exercise_id="ex", attempt_index=1, kind=EventKind.SKIP
            ),
        )
        with LogWriter(path) as writer:
            writer.append(plain)
            writer.append_rating(RatingRecord("s", "sess", 2, 1, True))
        with pytest.raises(SchemaError, match="no intervention"):
            load_log(path)

    def test_double_rating_rejected(self, tmp_path):
        path = tmp_path / "log.jsonl"
        with LogWriter(path) as writer:
            writer.append(_intervention_record(sequence=1))
            writer.append_rating(RatingRecord("s", "sess", 2, 1, True))
            writer.append_rating(RatingRecord("s", "sess", 3, 1, False))
        with pytest.raises(SchemaError, match="already rated"):
            load_log(path)

    def test_rating_must_follow_its_turn(self):
        with pytest.raises(TutorError, match="follow the turn"):
            RatingRecord("s", "sess", sequence=1, target_sequence=1, helpful=True)

    def test_line_neither_turn_nor_rating_rejected(self, tmp_path):
        path = tmp_path / "log.jsonl"
        lines = ['{"schema": "log/1"}', '{"student_id": "s", "session_id": "x"}']
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(SchemaError, match="neither a turn nor a rating"):
            load_log(path)


def _examples():
    rows = [
        ((0.0, 1.0, 0.5), 0),
        ((1.0, 0.0, 0.5), 1),
        ((0.2, 0.9, 0.1), 0),
        ((0.9, 0.2, 0.8), 1),
        ((0.1, 0.8, 0.3), 0),
        ((0.8, 0.1, 0.9), 1),
    ]
    names = ("f0", "f1", "f2")
    return [
        TrainingExample(
            features=FeatureVector(
                names=names, values=values, tier=ModelTier.BASELINE
            ),
            label=label,
        )
        for values, label in rows
    ]


class TestModelFiles:
    def _artifact(self, model):
        return ModelArtifact(
            tier=ModelTier.BASELINE,
            feature_names=("f0", "f1", "f2"),
            model=model,
            seed=7,
            data_hash="abc123",
            created="2026-01-02T03:04:05Z",
        )

    def test_forest_round_trip(self, tmp_path):
        forest = train_random_forest(_examples(), n_trees=3, seed=7)
        artifact = self._artifact(forest)
        path = tmp_path / "model.json"
        save_model(path, artifact)
        loaded = load_model(path)
        assert loaded.tier is artifact.tier
        assert loaded.feature_names == artifact.feature_names
        assert loaded.seed == artifact.seed
        assert loaded.data_hash == artifact.data_hash
        assert loaded.created == artifact.created
        assert loaded.model.to_json() == forest.to_json()

    def test_tree_round_trip(self, tmp_path):
        tree = train_decision_tree(_examples(), max_depth=3)
        path = tmp_path / "model.json"
        save_model(path, self._artifact(tree))
        assert load_model(path).model.to_json() == tree.to_json()

    def test_resave_is_byte_identical(self, tmp_path):
        forest = train_random_forest(_examples(), n_trees=2, seed=3)
        artifact = self._artifact(forest)
        first = tmp_path / "a.json"
        second = tmp_path / "b.json"
        save_model(first, artifact)
        save_model(second, load_model(first))
        assert first.read_bytes() == second.read_bytes()

    def test_edited_feature_name_fails_hash_check(self, tmp_path):
        tree = train_decision_tree(_examples(), max_depth=2)
        path = tmp_path / "model.json"
        save_model(path, self._artifact(tree))
        payload = json.loads(path.read_text())
        payload["feature_names"][0] = "f0_edited"
        path.write_text(json.dumps(payload))
        with pytest.raises(SchemaError, match="hash mismatch"):
            load_model(path)

    def test_unknown_kind(self, tmp_path):
        tree = train_decision_tree(_examples(), max_depth=2)
        path = tmp_path / "model.json"
        save_model(path, self._artifact(tree))
        payload = json.loads(path.read_text())
        payload["model"]["kind"] = "perceptron"
        path.write_text(json.dumps(payload))
        with pytest.raises(SchemaError, match="perceptron"):
            load_model(path)

    def test_feature_count_mismatch_rejected(self):
        tree = train_decision_tree(_examples(), max_depth=2)
        with pytest.raises(TutorError, match="features"):
            ModelArtifact(
                tier=ModelTier.BASELINE,
                feature_names=("only-one",),
                model=tree,
                seed=0,
                data_hash="",
                created="",
            )

    def test_names_match_feature_schema_helper(self):
        # The canonical schemas used by training come from feature_names().
        for tier in ModelTier:
            names = feature_names(tier)
            assert len(names) == len(set(names))
