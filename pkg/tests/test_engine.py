"""Engine assembly: session orchestration, write-ahead logging, restart
recovery, replay, and training-set extraction from logs."""
from __future__ import annotations

import pytest

from tutorloop.engine import (
    CALIBRATED_SCORES,
    TutorEngine,
    UnknownSessionError,
    build_training_examples,
    calibrated_bundle,
    default_bank,
    replay_log,
)
from tutorloop.errors import IllegalTransition, TutorError
from tutorloop.feedback_models import FeatureExtractor, ModelTier, feature_names
from tutorloop.storage import LogRecord, load_log
from tutorloop.tutoring_core import (
    EventKind,
    Grade,
    InteractionTurn,
    InterventionType,
    Mode,
    Phase,
)

from tests.test_tutoring_core import make_bundle, math_exercise, text_exercise

WRONG = "Honestly no idea whatsoever."
RIGHT = "A model is underfitting when it has a high bias."


def fixed_clock():
    n = [0]

    def clock() -> str:
        n[0] += 1
        return f"2026-01-01T00:{n[0] // 60:02d}:{n[0] % 60:02d}Z"

    return clock


@pytest.fixture
def bank():
    return [text_exercise(), math_exercise()]


@pytest.fixture
def engine(bank, tmp_path):
    eng = TutorEngine(
        bank,
        make_bundle(baseline=0.3, shallow=0.5, deep=0.7),
        mode=Mode.EXPERIMENT,
        master_seed=7,
        log_path=tmp_path / "log.jsonl",
        clock=fixed_clock(),
    )
    yield eng
    eng.close()


class TestSessions:
    def test_open_session_returns_first_unseen_exercise(self, engine):
        sid, exercise = engine.open_session("alice")
        assert sid == "alice-s1"
        assert exercise.id == "ml-001"
        assert engine.session_states()[sid].phase is Phase.AWAITING_ATTEMPT

    def test_second_session_moves_to_next_exercise(self, engine):
        sid1, first = engine.open_session("alice")
        engine.attempt(sid1, RIGHT)
        sid2, second = engine.open_session("alice")
        assert sid2 == "alice-s2"
        assert second.id == "alg-001"
        assert second.id != first.id

    def test_exhausted_bank_cycles_from_the_start(self, engine):
        engine.open_session("alice")
        engine.open_session("alice")
        _, third = engine.open_session("alice")
        assert third.id == "ml-001"

    def test_explicit_exercise_id(self, engine):
        _, exercise = engine.open_session("alice", "alg-001")
        assert exercise.id == "alg-001"

    def test_unknown_exercise_rejected(self, engine):
        with pytest.raises(TutorError, match="unknown exercise"):
            engine.open_session("alice", "nope")

    def test_blank_student_rejected(self, engine):
        with pytest.raises(TutorError, match="non-empty"):
            engine.open_session("   ")

    def test_students_get_independent_session_counters(self, engine):
        assert engine.open_session("alice")[0] == "alice-s1"
        assert engine.open_session("bob")[0] == "bob-s1"
        assert engine.open_session("alice")[0] == "alice-s2"

    def test_empty_bank_rejected(self):
        with pytest.raises(TutorError, match="non-empty"):
            TutorEngine([], make_bundle())

    def test_duplicate_exercise_ids_rejected(self):
        with pytest.raises(TutorError, match="duplicate"):
            TutorEngine([text_exercise(), text_exercise()], make_bundle())

    def test_unknown_session_raises(self, engine):
        with pytest.raises(UnknownSessionError, match="unknown session"):
            engine.attempt("ghost", "hello")


class TestEventFlow:
    def test_correct_attempt_solves(self, engine):
        sid, _ = engine.open_session("alice")
        out = engine.attempt(sid, RIGHT)
        assert out.grade.grade is Grade.CORRECT
        assert out.state.phase is Phase.SOLVED
        assert out.intervention is None
        assert out.intervention_id is None

    def test_incorrect_attempt_intervenes(self, engine):
        sid, _ = engine.open_session("alice")
        out = engine.attempt(sid, WRONG)
        assert out.grade.grade is Grade.INCORRECT
        assert out.state.phase is Phase.INTERVENTION_SHOWN
        assert out.intervention is not None
        assert out.intervention_id == f"{sid}-t1"
        assert out.turn.intervention == out.intervention.ref()

    def test_attempt_on_solved_is_illegal(self, engine):
        sid, _ = engine.open_session("alice")
        engine.attempt(sid, RIGHT)
        with pytest.raises(IllegalTransition) as err:
            engine.attempt(sid, WRONG)
        assert err.value.state == "Solved"
        assert err.value.event == "attempt"

    def test_help_then_attempt(self, engine):
        sid, _ = engine.open_session("alice")
        out = engine.request_help(sid)
        assert out.state.phase is Phase.INTERVENTION_SHOWN
        assert out.turn.kind is EventKind.HELP
        assert out.intervention is not None
        out2 = engine.attempt(sid, RIGHT)
        assert out2.state.phase is Phase.SOLVED

    def test_skip_terminal(self, engine):
        sid, _ = engine.open_session("alice")
        out = engine.skip(sid)
        assert out.state.phase is Phase.SKIPPED
        with pytest.raises(IllegalTransition):
            engine.attempt(sid, RIGHT)

    def test_attempt_index_tracks_retries(self, engine):
        sid, _ = engine.open_session("alice")
        first = engine.attempt(sid, WRONG)
        second = engine.attempt(sid, WRONG)
        assert first.turn.attempt_index == 1
        assert second.turn.attempt_index == 2
        assert second.state.attempt_index == 3

    def test_profile_updates_with_outcomes(self, engine):
        sid, _ = engine.open_session("alice")
        engine.attempt(sid, RIGHT)
        profile = engine.profiles()["alice"]
        assert profile.correct == 1
        assert profile.skill > 0.5

    def test_sequences_strictly_increase_within_session(self, engine):
        sid, _ = engine.open_session("alice")
        a = engine.attempt(sid, WRONG)
        b = engine.attempt(sid, WRONG)
        c = engine.attempt(sid, RIGHT)
        assert [a.turn.sequence, b.turn.sequence, c.turn.sequence] == [1, 2, 3]

    def test_same_seed_same_choices(self, bank, tmp_path):
        def run(path):
            eng = TutorEngine(
                bank,
                make_bundle(baseline=0.3, shallow=0.5, deep=0.7),
                master_seed=3,
                log_path=path,
                clock=fixed_clock(),
            )
            try:
                sid, _ = eng.open_session("a")
                chosen = []
                for _ in range(3):
                    out = eng.attempt(sid, WRONG)
                    chosen.append(out.intervention.content_id)
                return chosen, path.read_bytes()
            finally:
                eng.close()

        first, bytes_a = run(tmp_path / "a.jsonl")
        second, bytes_b = run(tmp_path / "b.jsonl")
        assert first == second
        assert bytes_a == bytes_b


class TestRatings:
    def test_rating_folds_into_records(self, engine):
        sid, _ = engine.open_session("alice")
        out = engine.attempt(sid, WRONG)
        engine.rate(out.intervention_id, True)
        record = engine.records()[0]
        assert record.turn.helpful is True

    def test_double_rating_rejected(self, engine):
        sid, _ = engine.open_session("alice")
        out = engine.attempt(sid, WRONG)
        engine.rate(out.intervention_id, False)
        with pytest.raises(TutorError, match="already rated"):
            engine.rate(out.intervention_id, True)

    def test_unknown_intervention_rejected(self, engine):
        with pytest.raises(UnknownSessionError, match="unknown intervention"):
            engine.rate("ghost-t1", True)

    def test_help_interventions_are_ratable(self, engine):
        sid, _ = engine.open_session("alice")
        out = engine.request_help(sid)
        engine.rate(out.intervention_id, True)
        assert engine.records()[0].turn.helpful is True

    def test_rating_lands_in_log_file(self, engine, tmp_path):
        sid, _ = engine.open_session("alice")
        out = engine.attempt(sid, WRONG)
        engine.rate(out.intervention_id, True)
        engine.close()
        folded = load_log(tmp_path / "log.jsonl")
        assert folded[0].turn.helpful is True


class TestRestart:
    def run_traffic(self, engine):
        sid, _ = engine.open_session("alice")
        out = engine.attempt(sid, WRONG)
        engine.rate(out.intervention_id, True)
        engine.attempt(sid, RIGHT)
        sid2, _ = engine.open_session("bob")
        engine.request_help(sid2)
        sid3, _ = engine.open_session("alice")
        engine.skip(sid3)
        return out.intervention_id

    def restarted(self, bank, tmp_path):
        return TutorEngine(
            bank,
            make_bundle(baseline=0.3, shallow=0.5, deep=0.7),
            mode=Mode.EXPERIMENT,
            master_seed=7,
            log_path=tmp_path / "log.jsonl",
            clock=fixed_clock(),
        )

    def test_restart_reconstructs_identical_state(self, engine, bank, tmp_path):
        self.run_traffic(engine)
        states = engine.session_states()
        profiles = engine.profiles()
        records = engine.records()
        engine.close()
        fresh = self.restarted(bank, tmp_path)
        try:
            assert fresh.session_states() == states
            assert fresh.profiles() == profiles
            assert fresh.records() == records
        finally:
            fresh.close()

    def test_restart_remembers_ratings(self, engine, bank, tmp_path):
        intervention_id = self.run_traffic(engine)
        engine.close()
        fresh = self.restarted(bank, tmp_path)
        try:
            with pytest.raises(TutorError, match="already rated"):
                fresh.rate(intervention_id, False)
        finally:
            fresh.close()

    def test_restart_continues_sequences_without_collision(
        self, engine, bank, tmp_path
    ):
        self.run_traffic(engine)
        engine.close()
        fresh = self.restarted(bank, tmp_path)
        try:
            out = fresh.attempt("bob-s1", WRONG)
            assert out.turn.sequence == 2
        finally:
            fresh.close()

    def test_restart_resumes_exercise_rotation(self, engine, bank, tmp_path):
        self.run_traffic(engine)
        engine.close()
        fresh = self.restarted(bank, tmp_path)
        try:
            sid, exercise = fresh.open_session("alice")
            assert sid == "alice-s3"
        finally:
            fresh.close()

    def test_log_references_unknown_exercise(self, engine, bank, tmp_path):
        self.run_traffic(engine)
        engine.close()
        with pytest.raises(TutorError, match="missing from the bank"):
            TutorEngine(
                [text_exercise()],
                make_bundle(),
                log_path=tmp_path / "log.jsonl",
            )


class TestReplay:
    def make_log(self, engine):
        sid, _ = engine.open_session("alice")
        engine.attempt(sid, WRONG)
        engine.attempt(sid, RIGHT)
        sid2, _ = engine.open_session("bob")
        engine.attempt(sid2, WRONG)
        sid3, _ = engine.open_session("alice")
        engine.skip(sid3)

    def test_replay_matches_live_states(self, engine, bank, tmp_path):
        self.make_log(engine)
        states = engine.session_states()
        profiles = engine.profiles()
        engine.close()
        result = replay_log(
            load_log(tmp_path / "log.jsonl"), bank, verify_grades=True
        )
        assert result.states == states
        assert result.profiles == profiles

    def test_replay_detects_tampered_grade(self, engine, bank, tmp_path):
        self.make_log(engine)
        engine.close()
        path = tmp_path / "log.jsonl"
        text = path.read_text()
        assert '"grade":"Correct"' in text
        path.write_text(text.replace('"grade":"Correct"', '"grade":"Incorrect"'))
        records = load_log(path)
        with pytest.raises(TutorError, match="replay graded"):
            replay_log(records, bank, verify_grades=True)
        # Without verification the tampered log replays (state machine only).
        replay_log(records, bank)

    def test_replay_rejects_illegal_event_order(self, bank):
        turn = InteractionTurn(
            sequence=1,
            exercise_id="ml-001",
            attempt_index=1,
            kind=EventKind.ATTEMPT,
            attempt_text=RIGHT,
            grade=Grade.CORRECT,
            score=1.0,
        )
        after_solved = InteractionTurn(
            sequence=2,
            exercise_id="ml-001",
            attempt_index=1,
            kind=EventKind.SKIP,
        )
        records = [
            LogRecord("a", "s1", turn),
            LogRecord("a", "s1", after_solved),
        ]
        with pytest.raises(IllegalTransition):
            replay_log(records, bank)

    def test_replay_rejects_attempt_index_drift(self, bank):
        turn = InteractionTurn(
            sequence=1,
            exercise_id="ml-001",
            attempt_index=2,
            kind=EventKind.ATTEMPT,
            attempt_text=WRONG,
            grade=Grade.INCORRECT,
            score=0.0,
        )
        with pytest.raises(TutorError, match="attempt_index"):
            replay_log([LogRecord("a", "s1", turn)], bank)

    def test_replay_rejects_unknown_exercise(self):
        turn = InteractionTurn(
            sequence=1,
            exercise_id="ml-001",
            attempt_index=1,
            kind=EventKind.SKIP,
        )
        with pytest.raises(TutorError, match="missing from the bank"):
            replay_log([LogRecord("a", "s1", turn)], [math_exercise()])


class TestTrainingExtraction:
    def build_log(self, bank, tmp_path, attempts):
        """attempts: list of (student, [attempt texts...]) on ml-001."""
        eng = TutorEngine(
            bank,
            make_bundle(baseline=0.3, shallow=0.5, deep=0.7),
            master_seed=1,
            log_path=tmp_path / "train.jsonl",
            clock=fixed_clock(),
        )
        try:
            for student, texts in attempts:
                sid, _ = eng.open_session(student, "ml-001")
                for text in texts:
                    out = eng.attempt(sid, text)
                    if out.state.phase is Phase.SOLVED:
                        break
            return eng.records()
        finally:
            eng.close()

    def test_labels_follow_next_attempt(self, bank, tmp_path):
        records = self.build_log(
            bank,
            tmp_path,
            [
                ("win", [WRONG, RIGHT]),
                ("lose", [WRONG, WRONG]),
            ],
        )
        extractor = FeatureExtractor.from_exercises(bank)
        examples = build_training_examples(records, bank, extractor)
        # win: hint after attempt 1 -> next attempt correct (label 1)
        # lose: hints after attempts 1 and 2 -> attempt 2 incorrect
        # (label 0), final hint has no following attempt (label 0)
        assert [e.label for e in examples] == [1, 0, 0]

    def test_tier_filter_and_feature_width(self, bank, tmp_path):
        records = self.build_log(bank, tmp_path, [("a", [WRONG, WRONG, WRONG])])
        extractor = FeatureExtractor.from_exercises(bank)
        everything = build_training_examples(records, bank, extractor)
        assert everything
        for tier in ModelTier:
            subset = build_training_examples(
                records, bank, extractor, tier=tier
            )
            for example in subset:
                assert len(example.features.values) == len(
                    feature_names(tier)
                )
        per_tier = sum(
            len(build_training_examples(records, bank, extractor, tier=t))
            for t in ModelTier
        )
        assert per_tier == len(everything)

    def test_non_hint_interventions_are_skipped(self, bank, tmp_path):
        eng = TutorEngine(
            bank,
            make_bundle(),
            master_seed=1,
            log_path=tmp_path / "math.jsonl",
            clock=fixed_clock(),
        )
        try:
            sid, _ = eng.open_session("a", "alg-001")
            out = eng.attempt(sid, r"y = m \cdot x")
            assert out.intervention.type in (
                InterventionType.MATH_DIFF_HINT,
                InterventionType.MATH_GAP_HINT,
            )
            records = eng.records()
        finally:
            eng.close()
        extractor = FeatureExtractor.from_exercises(bank)
        assert build_training_examples(records, bank, extractor) == []


class TestBundleHelpers:
    def test_default_bank_loads(self):
        bank = default_bank()
        assert len(bank) >= 8
        assert len({e.id for e in bank}) == len(bank)
        assert any(e.math_expectation is not None for e in bank)
        assert any(e.expectations for e in bank)

    def test_default_bank_text_exercises_yield_hint_candidates(self):
        from tutorloop.hint_generation import generate_candidates

        for exercise in default_bank():
            if exercise.expectations:
                assert generate_candidates(exercise), exercise.id

    def test_calibrated_bundle_scores(self):
        bank = default_bank()
        bundle = calibrated_bundle(bank)
        for tier, score in CALIBRATED_SCORES.items():
            model = bundle.tier_models[tier]
            width = len(feature_names(tier))
            assert model.predict_proba([0.0] * width) == pytest.approx(score)

    def test_simulated_students_grade_as_intended(self):
        """The canned correct/wrong attempts must actually grade that way
        for every bank exercise, else simulation trials would be mislabeled."""
        from tutorloop.simulate import _correct_attempt, _wrong_attempt
        from tutorloop.tutoring_core import grade_attempt

        for exercise in default_bank():
            right = grade_attempt(_correct_attempt(exercise), exercise)
            assert right.grade is Grade.CORRECT, exercise.id
            for attempt_index in (1, 2, 3):
                wrong = grade_attempt(
                    _wrong_attempt(exercise, attempt_index), exercise
                )
                assert wrong.grade is Grade.INCORRECT, exercise.id
