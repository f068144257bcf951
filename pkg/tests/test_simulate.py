"""Cohort simulation: determinism, replayability, and behavior shape."""
from __future__ import annotations

import pytest

from tutorloop.engine import calibrated_bundle, default_bank, replay_log
from tutorloop.errors import TutorError
from tutorloop.simulate import SimulatedStudent, make_cohort, simulate
from tutorloop.storage import load_log
from tutorloop.tutoring_core import (
    IMPLEMENTED_INTERVENTIONS,
    InterventionType,
    Mode,
    Phase,
)


@pytest.fixture(scope="module")
def bank():
    return default_bank()


@pytest.fixture(scope="module")
def bundle(bank):
    return calibrated_bundle(bank)


@pytest.fixture(scope="module")
def small_run(bank, bundle, tmp_path_factory):
    path = tmp_path_factory.mktemp("sim") / "run.jsonl"
    return simulate(
        bank,
        bundle,
        8,
        11,
        out_path=path,
        responsiveness_range=(0.4, 0.6),
    )


class TestStudents:
    def test_traits_validated(self):
        with pytest.raises(TutorError, match="ability"):
            SimulatedStudent(seed=1, ability=1.2)
        with pytest.raises(TutorError, match="responsiveness"):
            SimulatedStudent(seed=1, ability=0.5, hint_responsiveness=-0.1)

    def test_success_probability_clamped(self):
        eager = SimulatedStudent(seed=1, ability=0.9, hint_responsiveness=1.0)
        assert eager.success_probability(0.9) == 1.0
        assert eager.success_probability(0.0) == pytest.approx(0.9)
        timid = SimulatedStudent(seed=1, ability=0.2, hint_responsiveness=0.5)
        assert timid.success_probability(0.6) == pytest.approx(0.5)

    def test_cohort_deterministic_and_in_range(self):
        a = make_cohort(20, 5, responsiveness_range=(0.2, 0.4))
        b = make_cohort(20, 5, responsiveness_range=(0.2, 0.4))
        assert a == b
        for student in a:
            assert 0.15 <= student.ability <= 0.45
            assert 0.2 <= student.hint_responsiveness <= 0.4
        assert len({s.seed for s in a}) == 20

    def test_cohort_size_positive(self):
        with pytest.raises(TutorError, match="positive"):
            make_cohort(0, 1)


class TestDeterminism:
    def test_same_seed_byte_identical_log(self, bank, bundle, tmp_path):
        a = tmp_path / "a.jsonl"
        b = tmp_path / "b.jsonl"
        simulate(bank, bundle, 5, 3, out_path=a)
        simulate(bank, bundle, 5, 3, out_path=b)
        assert a.read_bytes() == b.read_bytes()

    def test_different_seed_differs(self, bank, bundle, tmp_path):
        a = tmp_path / "a.jsonl"
        b = tmp_path / "b.jsonl"
        simulate(bank, bundle, 5, 3, out_path=a)
        simulate(bank, bundle, 5, 4, out_path=b)
        assert a.read_bytes() != b.read_bytes()

    def test_rerun_overwrites_stale_log(self, bank, bundle, tmp_path):
        path = tmp_path / "log.jsonl"
        simulate(bank, bundle, 2, 1, out_path=path)
        first = path.read_bytes()
        simulate(bank, bundle, 2, 1, out_path=path)
        assert path.read_bytes() == first


class TestBehavior:
    def test_every_student_runs_every_exercise(self, small_run, bank):
        assert len(small_run.states) == 8 * len(bank)
        students = {sid.rsplit("-s", 1)[0] for sid in small_run.states}
        assert len(students) == 8

    def test_sessions_end_in_legal_phases(self, small_run):
        phases = {state.phase for state in small_run.states.values()}
        assert phases <= {
            Phase.SOLVED,
            Phase.SKIPPED,
            Phase.INTERVENTION_SHOWN,
        }
        assert Phase.SOLVED in phases

    def test_only_implemented_interventions(self, small_run):
        seen = set()
        for record in small_run.records:
            if record.turn.intervention is not None:
                seen.add(record.turn.intervention.type)
        assert seen <= IMPLEMENTED_INTERVENTIONS
        assert InterventionType.TEXT_HINT in seen

    def test_experiment_mode_tags_tiers(self, small_run):
        tiers = {
            record.turn.intervention.tier
            for record in small_run.records
            if record.turn.intervention is not None
            and record.turn.intervention.tier is not None
        }
        assert len(tiers) == 3

    def test_some_ratings_recorded(self, small_run):
        rated = [
            record.turn.helpful
            for record in small_run.records
            if record.turn.helpful is not None
        ]
        assert rated
        for record in small_run.records:
            if record.turn.helpful is not None:
                assert record.turn.intervention is not None

    def test_cohort_size_must_match(self, bank, bundle, tmp_path):
        students = make_cohort(3, 1)
        with pytest.raises(TutorError, match="cohort size"):
            simulate(
                bank,
                bundle,
                4,
                1,
                out_path=tmp_path / "x.jsonl",
                students=students,
            )


class TestReplayability:
    def test_log_replays_to_identical_states(self, small_run, bank):
        result = replay_log(
            load_log(small_run.log_path), bank, verify_grades=True
        )
        assert result.states == small_run.states
        assert result.profiles == small_run.profiles

    def test_log_round_trips_through_storage(self, small_run):
        assert tuple(load_log(small_run.log_path)) == small_run.records
