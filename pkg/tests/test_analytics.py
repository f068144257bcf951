"""Learning-gain statistics: golden values, scipy oracles, and properties."""

from __future__ import annotations

import json
from dataclasses import dataclass

import pytest
import scipy.stats
from hypothesis import given, settings
from hypothesis import strategies as st

from tutorloop.analytics import (
    AttemptFilter,
    build_report,
    clopper_pearson_ci,
    helpfulness_rate,
    learning_gain,
    two_proportion_ztest,
)
from tutorloop.errors import TutorError
from tutorloop.feedback_models import ModelTier
from tutorloop.tutoring_core import (
    EventKind,
    Grade,
    InteractionTurn,
    InterventionRef,
    InterventionType,
)


@dataclass(frozen=True)
class Rec:
    student_id: str
    session_id: str
    turn: InteractionTurn


def _ref(tier: ModelTier) -> InterventionRef:
    return InterventionRef(
        type=InterventionType.TEXT_HINT, tier=tier, content_id="hint:x"
    )


def _attempt(seq, eid, idx, grade, ref=None, helpful=None) -> InteractionTurn:
    return InteractionTurn(
        sequence=seq,
        exercise_id=eid,
        attempt_index=idx,
        kind=EventKind.ATTEMPT,
        attempt_text="answer",
        grade=grade,
        intervention=ref,
        helpful=helpful,
    )


def _help(seq, eid, idx, ref) -> InteractionTurn:
    return InteractionTurn(
        sequence=seq,
        exercise_id=eid,
        attempt_index=idx,
        kind=EventKind.HELP,
        intervention=ref,
    )


def make_tier_log(tier, before_s, before_n, later_s, later_n, start=0):
    """One record stream per trial; Before trials are a subset of All."""
    records = []
    sid = start
    for i in range(before_n):
        success = i < before_s
        eid = "ex"
        student = f"s{sid}"
        sid += 1
        turns = [
            _attempt(0, eid, 1, Grade.INCORRECT, _ref(tier)),
            _attempt(
                1, eid, 2, Grade.CORRECT if success else Grade.INCORRECT
            ),
        ]
        records.extend(Rec(student, "sess", t) for t in turns)
    for i in range(later_n):
        success = i < later_s
        eid = "ex"
        student = f"s{sid}"
        sid += 1
        turns = [
            _attempt(0, eid, 1, Grade.INCORRECT),
            _attempt(1, eid, 2, Grade.INCORRECT, _ref(tier)),
            _attempt(
                2, eid, 3, Grade.CORRECT if success else Grade.INCORRECT
            ),
        ]
        records.extend(Rec(student, "sess", t) for t in turns)
    return records


# Printed report values with the counts realizing them, worked out by an
# exhaustive search over trial counts up to 200 (see
# scripts/infer_gain_counts.py): each (percentage, interval) row pins down
# exactly one (successes, trials) pair.
TABLE_CELLS = [
    (ModelTier.BASELINE, AttemptFilter.ALL_ATTEMPTS, 15, 38, 39.47, 24.04, 56.61),
    (ModelTier.SHALLOW, AttemptFilter.ALL_ATTEMPTS, 20, 43, 46.51, 31.18, 62.34),
    (ModelTier.DEEP, AttemptFilter.ALL_ATTEMPTS, 33, 68, 48.53, 36.22, 60.97),
    (ModelTier.BASELINE, AttemptFilter.BEFORE_SECOND_ATTEMPT, 11, 29, 37.93, 20.69, 57.74),
    (ModelTier.SHALLOW, AttemptFilter.BEFORE_SECOND_ATTEMPT, 18, 35, 51.43, 33.99, 68.62),
    (ModelTier.DEEP, AttemptFilter.BEFORE_SECOND_ATTEMPT, 26, 43, 60.47, 44.41, 75.02),
]

# Per tier: (before_successes, before_trials, later_successes, later_trials)
TIER_COUNTS = {
    ModelTier.BASELINE: (11, 29, 4, 9),
    ModelTier.SHALLOW: (18, 35, 2, 8),
    ModelTier.DEEP: (26, 43, 7, 25),
}


def full_log():
    records = []
    start = 0
    for tier, (bs, bn, ls, ln) in TIER_COUNTS.items():
        records.extend(make_tier_log(tier, bs, bn, ls, ln, start=start))
        start += 1000
    return records


class TestLearningGain:
    @pytest.mark.parametrize(
        "tier,flt,successes,trials,pct,lo,hi", TABLE_CELLS
    )
    def test_report_cells(self, tier, flt, successes, trials, pct, lo, hi):
        log = full_log()
        s, n, proportion = learning_gain(log, tier, flt)
        assert (s, n) == (successes, trials)
        assert abs(100.0 * proportion - pct) < 0.01
        lower, upper = clopper_pearson_ci(s, n)
        assert abs(100.0 * lower - lo) < 0.1
        assert abs(100.0 * upper - hi) < 0.1

    def test_interleaving_invariance(self):
        log = full_log()
        by_student = {}
        for rec in log:
            by_student.setdefault(rec.student_id, []).append(rec)
        # Round-robin interleave all streams.
        interleaved = []
        pending = list(by_student.values())
        while pending:
            still = []
            for stream in pending:
                interleaved.append(stream.pop(0))
                if stream:
                    still.append(stream)
            pending = still
        for tier in TIER_COUNTS:
            for flt in AttemptFilter:
                assert learning_gain(log, tier, flt) == learning_gain(
                    interleaved, tier, flt
                )

    def test_no_trials_error(self):
        log = make_tier_log(ModelTier.BASELINE, 1, 1, 0, 0)
        with pytest.raises(TutorError, match="no trials"):
            learning_gain(log, ModelTier.DEEP)

    def test_intervention_without_followup_counts_as_failed_trial(self):
        turns = [_attempt(0, "ex", 1, Grade.INCORRECT, _ref(ModelTier.DEEP))]
        s, n, p = learning_gain(turns, ModelTier.DEEP)
        assert (s, n, p) == (0, 1, 0.0)

    def test_only_late_intervention_errors_under_before_filter(self):
        # The tier's single intervention arrives after the second attempt.
        turns = [
            _attempt(0, "ex", 1, Grade.INCORRECT),
            _attempt(1, "ex", 2, Grade.INCORRECT, _ref(ModelTier.DEEP)),
            _attempt(2, "ex", 3, Grade.CORRECT),
        ]
        assert learning_gain(turns, ModelTier.DEEP) == (1, 1, 1.0)
        with pytest.raises(TutorError, match="no trials"):
            learning_gain(
                turns, ModelTier.DEEP, AttemptFilter.BEFORE_SECOND_ATTEMPT
            )

    def test_help_before_first_attempt_counts_in_before_filter(self):
        turns = [
            _help(0, "ex", 1, _ref(ModelTier.SHALLOW)),
            _attempt(1, "ex", 1, Grade.CORRECT),
        ]
        assert learning_gain(
            turns, ModelTier.SHALLOW, AttemptFilter.BEFORE_SECOND_ATTEMPT
        ) == (1, 1, 1.0)

    def test_success_requires_same_exercise(self):
        turns = [
            _attempt(0, "a", 1, Grade.INCORRECT, _ref(ModelTier.DEEP)),
            _attempt(1, "b", 1, Grade.CORRECT),
        ]
        assert learning_gain(turns, ModelTier.DEEP) == (0, 1, 0.0)

    def test_bare_turns_accepted(self):
        turns = [
            _attempt(0, "ex", 1, Grade.INCORRECT, _ref(ModelTier.BASELINE)),
            _attempt(1, "ex", 2, Grade.CORRECT),
        ]
        assert learning_gain(turns, ModelTier.BASELINE) == (1, 1, 1.0)


class TestClopperPearson:
    def test_zero_successes_has_zero_lower(self):
        lower, upper = clopper_pearson_ci(0, 10)
        assert lower == 0.0
        assert 0.0 < upper < 1.0

    def test_all_successes_has_unit_upper(self):
        lower, upper = clopper_pearson_ci(10, 10)
        assert upper == 1.0
        assert 0.0 < lower < 1.0

    def test_invalid_counts(self):
        with pytest.raises(TutorError):
            clopper_pearson_ci(5, 0)
        with pytest.raises(TutorError):
            clopper_pearson_ci(11, 10)
        with pytest.raises(TutorError):
            clopper_pearson_ci(-1, 10)

    def test_width_shrinks_with_trials(self):
        widths = []
        for n in (10, 100, 1000):
            s = n // 2
            lower, upper = clopper_pearson_ci(s, n)
            widths.append(upper - lower)
        assert widths[0] > widths[1] > widths[2]

    @given(
        n=st.integers(min_value=1, max_value=300),
        data=st.data(),
    )
    @settings(max_examples=60, deadline=None)
    def test_matches_scipy_and_contains_estimate(self, n, data):
        s = data.draw(st.integers(min_value=0, max_value=n))
        lower, upper = clopper_pearson_ci(s, n)
        assert lower <= s / n <= upper
        expect_lower = (
            0.0 if s == 0 else scipy.stats.beta.ppf(0.025, s, n - s + 1)
        )
        expect_upper = (
            1.0 if s == n else scipy.stats.beta.ppf(0.975, s + 1, n - s)
        )
        assert lower == pytest.approx(expect_lower, abs=1e-8)
        assert upper == pytest.approx(expect_upper, abs=1e-8)


class TestZTest:
    def test_reported_significance(self):
        result = two_proportion_ztest(26, 43, 11, 29)
        assert abs(result.one_tailed_p - 0.03005) < 0.002
        assert result.z == pytest.approx(1.876, abs=1e-3)
        assert result.two_tailed_p == pytest.approx(
            2 * result.one_tailed_p, abs=1e-12
        )

    def test_hand_computed_case(self):
        result = two_proportion_ztest(9, 10, 1, 10)
        assert result.pooled == pytest.approx(0.5)
        assert result.z == pytest.approx(0.8 / (0.25 * 0.2) ** 0.5, abs=1e-9)

    def test_equal_proportions(self):
        result = two_proportion_ztest(5, 10, 5, 10)
        assert result.z == 0.0
        assert result.one_tailed_p == pytest.approx(0.5, abs=1e-7)

    def test_zero_variance_errors(self):
        with pytest.raises(TutorError, match="zero variance"):
            two_proportion_ztest(0, 10, 0, 10)
        with pytest.raises(TutorError, match="zero variance"):
            two_proportion_ztest(10, 10, 5, 5)

    @given(
        n1=st.integers(min_value=2, max_value=200),
        n2=st.integers(min_value=2, max_value=200),
        data=st.data(),
    )
    @settings(max_examples=60, deadline=None)
    def test_antisymmetry_and_scipy_agreement(self, n1, n2, data):
        s1 = data.draw(st.integers(min_value=0, max_value=n1))
        s2 = data.draw(st.integers(min_value=0, max_value=n2))
        total = s1 + s2
        if total == 0 or total == n1 + n2:
            return
        fwd = two_proportion_ztest(s1, n1, s2, n2)
        rev = two_proportion_ztest(s2, n2, s1, n1)
        assert rev.z == pytest.approx(-fwd.z, abs=1e-12)
        assert rev.one_tailed_p == pytest.approx(
            1.0 - fwd.one_tailed_p, abs=1e-7
        )
        assert fwd.one_tailed_p == pytest.approx(
            scipy.stats.norm.sf(fwd.z), abs=1e-6
        )
        assert 0.0 <= fwd.two_tailed_p <= 1.0


class TestHelpfulness:
    def test_five_of_six_pairs(self):
        records = []
        for i in range(6):
            helpful = i < 5
            records.append(
                Rec(
                    f"s{i}",
                    "sess",
                    _attempt(
                        0, "ex", 1, Grade.INCORRECT,
                        _ref(ModelTier.BASELINE), helpful=helpful,
                    ),
                )
            )
        assert helpfulness_rate(records) == pytest.approx(5 / 6)

    def test_either_or_both_rule(self):
        # Same exercise, two rated interventions: one no, one yes.
        turns = [
            _attempt(
                0, "ex", 1, Grade.INCORRECT,
                _ref(ModelTier.BASELINE), helpful=False,
            ),
            _attempt(
                1, "ex", 2, Grade.INCORRECT,
                _ref(ModelTier.SHALLOW), helpful=True,
            ),
        ]
        assert helpfulness_rate(turns) == 1.0

    def test_all_unhelpful(self):
        turns = [
            _attempt(
                0, "ex", 1, Grade.INCORRECT,
                _ref(ModelTier.BASELINE), helpful=False,
            )
        ]
        assert helpfulness_rate(turns) == 0.0

    def test_unrated_log_errors(self):
        turns = [
            _attempt(0, "ex", 1, Grade.INCORRECT, _ref(ModelTier.BASELINE))
        ]
        with pytest.raises(TutorError, match="no rated"):
            helpfulness_rate(turns)


class TestReport:
    def test_full_report_shape(self):
        report = build_report(full_log())
        assert len(report.cells) == 6
        for tier, flt, successes, trials, *_ in TABLE_CELLS:
            cell = report.cell(tier, flt)
            assert (cell.successes, cell.trials) == (successes, trials)
        # deep-vs-baseline under the before filter is the headline test.
        deep_vs_base = [
            c
            for c in report.comparisons
            if c.tier_a is ModelTier.DEEP
            and c.tier_b is ModelTier.BASELINE
            and c.filter is AttemptFilter.BEFORE_SECOND_ATTEMPT
        ]
        assert len(deep_vs_base) == 1
        assert abs(deep_vs_base[0].result.one_tailed_p - 0.03005) < 0.002

    def test_render_text_contains_published_values(self):
        text = build_report(full_log()).render_text()
        for fragment in (
            "39.47%", "46.51%", "48.53%", "37.93%", "51.43%", "60.47%",
            "[24.04%, 56.61%]", "[36.22%, 60.97%]", "All Attempts",
            "Before Second Attempt",
        ):
            assert fragment in text

    def test_json_round_trip(self):
        report = build_report(full_log())
        payload = json.loads(report.to_json())
        assert len(payload["cells"]) == 6
        assert payload["level"] == 0.95

    def test_empty_log_errors(self):
        with pytest.raises(TutorError, match="no trials"):
            build_report([])
