"""Numerics checked against scipy as an independent oracle."""

from __future__ import annotations

import math

import pytest
import scipy.stats
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from tutorloop.errors import TutorError
from tutorloop.stats_numerics import (
    beta_ppf,
    log_beta,
    mean_confidence_interval,
    normal_cdf,
    normal_ppf,
    regularized_incomplete_beta,
    student_t_cdf,
    student_t_ppf,
)


class TestIncompleteBeta:
    @given(
        a=st.floats(min_value=0.5, max_value=80.0),
        b=st.floats(min_value=0.5, max_value=80.0),
        x=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=80, deadline=None)
    def test_matches_scipy(self, a, b, x):
        ours = regularized_incomplete_beta(a, b, x)
        oracle = scipy.special.betainc(a, b, x)
        assert ours == pytest.approx(oracle, abs=1e-9)

    def test_boundaries(self):
        assert regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
        assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0

    @given(
        a=st.floats(min_value=0.5, max_value=50.0),
        b=st.floats(min_value=0.5, max_value=50.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_log_beta_matches_scipy(self, a, b):
        assert log_beta(a, b) == pytest.approx(
            scipy.special.betaln(a, b), rel=1e-12, abs=1e-12
        )

    @given(
        p=st.floats(min_value=0.001, max_value=0.999),
        a=st.floats(min_value=0.5, max_value=60.0),
        b=st.floats(min_value=0.5, max_value=60.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_ppf_inverts_cdf(self, p, a, b):
        x = beta_ppf(p, a, b)
        # The inversion bisects on x to 1e-10; steep CDF regions amplify
        # that into ~1e-8 of probability error.
        assert regularized_incomplete_beta(a, b, x) == pytest.approx(p, abs=1e-6)
        assert x == pytest.approx(scipy.stats.beta.ppf(p, a, b), abs=1e-8)


class TestNormal:
    @given(x=st.floats(min_value=-8.0, max_value=8.0))
    @settings(max_examples=100, deadline=None)
    def test_cdf_accuracy(self, x):
        # The rational approximation is documented to 7.5e-8 absolute error.
        assert normal_cdf(x) == pytest.approx(
            scipy.stats.norm.cdf(x), abs=1e-7
        )

    @given(x=st.floats(min_value=-8.0, max_value=8.0))
    @settings(max_examples=50, deadline=None)
    def test_symmetry(self, x):
        assert normal_cdf(x) + normal_cdf(-x) == pytest.approx(1.0, abs=1e-12)

    def test_known_points(self):
        assert normal_cdf(0.0) == pytest.approx(0.5, abs=1e-9)
        assert normal_cdf(1.959963985) == pytest.approx(0.975, abs=1e-7)

    @given(p=st.floats(min_value=0.001, max_value=0.999))
    @settings(max_examples=50, deadline=None)
    def test_ppf_inverts(self, p):
        assert normal_cdf(normal_ppf(p)) == pytest.approx(p, abs=1e-7)

    def test_ppf_domain(self):
        with pytest.raises(TutorError):
            normal_ppf(0.0)
        with pytest.raises(TutorError):
            normal_ppf(1.0)


class TestStudentT:
    @given(
        x=st.floats(min_value=-10.0, max_value=10.0),
        df=st.integers(min_value=1, max_value=200),
    )
    @settings(max_examples=80, deadline=None)
    def test_cdf_matches_scipy(self, x, df):
        assert student_t_cdf(x, df) == pytest.approx(
            scipy.stats.t.cdf(x, df), abs=1e-8
        )

    @given(
        p=st.floats(min_value=0.01, max_value=0.99),
        df=st.integers(min_value=1, max_value=100),
    )
    @settings(max_examples=60, deadline=None)
    def test_ppf_matches_scipy(self, p, df):
        assert student_t_ppf(p, df) == pytest.approx(
            scipy.stats.t.ppf(p, df), abs=1e-6
        )

    def test_critical_value_df49(self):
        # 50-fold cross-validation yields 49 degrees of freedom.
        assert student_t_ppf(0.975, 49) == pytest.approx(2.0095752, abs=1e-5)


class TestMeanConfidenceInterval:
    def test_matches_scipy_sem_interval(self):
        values = [0.61, 0.58, 0.70, 0.66, 0.63, 0.59, 0.72, 0.65]
        mean, lo, hi = mean_confidence_interval(values)
        sem = scipy.stats.sem(values)
        expect_lo, expect_hi = scipy.stats.t.interval(
            0.95, len(values) - 1, loc=sum(values) / len(values), scale=sem
        )
        assert mean == pytest.approx(sum(values) / len(values))
        assert lo == pytest.approx(expect_lo, abs=1e-9)
        assert hi == pytest.approx(expect_hi, abs=1e-9)

    def test_zero_variance_collapses(self):
        mean, lo, hi = mean_confidence_interval([0.5, 0.5, 0.5])
        assert mean == lo == hi == 0.5

    def test_needs_two_values(self):
        with pytest.raises(TutorError):
            mean_confidence_interval([1.0])

    @given(
        values=st.lists(
            st.floats(min_value=-5.0, max_value=5.0),
            min_size=2,
            max_size=30,
        )
    )
    @settings(max_examples=50, deadline=None)
    def test_interval_contains_mean(self, values):
        mean, lo, hi = mean_confidence_interval(values)
        assert lo <= mean <= hi
