"""Learning-gain measurement over interaction logs.

A *trial* is an intervention of a given personalization tier; a *success* is
the immediately following attempt on the same exercise graded Correct.  Gains
are reported with exact (Clopper-Pearson) binomial confidence intervals and
compared across tiers with a pooled two-proportion z-test.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from .errors import TutorError
from .feedback_models import ModelTier
from .stats_numerics import beta_ppf, normal_cdf
from .tutoring_core import EventKind, Grade, InteractionTurn

__all__ = [
    "AttemptFilter",
    "GainCell",
    "LearningGainReport",
    "PairComparison",
    "ZTestResult",
    "build_report",
    "clopper_pearson_ci",
    "helpfulness_rate",
    "learning_gain",
    "two_proportion_ztest",
]


class AttemptFilter(str, Enum):
    ALL_ATTEMPTS = "AllAttempts"
    BEFORE_SECOND_ATTEMPT = "BeforeSecondAttempt"


@dataclass(frozen=True)
class ZTestResult:
    z: float
    one_tailed_p: float
    two_tailed_p: float
    pooled: float

    def to_dict(self) -> dict:
        return {
            "z": self.z,
            "one_tailed_p": self.one_tailed_p,
            "two_tailed_p": self.two_tailed_p,
            "pooled": self.pooled,
        }


@dataclass(frozen=True)
class GainCell:
    tier: ModelTier
    filter: AttemptFilter
    successes: int
    trials: int
    proportion: float
    ci_lower: float
    ci_upper: float

    def __post_init__(self) -> None:
        if not 0 <= self.successes <= self.trials:
            raise TutorError(
                f"invalid counts: {self.successes}/{self.trials}"
            )
        if not self.ci_lower <= self.proportion <= self.ci_upper:
            raise TutorError(
                "confidence interval must contain the point estimate"
            )

    def to_dict(self) -> dict:
        return {
            "tier": self.tier.value,
            "filter": self.filter.value,
            "successes": self.successes,
            "trials": self.trials,
            "proportion": self.proportion,
            "ci_lower": self.ci_lower,
            "ci_upper": self.ci_upper,
        }


@dataclass(frozen=True)
class PairComparison:
    tier_a: ModelTier
    tier_b: ModelTier
    filter: AttemptFilter
    result: ZTestResult

    def to_dict(self) -> dict:
        return {
            "tier_a": self.tier_a.value,
            "tier_b": self.tier_b.value,
            "filter": self.filter.value,
            **self.result.to_dict(),
        }


@dataclass(frozen=True)
class LearningGainReport:
    cells: tuple[GainCell, ...]
    comparisons: tuple[PairComparison, ...]
    level: float = 0.95

    def cell(self, tier: ModelTier, attempt_filter: AttemptFilter) -> GainCell:
        for cell in self.cells:
            if cell.tier is tier and cell.filter is attempt_filter:
                return cell
        raise TutorError(
            f"no cell for tier {tier.value!r} / filter {attempt_filter.value!r}"
        )

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "cells": [cell.to_dict() for cell in self.cells],
            "comparisons": [cmp.to_dict() for cmp in self.comparisons],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def render_text(self) -> str:
        """Aligned-column table: tier rows, all/before-second-attempt blocks."""

        def fmt_cell(cell: Optional[GainCell]) -> tuple[str, str]:
            if cell is None:
                return "-", "-"
            mean = f"{100.0 * cell.proportion:.2f}%"
            interval = (
                f"[{100.0 * cell.ci_lower:.2f}%, {100.0 * cell.ci_upper:.2f}%]"
            )
            return mean, interval

        tiers = []
        for cell in self.cells:
            if cell.tier not in tiers:
                tiers.append(cell.tier)
        rows = []
        for tier in tiers:
            by_filter = {}
            for attempt_filter in AttemptFilter:
                match = [
                    c
                    for c in self.cells
                    if c.tier is tier and c.filter is attempt_filter
                ]
                by_filter[attempt_filter] = match[0] if match else None
            all_mean, all_ci = fmt_cell(by_filter[AttemptFilter.ALL_ATTEMPTS])
            before_mean, before_ci = fmt_cell(
                by_filter[AttemptFilter.BEFORE_SECOND_ATTEMPT]
            )
            rows.append((tier.value, all_mean, all_ci, before_mean, before_ci))

        header = ("Model", "Mean", "95% C.I.", "Mean", "95% C.I.")
        widths = [
            max(len(row[i]) for row in [header, *rows]) for i in range(5)
        ]
        lines = [
            "{:<{w0}}  {:>{w1}}  {:<{w2}}  {:>{w3}}  {:<{w4}}".format(
                *header,
                w0=widths[0], w1=widths[1], w2=widths[2],
                w3=widths[3], w4=widths[4],
            ),
            "{:<{w0}}  {:^{wa}}  {:^{wb}}".format(
                "",
                "All Attempts",
                "Before Second Attempt",
                w0=widths[0],
                wa=widths[1] + widths[2] + 2,
                wb=widths[3] + widths[4] + 2,
            ),
        ]
        lines[0], lines[1] = lines[1], lines[0]
        for row in rows:
            lines.append(
                "{:<{w0}}  {:>{w1}}  {:<{w2}}  {:>{w3}}  {:<{w4}}".format(
                    *row,
                    w0=widths[0], w1=widths[1], w2=widths[2],
                    w3=widths[3], w4=widths[4],
                )
            )
        if self.comparisons:
            lines.append("")
            for cmp in self.comparisons:
                lines.append(
                    f"{cmp.tier_a.value} vs {cmp.tier_b.value} "
                    f"({cmp.filter.value}): z={cmp.result.z:.3f}, "
                    f"one-tailed p={cmp.result.one_tailed_p:.5f}, "
                    f"two-tailed p={cmp.result.two_tailed_p:.5f}"
                )
        return "\n".join(lines)


def _streams(log: Iterable) -> dict[tuple[str, str], list[InteractionTurn]]:
    """Group a log into per-(student, session) turn streams, sequence-ordered.

    Accepts bare ``InteractionTurn`` values (treated as one anonymous stream)
    or records exposing ``student_id``/``session_id``/``turn`` attributes, as
    written by the storage module.
    """
    streams: dict[tuple[str, str], list[InteractionTurn]] = {}
    for item in log:
        if isinstance(item, InteractionTurn):
            key = ("", "")
            turn = item
        else:
            turn = getattr(item, "turn", None)
            if turn is None:
                raise TutorError(
                    f"log items must be turns or turn records, got {type(item).__name__}"
                )
            key = (
                getattr(item, "student_id", ""),
                getattr(item, "session_id", ""),
            )
        streams.setdefault(key, []).append(turn)
    for turns in streams.values():
        turns.sort(key=lambda t: t.sequence)
    return streams


def _iter_trials(
    log: Iterable, tier: ModelTier, attempt_filter: AttemptFilter
) -> Iterable[bool]:
    """Yield one success flag per trial (intervention of the given tier)."""
    for turns in _streams(log).values():
        attempts_so_far: dict[str, int] = {}
        for position, turn in enumerate(turns):
            if turn.kind is EventKind.ATTEMPT:
                attempts_so_far[turn.exercise_id] = (
                    attempts_so_far.get(turn.exercise_id, 0) + 1
                )
            if turn.intervention is None or turn.intervention.tier is not tier:
                continue
            if attempt_filter is AttemptFilter.BEFORE_SECOND_ATTEMPT:
                # Attempts this student has already made on the exercise at
                # the moment the intervention is delivered (the grading of a
                # same-turn attempt precedes the intervention).
                if attempts_so_far.get(turn.exercise_id, 0) > 1:
                    continue
            success = False
            for later in turns[position + 1:]:
                if (
                    later.kind is EventKind.ATTEMPT
                    and later.exercise_id == turn.exercise_id
                ):
                    success = later.grade is Grade.CORRECT
                    break
            yield success


def learning_gain(
    log: Iterable,
    tier: ModelTier,
    attempt_filter: AttemptFilter = AttemptFilter.ALL_ATTEMPTS,
) -> tuple[int, int, float]:
    """Count (successes, trials) for one tier and return the proportion."""
    successes = 0
    trials = 0
    for success in _iter_trials(log, tier, attempt_filter):
        trials += 1
        if success:
            successes += 1
    if trials == 0:
        raise TutorError(
            f"no trials for tier {tier.value!r} "
            f"under filter {attempt_filter.value!r}"
        )
    return successes, trials, successes / trials


def clopper_pearson_ci(
    successes: int, trials: int, level: float = 0.95
) -> tuple[float, float]:
    """Exact binomial confidence interval via the incomplete-beta inverse."""
    if trials < 1:
        raise TutorError(f"trials must be >= 1, got {trials}")
    if not 0 <= successes <= trials:
        raise TutorError(f"invalid counts: {successes}/{trials}")
    if not 0.0 < level < 1.0:
        raise TutorError(f"confidence level must be in (0, 1), got {level}")
    alpha = 1.0 - level
    if successes == 0:
        lower = 0.0
    else:
        lower = beta_ppf(alpha / 2.0, successes, trials - successes + 1)
    if successes == trials:
        upper = 1.0
    else:
        upper = beta_ppf(1.0 - alpha / 2.0, successes + 1, trials - successes)
    return lower, upper


def two_proportion_ztest(
    s1: int, n1: int, s2: int, n2: int
) -> ZTestResult:
    """Pooled two-proportion z-test; the one-tailed p tests p1 > p2."""
    if n1 < 1 or n2 < 1:
        raise TutorError("both groups need at least one trial")
    if not 0 <= s1 <= n1 or not 0 <= s2 <= n2:
        raise TutorError(
            f"invalid counts: {s1}/{n1} vs {s2}/{n2}"
        )
    pooled = (s1 + s2) / (n1 + n2)
    if pooled in (0.0, 1.0):
        raise TutorError(
            "zero variance: pooled proportion is degenerate "
            f"({s1 + s2}/{n1 + n2})"
        )
    p1 = s1 / n1
    p2 = s2 / n2
    se = math.sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2))
    z = (p1 - p2) / se
    one_tailed = 1.0 - normal_cdf(z)
    two_tailed = 2.0 * min(one_tailed, 1.0 - one_tailed)
    return ZTestResult(
        z=z, one_tailed_p=one_tailed, two_tailed_p=two_tailed, pooled=pooled
    )


def helpfulness_rate(log: Iterable) -> float:
    """Fraction of exercise-intervention groups rated helpful.

    Ratings are grouped per (student, session, exercise): if a student rates
    any of the interventions shown for an exercise as helpful, the whole
    group counts as helpful ("either or both").
    """
    groups: dict[tuple, bool] = {}
    for key, turns in _streams(log).items():
        for turn in turns:
            if turn.intervention is None or turn.helpful is None:
                continue
            group = (*key, turn.exercise_id)
            groups[group] = groups.get(group, False) or turn.helpful
    if not groups:
        raise TutorError("no rated interventions in the log")
    return sum(groups.values()) / len(groups)


_TIER_ORDER = (ModelTier.BASELINE, ModelTier.SHALLOW, ModelTier.DEEP)


def build_report(
    log: Sequence,
    level: float = 0.95,
    tiers: Sequence[ModelTier] = _TIER_ORDER,
) -> LearningGainReport:
    """Compute every available (tier, filter) cell plus pairwise z-tests.

    Tiers with no trials under a filter are omitted from the cells rather
    than erroring, so partial logs still produce a report; an entirely empty
    log errors.
    """
    cells: list[GainCell] = []
    counts: dict[tuple[ModelTier, AttemptFilter], tuple[int, int]] = {}
    for tier in tiers:
        for attempt_filter in AttemptFilter:
            try:
                successes, trials, proportion = learning_gain(
                    log, tier, attempt_filter
                )
            except TutorError:
                continue
            lower, upper = clopper_pearson_ci(successes, trials, level)
            cells.append(
                GainCell(
                    tier=tier,
                    filter=attempt_filter,
                    successes=successes,
                    trials=trials,
                    proportion=proportion,
                    ci_lower=lower,
                    ci_upper=upper,
                )
            )
            counts[(tier, attempt_filter)] = (successes, trials)
    if not cells:
        raise TutorError("no trials for any tier in the log")
    comparisons: list[PairComparison] = []
    for attempt_filter in AttemptFilter:
        present = [t for t in tiers if (t, attempt_filter) in counts]
        for i, tier_b in enumerate(present):
            for tier_a in present[i + 1:]:
                s1, n1 = counts[(tier_a, attempt_filter)]
                s2, n2 = counts[(tier_b, attempt_filter)]
                try:
                    result = two_proportion_ztest(s1, n1, s2, n2)
                except TutorError:
                    continue
                comparisons.append(
                    PairComparison(
                        tier_a=tier_a,
                        tier_b=tier_b,
                        filter=attempt_filter,
                        result=result,
                    )
                )
    return LearningGainReport(
        cells=tuple(cells), comparisons=tuple(comparisons), level=level
    )
