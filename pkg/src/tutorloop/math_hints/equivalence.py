"""Equivalence verdicts and first-difference hints between expression trees.

Two expressions are Equivalent when their canonical forms coincide or when
they agree numerically at seeded random points (symbols sampled uniformly
from [−3,−0.1] ∪ [0.1,3]; non-finite evaluations redraw the whole sample, at
most 10 times each). Equations compare side differences, so ``y = m x`` and
``y − m x = 0`` agree. Expressions applying functions the evaluator does not
know (a declared-but-opaque ``h(x)``) cannot be sampled; if canonical forms
also differ the verdict is Ambiguous rather than a guess.

When the verdict is Different, a top-down walk of the canonical trees in
canonical child order reports the first difference: a sum term the attempt
is missing or has extra, a wrong constant coefficient on an otherwise
matching term, a wrong exponent over the same base, a wrong operator node,
or — when nothing finer applies — a structural mismatch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np

from .canonical import canonicalize, sort_key
from .nodes import (
    Add,
    Apply,
    Equals,
    Mul,
    Node,
    Number,
    Pow,
    evaluate,
    free_variables,
    has_unknown_apply,
    render_latex,
)

SAMPLE_LOW = 0.1
SAMPLE_HIGH = 3.0
MAX_REDRAWS = 10


class DiffKind(str, Enum):
    MISSING_TERM = "MissingTerm"
    EXTRA_TERM = "ExtraTerm"
    WRONG_COEFFICIENT = "WrongCoefficient"
    WRONG_EXPONENT = "WrongExponent"
    WRONG_OPERATOR = "WrongOperator"
    STRUCTURAL_MISMATCH = "StructuralMismatch"


@dataclass(frozen=True)
class DiffHint:
    kind: DiffKind
    expected: str
    found: str

    def message(self) -> str:
        if self.kind is DiffKind.MISSING_TERM:
            return f"your equation is missing the term {self.expected}"
        if self.kind is DiffKind.EXTRA_TERM:
            return f"your equation has an extra term {self.found}"
        if self.kind is DiffKind.WRONG_COEFFICIENT:
            return (
                f"check the coefficient: expected {self.expected}, "
                f"found {self.found}"
            )
        if self.kind is DiffKind.WRONG_EXPONENT:
            return (
                f"check the exponent: expected {self.expected}, "
                f"found {self.found}"
            )
        if self.kind is DiffKind.WRONG_OPERATOR:
            return (
                f"check the operation: expected {self.expected}, "
                f"found {self.found}"
            )
        return (
            f"the structure differs: expected {self.expected}, "
            f"found {self.found}"
        )


class VerdictStatus(str, Enum):
    EQUIVALENT = "Equivalent"
    DIFFERENT = "Different"
    AMBIGUOUS = "Ambiguous"


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: VerdictStatus
    diff: Optional[DiffHint] = None

    @property
    def is_equivalent(self) -> bool:
        return self.status is VerdictStatus.EQUIVALENT


def _as_terms(node: Node) -> list[Node]:
    if isinstance(node, Add):
        return list(node.children)
    return [node]


def _coefficient_core(term: Node) -> tuple[Fraction, tuple[Node, ...]]:
    """Split a canonical term into (constant coefficient, sorted core factors)."""
    if isinstance(term, Number):
        return term.value, ()
    if isinstance(term, Mul):
        coeff = Fraction(1)
        core = []
        for child in term.children:
            if isinstance(child, Number):
                coeff *= child.value
            else:
                core.append(child)
        return coeff, tuple(core)
    return Fraction(1), (term,)


def _diff_terms(attempt_terms: list[Node], expected_terms: list[Node]) -> DiffHint:
    remaining_a = list(attempt_terms)
    remaining_e = []
    for term in expected_terms:
        if term in remaining_a:
            remaining_a.remove(term)
        else:
            remaining_e.append(term)
    # matching cores with different constants → coefficient problem
    for e_term in list(remaining_e):
        ce, core_e = _coefficient_core(e_term)
        for a_term in list(remaining_a):
            ca, core_a = _coefficient_core(a_term)
            if core_e == core_a:
                return DiffHint(
                    DiffKind.WRONG_COEFFICIENT,
                    expected=render_latex(e_term),
                    found=render_latex(a_term),
                )
    if remaining_e and not remaining_a:
        return DiffHint(
            DiffKind.MISSING_TERM,
            expected=render_latex(remaining_e[0]),
            found="",
        )
    if remaining_a and not remaining_e:
        return DiffHint(
            DiffKind.EXTRA_TERM,
            expected="",
            found=render_latex(remaining_a[0]),
        )
    if len(remaining_e) == 1 and len(remaining_a) == 1:
        return _diff(remaining_a[0], remaining_e[0])
    return DiffHint(
        DiffKind.MISSING_TERM,
        expected=render_latex(remaining_e[0]),
        found="",
    )


def _diff(attempt: Node, expected: Node) -> DiffHint:
    """First difference between canonical trees, attempt vs expectation."""
    if attempt == expected:
        raise ValueError("no difference between equal trees")
    if isinstance(attempt, Equals) != isinstance(expected, Equals):
        return DiffHint(
            DiffKind.STRUCTURAL_MISMATCH,
            expected=render_latex(expected),
            found=render_latex(attempt),
        )
    if isinstance(attempt, Equals) and isinstance(expected, Equals):
        if attempt.left != expected.left:
            return _diff(attempt.left, expected.left)
        return _diff(attempt.right, expected.right)
    if isinstance(attempt, Add) or isinstance(expected, Add):
        return _diff_terms(_as_terms(attempt), _as_terms(expected))
    if isinstance(attempt, Mul) or isinstance(expected, Mul):
        ca, core_a = _coefficient_core(attempt)
        ce, core_e = _coefficient_core(expected)
        if core_a == core_e and ca != ce:
            return DiffHint(
                DiffKind.WRONG_COEFFICIENT,
                expected=render_latex(expected),
                found=render_latex(attempt),
            )
        if isinstance(attempt, Mul) and isinstance(expected, Mul):
            return _diff_terms(list(core_a), list(core_e))
        return DiffHint(
            DiffKind.WRONG_OPERATOR,
            expected=render_latex(expected),
            found=render_latex(attempt),
        )
    if isinstance(attempt, Pow) and isinstance(expected, Pow):
        if attempt.base == expected.base:
            return DiffHint(
                DiffKind.WRONG_EXPONENT,
                expected=render_latex(expected.exponent),
                found=render_latex(attempt.exponent),
            )
        return _diff(attempt.base, expected.base)
    if isinstance(attempt, Number) and isinstance(expected, Number):
        return DiffHint(
            DiffKind.WRONG_COEFFICIENT,
            expected=render_latex(expected),
            found=render_latex(attempt),
        )
    operator_kinds = (Pow, Apply)
    if isinstance(attempt, operator_kinds) or isinstance(expected, operator_kinds):
        return DiffHint(
            DiffKind.WRONG_OPERATOR,
            expected=render_latex(expected),
            found=render_latex(attempt),
        )
    return DiffHint(
        DiffKind.STRUCTURAL_MISMATCH,
        expected=render_latex(expected),
        found=render_latex(attempt),
    )


def _side_difference(tree: Node) -> Node:
    """Equations compare as (left − right); plain expressions as themselves."""
    if isinstance(tree, Equals):
        return Add((tree.left, Mul((Number(Fraction(-1)), tree.right))))
    return tree


def _draw(rng: np.random.Generator) -> float:
    while True:
        value = float(rng.uniform(-SAMPLE_HIGH, SAMPLE_HIGH))
        if abs(value) >= SAMPLE_LOW:
            return value


def _samples_agree(
    attempt: Node,
    expectation: Node,
    seed: int,
    n_samples: int,
    tol: float,
) -> Optional[bool]:
    """True/False when sampling is decisive, None when it never produced
    finite values within the redraw budget."""
    a = _side_difference(attempt)
    e = _side_difference(expectation)
    variables = sorted(free_variables(a) | free_variables(e), key=sort_key)
    rng = np.random.default_rng(seed)
    for _ in range(n_samples):
        for _ in range(MAX_REDRAWS):
            env = {var: _draw(rng) for var in variables}
            try:
                va = float(evaluate(a, env))
                ve = float(evaluate(e, env))
            except (ArithmeticError, ValueError, TypeError):
                continue
            if not (math.isfinite(va) and math.isfinite(ve)):
                continue
            scale = max(1.0, abs(va), abs(ve))
            if abs(va - ve) > tol * scale:
                return False
            break
        else:
            return None
    return True


def check_equivalence(
    attempt: Node,
    expectation: Node,
    seed: int = 0,
    n_samples: int = 32,
    tol: float = 1e-9,
) -> EquivalenceVerdict:
    canon_a = canonicalize(attempt).tree
    canon_e = canonicalize(expectation).tree
    if canon_a == canon_e:
        return EquivalenceVerdict(VerdictStatus.EQUIVALENT)
    if isinstance(canon_a, Equals) != isinstance(canon_e, Equals):
        return EquivalenceVerdict(
            VerdictStatus.DIFFERENT, diff=_diff(canon_a, canon_e)
        )
    if has_unknown_apply(canon_a) or has_unknown_apply(canon_e):
        return EquivalenceVerdict(VerdictStatus.AMBIGUOUS)
    agree = _samples_agree(canon_a, canon_e, seed, n_samples, tol)
    if agree is None:
        return EquivalenceVerdict(VerdictStatus.AMBIGUOUS)
    if agree:
        return EquivalenceVerdict(VerdictStatus.EQUIVALENT)
    return EquivalenceVerdict(VerdictStatus.DIFFERENT, diff=_diff(canon_a, canon_e))
