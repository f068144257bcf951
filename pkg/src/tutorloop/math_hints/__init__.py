"""LaTeX math handling: lexing, ambiguity-aware parsing, canonical forms,
equivalence checking, and gap/diff hints for equation feedback."""
from .lexer import MathToken, TokenKind, lex_latex
from .nodes import (
    Add,
    Apply,
    Blank,
    Div,
    Equals,
    Mul,
    Neg,
    Node,
    Number,
    Pow,
    STANDARD_FUNCTIONS,
    Sub,
    Subscript,
    Symbol,
    children_of,
    evaluate,
    free_variables,
    render_latex,
    walk,
)
from .parser import (
    FOREST_CAP,
    MathContext,
    ParseForest,
    parse_forest,
    parse_latex,
    select_parse,
)
from .canonical import CanonicalForm, canonicalize, sort_key
from .equivalence import (
    DiffHint,
    DiffKind,
    EquivalenceVerdict,
    VerdictStatus,
    check_equivalence,
)
from .gaps import GapHint, GapPolicy, fill_gaps, make_gap_hint

__all__ = [
    "Add",
    "Apply",
    "Blank",
    "CanonicalForm",
    "DiffHint",
    "DiffKind",
    "Div",
    "Equals",
    "EquivalenceVerdict",
    "FOREST_CAP",
    "GapHint",
    "GapPolicy",
    "MathContext",
    "MathToken",
    "Mul",
    "Neg",
    "Node",
    "Number",
    "ParseForest",
    "Pow",
    "STANDARD_FUNCTIONS",
    "Sub",
    "Subscript",
    "Symbol",
    "TokenKind",
    "VerdictStatus",
    "canonicalize",
    "check_equivalence",
    "evaluate",
    "fill_gaps",
    "free_variables",
    "lex_latex",
    "make_gap_hint",
    "parse_forest",
    "parse_latex",
    "render_latex",
    "children_of",
    "select_parse",
    "sort_key",
    "walk",
]
