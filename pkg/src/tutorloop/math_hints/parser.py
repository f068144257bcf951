"""Ambiguity-aware recursive-descent parser producing a parse forest.

Every place an identifier immediately precedes an opening parenthesis is an
ambiguity site: ``y(x+5)`` is either the function application ``Apply(y, x+5)``
or the product ``y * (x+5)``. The forest enumerates all decision
combinations (function reading first at each site), capped at 16 trees.
Assignments that fail to parse (e.g. a product reading of ``f(x, y)``) are
dropped, so the forest holds exactly the grammatical readings.

Precedence, loosest to tightest: ``=`` < ``+ -`` < products (explicit or by
adjacency) and ``/`` < unary minus < ``^`` (right-associative). Runs of
``+`` build flat n-ary sums and product runs flat n-ary products, so
re-parsing rendered output reproduces tree shapes exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _iter_product
from typing import Optional

from ..errors import ParseError
from .lexer import MathToken, TokenKind, lex_latex
from .nodes import (
    Add,
    Apply,
    Div,
    Equals,
    Mul,
    Neg,
    Node,
    Number,
    Pow,
    Sub,
    Subscript,
    Symbol,
)

FOREST_CAP = 16
# Identifiers the parse selector treats as conventionally function-like.
SELECTOR_FUNCTIONS = {"sin", "cos", "tan", "log", "exp", "sqrt", "f", "g"}

_FUNCTION_COMMANDS = {"sin", "cos", "tan", "log", "exp"}
_FACTOR_COMMANDS = _FUNCTION_COMMANDS | {"frac", "sqrt", "boxed"}
_PRODUCT_COMMANDS = {"cdot", "times"}


@dataclass(frozen=True)
class ParseForest:
    trees: tuple[Node, ...]
    notes: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.trees:
            raise ParseError("empty parse forest")
        if len(self.trees) != len(self.notes):
            raise ParseError("one interpretation note per tree required")


@dataclass(frozen=True)
class MathContext:
    """Symbol knowledge used to pick the most plausible reading."""

    declared_functions: frozenset[str] = field(default_factory=frozenset)
    bound_variables: frozenset[str] = field(default_factory=frozenset)


class _Parser:
    def __init__(self, tokens: list[MathToken], apply_sites: dict[int, bool]):
        self.tokens = tokens
        self.apply_sites = apply_sites
        self.i = 0

    def _peek(self) -> Optional[MathToken]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _next(self) -> MathToken:
        tok = self._peek()
        if tok is None:
            raise ParseError(
                "unexpected end of input",
                position=self.tokens[-1].span[1] if self.tokens else 0,
            )
        self.i += 1
        return tok

    def _expect(self, kind: TokenKind) -> MathToken:
        tok = self._peek()
        if tok is None or tok.kind is not kind:
            pos = tok.span[0] if tok else (
                self.tokens[-1].span[1] if self.tokens else 0
            )
            raise ParseError(f"expected {kind.value}", position=pos)
        return self._next()

    def parse(self) -> Node:
        node = self._expr()
        tok = self._peek()
        if tok is not None and tok.kind is TokenKind.OPERATOR and tok.lexeme == "=":
            self._next()
            right = self._expr()
            node = Equals(node, right)
            tok = self._peek()
            if (
                tok is not None
                and tok.kind is TokenKind.OPERATOR
                and tok.lexeme == "="
            ):
                raise ParseError("chained equality", position=tok.span[0])
        tok = self._peek()
        if tok is not None:
            raise ParseError(
                f"unexpected token {tok.lexeme!r}", position=tok.span[0]
            )
        return node

    def _expr(self) -> Node:
        children: list[Node] = [self._term()]
        while True:
            tok = self._peek()
            if (
                tok is None
                or tok.kind is not TokenKind.OPERATOR
                or tok.lexeme not in "+-"
            ):
                break
            op = self._next().lexeme
            rhs = self._term()
            if op == "+":
                children.append(rhs)
            else:
                left = children[0] if len(children) == 1 else Add(tuple(children))
                children = [Sub(left, rhs)]
        return children[0] if len(children) == 1 else Add(tuple(children))

    def _starts_factor(self, tok: MathToken) -> bool:
        if tok.kind in (
            TokenKind.NUMBER,
            TokenKind.IDENT,
            TokenKind.LPAREN,
            TokenKind.LBRACE,
        ):
            return True
        return tok.kind is TokenKind.COMMAND and tok.lexeme in _FACTOR_COMMANDS

    def _term(self) -> Node:
        children: list[Node] = [self._factor()]
        while True:
            tok = self._peek()
            if tok is None:
                break
            if tok.kind is TokenKind.OPERATOR and tok.lexeme == "*":
                self._next()
                children.append(self._factor())
            elif tok.kind is TokenKind.COMMAND and tok.lexeme in _PRODUCT_COMMANDS:
                self._next()
                children.append(self._factor())
            elif tok.kind is TokenKind.OPERATOR and tok.lexeme == "/":
                self._next()
                rhs = self._factor()
                left = children[0] if len(children) == 1 else Mul(tuple(children))
                children = [Div(left, rhs)]
            elif self._starts_factor(tok):
                children.append(self._factor())
            else:
                break
        return children[0] if len(children) == 1 else Mul(tuple(children))

    def _factor(self) -> Node:
        tok = self._peek()
        if tok is not None and tok.kind is TokenKind.OPERATOR and tok.lexeme == "-":
            self._next()
            return Neg(self._factor())
        return self._power()

    def _power(self) -> Node:
        base = self._postfix()
        tok = self._peek()
        if tok is not None and tok.kind is TokenKind.OPERATOR and tok.lexeme == "^":
            self._next()
            exponent = self._exponent_operand()
            return Pow(base, exponent)
        return base

    def _exponent_operand(self) -> Node:
        tok = self._peek()
        if tok is not None and tok.kind is TokenKind.LBRACE:
            self._next()
            inner = self._expr()
            self._expect(TokenKind.RBRACE)
            return inner
        return self._factor()

    def _postfix(self) -> Node:
        node = self._atom()
        while True:
            tok = self._peek()
            if tok is None or tok.kind is not TokenKind.UNDERSCORE:
                break
            self._next()
            node = Subscript(node, self._subscript_operand())
        return node

    def _subscript_operand(self) -> Node:
        tok = self._peek()
        if tok is not None and tok.kind is TokenKind.LBRACE:
            self._next()
            inner = self._expr()
            self._expect(TokenKind.RBRACE)
            return inner
        if tok is not None and tok.kind is TokenKind.NUMBER:
            return Number(Fraction(self._next().lexeme))
        if tok is not None and tok.kind is TokenKind.IDENT:
            return Symbol(self._next().lexeme)
        pos = tok.span[0] if tok else 0
        raise ParseError("expected subscript", position=pos)

    def _call_args(self) -> tuple[Node, ...]:
        self._expect(TokenKind.LPAREN)
        args = [self._expr()]
        while True:
            tok = self._peek()
            if tok is not None and tok.kind is TokenKind.COMMA:
                self._next()
                args.append(self._expr())
            else:
                break
        self._expect(TokenKind.RPAREN)
        return tuple(args)

    def _atom(self) -> Node:
        tok = self._peek()
        if tok is None:
            raise ParseError(
                "unexpected end of input",
                position=self.tokens[-1].span[1] if self.tokens else 0,
            )
        if tok.kind is TokenKind.NUMBER:
            self._next()
            return Number(Fraction(tok.lexeme))
        if tok.kind is TokenKind.IDENT:
            index = self.i
            self._next()
            nxt = self._peek()
            if (
                nxt is not None
                and nxt.kind is TokenKind.LPAREN
                and self.apply_sites.get(index, False)
            ):
                return Apply(tok.lexeme, self._call_args())
            return Symbol(tok.lexeme)
        if tok.kind is TokenKind.COMMAND:
            return self._command_atom()
        if tok.kind is TokenKind.LPAREN:
            self._next()
            inner = self._expr()
            self._expect(TokenKind.RPAREN)
            return inner
        if tok.kind is TokenKind.LBRACE:
            self._next()
            inner = self._expr()
            self._expect(TokenKind.RBRACE)
            return inner
        raise ParseError(
            f"unexpected token {tok.lexeme!r}", position=tok.span[0]
        )

    def _brace_group(self) -> Node:
        self._expect(TokenKind.LBRACE)
        inner = self._expr()
        self._expect(TokenKind.RBRACE)
        return inner

    def _command_atom(self) -> Node:
        tok = self._next()
        name = tok.lexeme
        if name == "frac":
            return Div(self._brace_group(), self._brace_group())
        if name == "sqrt":
            return Apply("sqrt", (self._brace_group(),))
        if name == "boxed":
            return self._brace_group()
        if name in _FUNCTION_COMMANDS:
            nxt = self._peek()
            if nxt is not None and nxt.kind is TokenKind.LPAREN:
                self._next()
                inner = self._expr()
                self._expect(TokenKind.RPAREN)
                return Apply(name, (inner,))
            if nxt is not None and nxt.kind is TokenKind.LBRACE:
                return Apply(name, (self._brace_group(),))
            return Apply(name, (self._power(),))
        raise ParseError(
            f"unexpected command {name!r}", position=tok.span[0]
        )


def _ambiguity_sites(tokens: list[MathToken]) -> list[int]:
    sites = []
    for i in range(len(tokens) - 1):
        if (
            tokens[i].kind is TokenKind.IDENT
            and tokens[i + 1].kind is TokenKind.LPAREN
        ):
            sites.append(i)
    return sites


def parse_forest(tokens: list[MathToken]) -> ParseForest:
    if not tokens:
        raise ParseError("empty expression", position=0)
    sites = _ambiguity_sites(tokens)
    if 2 ** len(sites) > FOREST_CAP:
        raise ParseError(
            f"ambiguity cap exceeded: {len(sites)} ambiguous call sites",
            position=tokens[sites[0]].span[0],
        )
    trees: list[Node] = []
    notes: list[str] = []
    first_error: Optional[ParseError] = None
    for decisions in _iter_product((True, False), repeat=len(sites)):
        site_map = dict(zip(sites, decisions))
        try:
            tree = _Parser(tokens, site_map).parse()
        except ParseError as exc:
            if first_error is None:
                first_error = exc
            continue
        trees.append(tree)
        if sites:
            notes.append(
                "; ".join(
                    f"{tokens[s].lexeme} read as a "
                    + ("function" if apply else "factor")
                    for s, apply in zip(sites, decisions)
                )
            )
        else:
            notes.append("unambiguous")
    if not trees:
        assert first_error is not None
        raise first_error
    return ParseForest(trees=tuple(trees), notes=tuple(notes))


def parse_latex(text: str) -> ParseForest:
    return parse_forest(lex_latex(text))


def _score_tree(tree: Node, context: MathContext) -> int:
    from .nodes import walk

    score = 0
    for node in walk(tree):
        if not isinstance(node, Apply):
            continue
        name = node.function
        if name in context.declared_functions:
            score += 2
        if name in SELECTOR_FUNCTIONS:
            score += 1
        if name in context.bound_variables:
            score -= 2
        if len(name) == 1 and all(isinstance(a, Number) for a in node.args):
            score -= 1
    return score


def select_parse(forest: ParseForest, context: Optional[MathContext] = None) -> Node:
    """Pick the most plausible reading; ties favour the product reading."""
    context = context or MathContext()
    best_index = 0
    best_score = None
    for i, tree in enumerate(forest.trees):
        score = _score_tree(tree, context)
        if best_score is None or score >= best_score:
            best_score = score
            best_index = i
    return forest.trees[best_index]
