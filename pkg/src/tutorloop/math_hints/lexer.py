"""Longest-match lexer for the supported LaTeX expression subset.

Tokens carry character spans that partition the input minus whitespace.
Known commands keep their COMMAND kind; unknown commands (``\\alpha``)
degrade to IDENT of their name so Greek letters behave like symbols.
Anything outside the subset is an immediate error with its position, and
brace balance is checked during lexing so errors point at the offending
brace rather than surfacing later as a confusing parse failure.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from ..errors import ParseError


class TokenKind(str, Enum):
    NUMBER = "NUMBER"
    IDENT = "IDENT"
    COMMAND = "COMMAND"
    OPERATOR = "OPERATOR"
    LPAREN = "LPAREN"
    RPAREN = "RPAREN"
    LBRACE = "LBRACE"
    RBRACE = "RBRACE"
    UNDERSCORE = "UNDERSCORE"
    COMMA = "COMMA"


@dataclass(frozen=True)
class MathToken:
    kind: TokenKind
    lexeme: str
    span: tuple[int, int]


KNOWN_COMMANDS = {
    "cdot", "times", "frac", "sqrt", "sin", "cos", "tan", "log", "exp",
    "boxed",
}

_NUMBER_RE = re.compile(r"\d+(?:\.\d+)?")
_COMMAND_RE = re.compile(r"\\([A-Za-z]+)")
_SINGLE = {
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    "{": TokenKind.LBRACE,
    "}": TokenKind.RBRACE,
    "_": TokenKind.UNDERSCORE,
    ",": TokenKind.COMMA,
}
_OPERATORS = {"+", "-", "*", "/", "^", "="}
# Unicode minus normalizes to ASCII so pasted equations lex cleanly.
_MINUS_VARIANTS = {"−": "-"}


def lex_latex(text: str) -> list[MathToken]:
    tokens: list[MathToken] = []
    brace_stack: list[int] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        ch = _MINUS_VARIANTS.get(ch, ch)
        m = _NUMBER_RE.match(text, i)
        if m:
            tokens.append(
                MathToken(TokenKind.NUMBER, m.group(0), (i, m.end()))
            )
            i = m.end()
            continue
        if ch == "\\":
            m = _COMMAND_RE.match(text, i)
            if not m:
                raise ParseError("stray backslash", position=i)
            name = m.group(1)
            kind = (
                TokenKind.COMMAND if name in KNOWN_COMMANDS else TokenKind.IDENT
            )
            tokens.append(MathToken(kind, name, (i, m.end())))
            i = m.end()
            continue
        if ch.isalpha():
            tokens.append(MathToken(TokenKind.IDENT, ch, (i, i + 1)))
            i += 1
            continue
        if ch in _OPERATORS:
            tokens.append(MathToken(TokenKind.OPERATOR, ch, (i, i + 1)))
            i += 1
            continue
        if ch in _SINGLE:
            kind = _SINGLE[ch]
            if kind is TokenKind.LBRACE:
                brace_stack.append(i)
            elif kind is TokenKind.RBRACE:
                if not brace_stack:
                    raise ParseError("unbalanced closing brace", position=i)
                brace_stack.pop()
            tokens.append(MathToken(kind, ch, (i, i + 1)))
            i += 1
            continue
        raise ParseError(f"unsupported character {ch!r}", position=i)
    if brace_stack:
        raise ParseError("unbalanced opening brace", position=brace_stack[0])
    return tokens
