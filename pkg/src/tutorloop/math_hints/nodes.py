"""Expression-tree nodes for the math hint pipeline, plus rendering.

Trees are immutable dataclasses with structural equality. ``render_latex``
emits a minimal-parenthesis LaTeX form that the lexer/parser accept back:
explicit ``\\cdot`` for products (so rendering never reintroduces the
identifier-before-parenthesis ambiguity), braced exponents, and ``\\frac``
for division and non-integer rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Union

from ..errors import TutorError


@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Number(Node):
    value: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Symbol(Node):
    name: str


@dataclass(frozen=True)
class Subscript(Node):
    base: Node
    sub: Node


@dataclass(frozen=True)
class Add(Node):
    children: tuple[Node, ...]

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise TutorError("Add requires at least two children")


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Mul(Node):
    children: tuple[Node, ...]

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise TutorError("Mul requires at least two children")


@dataclass(frozen=True)
class Div(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: Node


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Equals(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Apply(Node):
    function: str
    args: tuple[Node, ...]

    def __post_init__(self) -> None:
        if len(self.args) < 1:
            raise TutorError("Apply requires at least one argument")


@dataclass(frozen=True)
class Blank(Node):
    """Placeholder for a gapped term; renders as a boxed question mark."""


# Functions the renderer prints with a backslash and the evaluator can sample.
STANDARD_FUNCTIONS = {"sin", "cos", "tan", "log", "exp", "sqrt"}
_EVAL_FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "log": math.log,
    "exp": math.exp,
    "sqrt": math.sqrt,
}

# Precedence levels used for minimal parenthesisation.
_PREC_EQUALS = 0
_PREC_ADD = 1
_PREC_MUL = 2
_PREC_NEG = 3
_PREC_POW = 4
_PREC_ATOM = 5


def _precedence(node: Node) -> int:
    if isinstance(node, Equals):
        return _PREC_EQUALS
    if isinstance(node, (Add, Sub)):
        return _PREC_ADD
    if isinstance(node, (Mul, Div)):
        return _PREC_MUL
    if isinstance(node, Neg):
        return _PREC_NEG
    if isinstance(node, Pow):
        return _PREC_POW
    if isinstance(node, Number) and node.value < 0:
        # A negative literal prints with a leading minus, so it binds like a
        # unary negation (e.g. the base of a power needs parentheses).
        return _PREC_NEG
    return _PREC_ATOM


def _wrap(child: Node, min_prec: int) -> str:
    text = render_latex(child)
    if _precedence(child) < min_prec:
        return f"({text})"
    return text


def render_latex(node: Node) -> str:
    if isinstance(node, Number):
        if node.value.denominator == 1:
            return str(node.value.numerator)
        if node.value < 0:
            positive = -node.value
            return f"-\\frac{{{positive.numerator}}}{{{positive.denominator}}}"
        return f"\\frac{{{node.value.numerator}}}{{{node.value.denominator}}}"
    if isinstance(node, Symbol):
        return node.name if len(node.name) == 1 else f"\\{node.name}"
    if isinstance(node, Subscript):
        return f"{_wrap(node.base, _PREC_ATOM)}_{{{render_latex(node.sub)}}}"
    if isinstance(node, Blank):
        return "\\boxed{?}"
    if isinstance(node, Add):
        return " + ".join(_wrap(c, _PREC_ADD) for c in node.children)
    if isinstance(node, Sub):
        return f"{_wrap(node.left, _PREC_ADD)} - {_wrap(node.right, _PREC_ADD + 1)}"
    if isinstance(node, Mul):
        return " \\cdot ".join(_wrap(c, _PREC_MUL) for c in node.children)
    if isinstance(node, Div):
        return f"\\frac{{{render_latex(node.left)}}}{{{render_latex(node.right)}}}"
    if isinstance(node, Neg):
        return f"-{_wrap(node.operand, _PREC_NEG)}"
    if isinstance(node, Pow):
        base = _wrap(node.base, _PREC_ATOM)
        return f"{base}^{{{render_latex(node.exponent)}}}"
    if isinstance(node, Equals):
        return f"{_wrap(node.left, _PREC_ADD)} = {_wrap(node.right, _PREC_ADD)}"
    if isinstance(node, Apply):
        args = ", ".join(render_latex(a) for a in node.args)
        if node.function in STANDARD_FUNCTIONS:
            if node.function == "sqrt":
                return f"\\sqrt{{{args}}}"
            return f"\\{node.function}({args})"
        name = node.function if len(node.function) == 1 else f"\\{node.function}"
        return f"{name}({args})"
    raise TutorError(f"cannot render node {node!r}")


def children_of(node: Node) -> tuple[Node, ...]:
    if isinstance(node, (Add, Mul)):
        return node.children
    if isinstance(node, (Sub, Div)):
        return (node.left, node.right)
    if isinstance(node, Pow):
        return (node.base, node.exponent)
    if isinstance(node, Neg):
        return (node.operand,)
    if isinstance(node, Equals):
        return (node.left, node.right)
    if isinstance(node, Apply):
        return node.args
    if isinstance(node, Subscript):
        return (node.base, node.sub)
    return ()


def walk(node: Node) -> Iterator[Node]:
    """Pre-order traversal."""
    yield node
    for child in children_of(node):
        yield from walk(child)


FreeVariable = Union[Symbol, Subscript]


def free_variables(node: Node) -> set[FreeVariable]:
    """Symbols and subscripted symbols acting as sample-able variables.

    Function names in Apply position are not variables; subscripted symbols
    count as atomic variables (their inner parts are not collected).
    """
    found: set[FreeVariable] = set()
    if isinstance(node, (Symbol, Subscript)):
        found.add(node)
        return found
    for child in children_of(node):
        found |= free_variables(child)
    return found


def evaluate(node: Node, env: dict[FreeVariable, float]) -> float:
    """Numeric evaluation; raises on unknown functions or domain errors."""
    if isinstance(node, Number):
        return float(node.value)
    if isinstance(node, (Symbol, Subscript)):
        try:
            return env[node]
        except KeyError:
            raise TutorError(f"unbound variable {render_latex(node)!r}")
    if isinstance(node, Add):
        return sum(evaluate(c, env) for c in node.children)
    if isinstance(node, Sub):
        return evaluate(node.left, env) - evaluate(node.right, env)
    if isinstance(node, Mul):
        result = 1.0
        for child in node.children:
            result *= evaluate(child, env)
        return result
    if isinstance(node, Div):
        return evaluate(node.left, env) / evaluate(node.right, env)
    if isinstance(node, Neg):
        return -evaluate(node.operand, env)
    if isinstance(node, Pow):
        return evaluate(node.base, env) ** evaluate(node.exponent, env)
    if isinstance(node, Apply):
        fn = _EVAL_FUNCTIONS.get(node.function)
        if fn is None or len(node.args) != 1:
            raise TutorError(
                f"function {node.function!r} is not numerically evaluable"
            )
        return fn(evaluate(node.args[0], env))
    if isinstance(node, Equals):
        raise TutorError("equations are compared side-wise, not evaluated")
    raise TutorError(f"cannot evaluate node {node!r}")


def has_unknown_apply(node: Node) -> bool:
    return any(
        isinstance(n, Apply)
        and (n.function not in _EVAL_FUNCTIONS or len(n.args) != 1)
        for n in walk(node)
    )
