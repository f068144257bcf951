"""Canonical forms: flattened, sorted, constant-folded expression trees.

Subtraction becomes addition of a (−1)-scaled term, division becomes
multiplication by a (−1) power, n-ary sums and products are flattened and
sorted under a total order, and rational constants are folded exactly with
``fractions.Fraction``. No symbolic cancellation happens (``x - x`` stays a
two-term sum); catching those equivalences is the numeric sampler's job.
Canonicalization is idempotent.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import TutorError
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
    Sub,
    Subscript,
    Symbol,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)
_MINUS_ONE = Number(Fraction(-1))
_POW_FOLD_LIMIT = 64

_RANKS = {
    Number: 0,
    Symbol: 1,
    Subscript: 2,
    Blank: 3,
    Pow: 4,
    Apply: 5,
    Mul: 6,
    Add: 7,
    Equals: 8,
}


def sort_key(node: Node) -> tuple:
    rank = _RANKS[type(node)]
    if isinstance(node, Number):
        return (rank, node.value)
    if isinstance(node, Symbol):
        return (rank, node.name)
    if isinstance(node, Subscript):
        return (rank, sort_key(node.base), sort_key(node.sub))
    if isinstance(node, Blank):
        return (rank,)
    if isinstance(node, Pow):
        return (rank, sort_key(node.base), sort_key(node.exponent))
    if isinstance(node, Apply):
        return (
            rank,
            node.function,
            len(node.args),
            tuple(sort_key(a) for a in node.args),
        )
    if isinstance(node, (Mul, Add)):
        return (
            rank,
            len(node.children),
            tuple(sort_key(c) for c in node.children),
        )
    if isinstance(node, Equals):
        return (rank, sort_key(node.left), sort_key(node.right))
    raise TutorError(f"cannot order node {node!r}")


@dataclass(frozen=True)
class CanonicalForm:
    tree: Node


def _fold_pow(base: Node, exponent: Node) -> Node:
    if (
        isinstance(base, Number)
        and isinstance(exponent, Number)
        and exponent.value.denominator == 1
        and abs(exponent.value.numerator) <= _POW_FOLD_LIMIT
    ):
        power = int(exponent.value)
        if base.value == 0 and power < 0:
            raise TutorError("division by an exact zero constant")
        return Number(base.value**power)
    if isinstance(exponent, Number) and exponent.value == _ONE:
        return base
    return Pow(base, exponent)


def _canon_add(children: list[Node]) -> Node:
    flat: list[Node] = []
    constant = _ZERO
    for child in children:
        if isinstance(child, Add):
            flat.extend(child.children)
        elif isinstance(child, Number):
            constant += child.value
        else:
            flat.append(child)
    for node in flat:
        if isinstance(node, Number):  # nested Adds are already folded
            constant += node.value
    flat = [n for n in flat if not isinstance(n, Number)]
    if constant != _ZERO or not flat:
        flat.append(Number(constant))
    flat.sort(key=sort_key)
    return flat[0] if len(flat) == 1 else Add(tuple(flat))


def _canon_mul(children: list[Node]) -> Node:
    flat: list[Node] = []
    constant = _ONE
    for child in children:
        if isinstance(child, Mul):
            flat.extend(child.children)
        elif isinstance(child, Number):
            constant *= child.value
        else:
            flat.append(child)
    for node in flat:
        if isinstance(node, Number):
            constant *= node.value
    flat = [n for n in flat if not isinstance(n, Number)]
    if constant == _ZERO:
        return Number(_ZERO)
    if constant != _ONE or not flat:
        flat.append(Number(constant))
    flat.sort(key=sort_key)
    return flat[0] if len(flat) == 1 else Mul(tuple(flat))


def _canon(node: Node) -> Node:
    if isinstance(node, (Number, Symbol, Blank)):
        return node
    if isinstance(node, Subscript):
        return Subscript(_canon(node.base), _canon(node.sub))
    if isinstance(node, Neg):
        return _canon_mul([_MINUS_ONE, _canon(node.operand)])
    if isinstance(node, Sub):
        right = _canon_mul([_MINUS_ONE, _canon(node.right)])
        return _canon_add([_canon(node.left), right])
    if isinstance(node, Div):
        denominator = _canon(node.right)
        if isinstance(denominator, Number) and denominator.value == 0:
            raise TutorError("division by an exact zero constant")
        inverse = _fold_pow(denominator, Number(Fraction(-1)))
        return _canon_mul([_canon(node.left), inverse])
    if isinstance(node, Add):
        return _canon_add([_canon(c) for c in node.children])
    if isinstance(node, Mul):
        return _canon_mul([_canon(c) for c in node.children])
    if isinstance(node, Pow):
        return _fold_pow(_canon(node.base), _canon(node.exponent))
    if isinstance(node, Apply):
        return Apply(node.function, tuple(_canon(a) for a in node.args))
    if isinstance(node, Equals):
        sides = sorted((_canon(node.left), _canon(node.right)), key=sort_key)
        return Equals(sides[0], sides[1])
    raise TutorError(f"cannot canonicalize node {node!r}")


def canonicalize(tree: Node) -> CanonicalForm:
    return CanonicalForm(tree=_canon(tree))
