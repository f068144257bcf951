"""Gap hints: the expectation equation with terms blanked out to fill in.

Blankable leaves are Number or Symbol leaves that are proper subtrees and
not inside the left side of a top-level equation (the student fills the
right-hand side, never the quantity being defined). ``BlankOneLeaf`` blanks
one seeded-random choice; ``BlankCoefficients`` blanks every numeric
coefficient (a Number directly inside a product). The hidden answers are
recorded in reading order so substituting them back reconstructs an
expression equivalent to the expectation.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

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
    render_latex,
)

Path = tuple[int, ...]


class GapPolicy(str, Enum):
    BLANK_ONE_LEAF = "BlankOneLeaf"
    BLANK_COEFFICIENTS = "BlankCoefficients"


@dataclass(frozen=True)
class GapHint:
    rendered: str
    answers: tuple[str, ...]
    policy: GapPolicy
    seed: int


def _children(node: Node) -> tuple[Node, ...]:
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


def _rebuild(node: Node, children: tuple[Node, ...]) -> Node:
    if isinstance(node, Add):
        return Add(children)
    if isinstance(node, Mul):
        return Mul(children)
    if isinstance(node, Sub):
        return Sub(children[0], children[1])
    if isinstance(node, Div):
        return Div(children[0], children[1])
    if isinstance(node, Pow):
        return Pow(children[0], children[1])
    if isinstance(node, Neg):
        return Neg(children[0])
    if isinstance(node, Equals):
        return Equals(children[0], children[1])
    if isinstance(node, Apply):
        return Apply(node.function, children)
    if isinstance(node, Subscript):
        return Subscript(children[0], children[1])
    return node


def _leaf_paths(node: Node, path: Path = ()) -> list[tuple[Path, Node]]:
    """(path, leaf) pairs for Number/Symbol leaves, in reading order."""
    if isinstance(node, (Number, Symbol)):
        return [(path, node)]
    found: list[tuple[Path, Node]] = []
    for i, child in enumerate(_children(node)):
        found.extend(_leaf_paths(child, path + (i,)))
    return found


def _blankable_paths(tree: Node) -> list[tuple[Path, Node]]:
    if isinstance(tree, Equals):
        # Left side is off limits; keep full paths rooted at the equation.
        right = _leaf_paths(tree.right, (1,))
        return right
    return [(p, leaf) for p, leaf in _leaf_paths(tree) if p != ()]


def _replace(node: Node, path: Path) -> Node:
    if not path:
        return Blank()
    children = list(_children(node))
    children[path[0]] = _replace(children[path[0]], path[1:])
    return _rebuild(node, tuple(children))


def _parent(tree: Node, path: Path) -> Node:
    node = tree
    for i in path[:-1]:
        node = _children(node)[i]
    return node


def make_gap_hint(
    expectation: Node,
    policy: GapPolicy = GapPolicy.BLANK_ONE_LEAF,
    seed: int = 0,
) -> GapHint:
    candidates = _blankable_paths(expectation)
    if policy is GapPolicy.BLANK_COEFFICIENTS:
        candidates = [
            (p, leaf)
            for p, leaf in candidates
            if isinstance(leaf, Number)
            and isinstance(_parent(expectation, p), (Mul, Div))
        ]
    if not candidates:
        raise TutorError("expectation has no blankable leaf for this policy")
    if policy is GapPolicy.BLANK_ONE_LEAF:
        rng = np.random.default_rng(seed)
        chosen = [candidates[int(rng.integers(len(candidates)))]]
    else:
        chosen = candidates
    tree = expectation
    for path, _leaf in chosen:
        tree = _replace(tree, path)
    answers = tuple(render_latex(leaf) for _path, leaf in chosen)
    return GapHint(
        rendered=render_latex(tree),
        answers=answers,
        policy=policy,
        seed=seed,
    )


def fill_gaps(hint: GapHint, answers: tuple[str, ...]) -> str:
    """Substitute answers into the blanks, left to right."""
    text = hint.rendered
    for answer in answers:
        if "\\boxed{?}" not in text:
            raise TutorError("more answers than blanks")
        text = text.replace("\\boxed{?}", f"({answer})", 1)
    return text
