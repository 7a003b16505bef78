"""Planar rooted m-ary trees.

A tree is either a leaf or a node with exactly ``m`` ordered children.  Its
canonical text form (the *tree key*) is ``.`` for a leaf and
``(c1 c2 ... cm)`` for a node; keys are ordered lexicographically, which is
the basis order used everywhere in the package.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import factorial
from typing import Sequence


class TreeError(ValueError):
    pass


class MTree:
    __slots__ = ("arity", "children", "degree", "key", "_hash")

    def __init__(self, arity: int, children: tuple[MTree, ...] = ()):
        if arity < 2:
            raise TreeError(f"arity must be >= 2, got {arity}")
        if children:
            if len(children) != arity:
                raise TreeError(f"a node of arity {arity} needs {arity} children, got {len(children)}")
            for c in children:
                if not isinstance(c, MTree):
                    raise TreeError(f"child {c!r} is not a tree")
                if c.arity != arity:
                    raise TreeError(f"cannot graft an arity-{c.arity} tree into an arity-{arity} node")
        self.arity = arity
        self.children = tuple(children)
        self.degree = 1 + sum(c.degree for c in children) if children else 0
        self.key = "(" + " ".join(c.key for c in children) + ")" if children else "."
        self._hash = hash((arity, self.key))

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def leaf_count(self) -> int:
        return (self.arity - 1) * self.degree + 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MTree):
            return NotImplemented
        return self.arity == other.arity and self.key == other.key

    def __lt__(self, other: MTree) -> bool:
        return (self.arity, self.key) < (other.arity, other.key)

    def __le__(self, other: MTree) -> bool:
        return (self.arity, self.key) <= (other.arity, other.key)

    def __gt__(self, other: MTree) -> bool:
        return (self.arity, self.key) > (other.arity, other.key)

    def __ge__(self, other: MTree) -> bool:
        return (self.arity, self.key) >= (other.arity, other.key)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"MTree({self.arity}, {self.key!r})"

    def __str__(self) -> str:
        return self.key


@lru_cache(maxsize=None)
def leaf(m: int) -> MTree:
    return MTree(m)


@lru_cache(maxsize=None)
def corolla(m: int) -> MTree:
    return MTree(m, (leaf(m),) * m)


def graft(children: Sequence[MTree]) -> MTree:
    """Glue the roots of ``children`` under a new root."""
    children = tuple(children)
    if not children:
        raise TreeError("graft needs at least one child")
    return MTree(children[0].arity, children)


def involution(t: MTree) -> MTree:
    """Mirror image: children reversed at every level."""
    return _involution(t)


@lru_cache(maxsize=None)
def _involution(t: MTree) -> MTree:
    if t.is_leaf:
        return t
    return MTree(t.arity, tuple(_involution(c) for c in reversed(t.children)))


def middle(t: MTree) -> MTree:
    """``| v t v ... v |`` for ternary trees; generally ``t`` grafted in slot 2 between leaves."""
    m = t.arity
    if m < 3:
        raise TreeError("the middle map needs arity >= 3")
    lf = leaf(m)
    return MTree(m, (lf, t) + (lf,) * (m - 2))


def count_trees(m: int, n: int) -> int:
    """Number of m-ary trees with n internal nodes: (mn)! / (n! ((m-1)n+1)!)."""
    if m < 2 or n < 0:
        raise TreeError("need m >= 2 and n >= 0")
    return factorial(m * n) // (factorial(n) * factorial((m - 1) * n + 1))


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate(m: int, n: int) -> tuple[MTree, ...]:
    if n == 0:
        return (leaf(m),)
    out = []
    for degs in _compositions(n - 1, m):
        for kids in product(*(_enumerate(m, d) for d in degs)):
            out.append(MTree(m, kids))
    out.sort()
    return tuple(out)


def enumerate_trees(m: int, n: int) -> list[MTree]:
    """All arity-m trees of degree n, sorted by tree key."""
    if m < 2 or n < 0:
        raise TreeError("need m >= 2 and n >= 0")
    return list(_enumerate(m, n))


def parse_tree(text: str, arity: int | None = None) -> MTree:
    """Parse a tree key.  The arity is inferred from the first node if not given."""
    text = text.strip()
    tree, pos = _parse_at(text, 0, arity)
    if tree is _PendingLeaf:
        raise TreeError("a bare leaf needs an explicit arity")
    if pos != len(text):
        raise TreeError(f"trailing characters in tree {text!r} at position {pos}")
    return tree


def _parse_at(s: str, pos: int, arity: int | None) -> tuple[MTree, int]:
    """Parse one tree starting at ``s[pos]``; returns the tree and the end position."""
    if pos >= len(s):
        raise TreeError("unexpected end of tree text")
    if s[pos] == ".":
        if arity is None:
            # bare leaf with unknown arity: resolved by the caller
            return _PendingLeaf, pos + 1
        return leaf(arity), pos + 1
    if s[pos] != "(":
        raise TreeError(f"unexpected character {s[pos]!r} at position {pos}")
    pos += 1
    kids: list = []
    while True:
        kid, pos = _parse_at(s, pos, arity)
        kids.append(kid)
        if pos >= len(s):
            raise TreeError("unbalanced parenthesis in tree text")
        if s[pos] == ")":
            pos += 1
            break
        if s[pos] != " ":
            raise TreeError(f"expected ' ' or ')' at position {pos}, got {s[pos]!r}")
        pos += 1
    if arity is None:
        arity = len(kids)
        kids = [_resolve(k, arity) for k in kids]
    return MTree(arity, tuple(kids)), pos


class _Pending:
    pass


_PendingLeaf = _Pending()


def _resolve(t, arity: int) -> MTree:
    if t is _PendingLeaf:
        return leaf(arity)
    if t.arity != arity:
        raise TreeError(f"mixed arities {t.arity} and {arity} in one tree")
    return t
