"""The augmented tree algebra and its coassociative coproduct.

The leaf ``.`` of arity m plays the unit ``1``.  Augmented elements are
LinCombs over trees *including* the leaf; tensors are LinCombs over pairs of
such trees.  The unit acts by::

    x < 1 = x    1 < x = 0    1 > x = x    x > 1 = 0    x .i 1 = 0 = 1 .i x
    1 * x = x = x * 1        1 * 1 = 1

and ``1 < 1``, ``1 > 1``, ``1 .i 1`` are undefined.  On tensors::

    (a (x) b) op (a' (x) b') = (a op a') (x) 1         if b = b' = 1
                             = (a * a') (x) (b op b')  otherwise

The coproduct is primitive on the corolla and is extended multiplicatively
along a decomposition of each tree into products.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .axioms import LEFT, RIGHT, STAR
from .exactlin import LinComb, bilinear
from .mdend import DendError, split_by_solve, split_ternary, tree_mul, validate_op
from .trees import MTree, corolla, involution, leaf, parse_tree


class UndefinedUnitProduct(ArithmeticError):
    """``1 op 1`` for an operation other than ``*``."""


def unit(m: int) -> MTree:
    return leaf(m)


def aug(m: int, unit_coeff=0, body: LinComb | None = None) -> LinComb:
    """``unit_coeff * 1 + body`` as a single augmented LinComb."""
    out = LinComb.basis(leaf(m), unit_coeff)
    return out + body if body is not None else out


def unit_coeff(x: LinComb, m: int):
    return x[leaf(m)]


def _op_name(op: int) -> str:
    return {LEFT: "<", RIGHT: ">", STAR: "*"}.get(op, f".{op}")


@lru_cache(maxsize=None)
def aug_basis_mul(op: int, a: MTree, b: MTree) -> LinComb:
    if a.arity != b.arity:
        raise DendError(f"arity mismatch: {a.arity} vs {b.arity}")
    validate_op(op, a.arity)
    if not a.is_leaf and not b.is_leaf:
        return tree_mul(op, a, b)
    if a.is_leaf and b.is_leaf:
        if op == STAR:
            return LinComb.basis(a)
        raise UndefinedUnitProduct(f"1 {_op_name(op)} 1 is not defined")
    if op == STAR:
        return LinComb.basis(b if a.is_leaf else a)
    if op == LEFT:
        return LinComb.basis(a) if b.is_leaf else LinComb.zero()
    if op == RIGHT:
        return LinComb.basis(b) if a.is_leaf else LinComb.zero()
    return LinComb.zero()


def aug_mul(op: int, x: LinComb, y: LinComb) -> LinComb:
    return bilinear(x, y, lambda a, b: aug_basis_mul(op, a, b))


@lru_cache(maxsize=None)
def _tensor_basis_mul(op: int, u: tuple[MTree, MTree], v: tuple[MTree, MTree]) -> LinComb:
    (a, b), (a2, b2) = u, v
    if b.is_leaf and b2.is_leaf:
        return aug_basis_mul(op, a, a2).map_keys(lambda s: (s, b))
    left = aug_basis_mul(STAR, a, a2)
    right = aug_basis_mul(op, b, b2)
    return bilinear(left, right, lambda s, r: LinComb.basis((s, r)))


def tensor_mul(op: int, u: LinComb, v: LinComb) -> LinComb:
    return bilinear(u, v, lambda p, q: _tensor_basis_mul(op, p, q))


def tensor(a: MTree, b: MTree, coef=1) -> LinComb:
    return LinComb.basis((a, b), coef)


def tensor_involution(u: LinComb) -> LinComb:
    return u.map_keys(lambda ab: (involution(ab[0]), involution(ab[1])))


# ---------------------------------------------------------------------------
# Coproduct
# ---------------------------------------------------------------------------

METHODS = ("formula", "solve")


def _default_method(m: int) -> str:
    return "formula" if m == 3 else "solve"


@lru_cache(maxsize=None)
def coproduct_tree(t: MTree, method: str | None = None) -> LinComb:
    """Coproduct of a basis tree (the leaf is the unit: 1 (x) 1)."""
    m = t.arity
    method = method or _default_method(m)
    if method not in METHODS:
        raise ValueError(f"unknown decomposition method {method!r}")
    lf = leaf(m)
    if t.is_leaf:
        return tensor(lf, lf)
    if t.degree == 1:
        return tensor(t, lf) + tensor(lf, t)
    if method == "formula":
        if m != 3:
            raise ValueError("the closed-form decomposition exists only for arity 3")
        op, a, b = split_ternary(t)
        return tensor_mul(op, coproduct_tree(a, method), coproduct_tree(b, method))
    acc = LinComb.zero()
    for c, op, a, b in split_by_solve(t):
        acc = acc + tensor_mul(op, coproduct_tree(a, method), coproduct_tree(b, method)).scale(c)
    return acc


def coproduct(x: LinComb, method: str | None = None) -> LinComb:
    return x.apply_linear(lambda t: coproduct_tree(t, method))


def counit_left(u: LinComb) -> LinComb:
    """(epsilon (x) id): keep the terms ``1 (x) b`` and return ``sum c * b``."""
    return LinComb((b, c) for (a, b), c in u.raw_items() if a.is_leaf)


def counit_right(u: LinComb) -> LinComb:
    return LinComb((a, c) for (a, b), c in u.raw_items() if b.is_leaf)


def delta_left(u: LinComb) -> LinComb:
    """(Delta (x) id) u as a LinComb over triples."""
    acc = LinComb.zero()
    for (a, b), c in u.raw_items():
        acc = acc + coproduct_tree(a).map_keys(lambda p: (p[0], p[1], b)).scale(c)
    return acc


def delta_right(u: LinComb) -> LinComb:
    """(id (x) Delta) u as a LinComb over triples."""
    acc = LinComb.zero()
    for (a, b), c in u.raw_items():
        acc = acc + coproduct_tree(b).map_keys(lambda p: (a, p[0], p[1])).scale(c)
    return acc


def format_tensor(u: LinComb) -> str:
    def key_str(ab):
        a, b = ab
        return f"{_aug_str(a)} (x) {_aug_str(b)}"

    return u.format(key_str)


def _aug_str(t: MTree) -> str:
    return "1" if t.is_leaf else t.key


def generator(m: int) -> LinComb:
    return LinComb.basis(corolla(m))


_TERM = re.compile(r"\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(.+?)\s+\(x\)\s+(.+?)\s*")


def parse_tensor(text: str, m: int) -> LinComb:
    """Inverse of :func:`format_tensor`: ``[q*]A (x) B`` terms joined by `` + `` / `` - ``."""
    text = text.strip()
    if text == "0":
        return LinComb.zero()
    if not text.startswith("-"):
        text = "+ " + text
    acc = LinComb.zero()
    for sign, body in re.findall(r"([+-])\s*((?:(?!\s[+-]\s).)+)", " " + text):
        mt = _TERM.fullmatch(body)
        if not mt:
            raise DendError(f"malformed tensor term {body.strip()!r}; expected [q*]A (x) B")
        coef = Fraction(mt.group(1) or 1) * (-1 if sign == "-" else 1)
        a, b = (leaf(m) if s == "1" else parse_tree(s, m) for s in (mt.group(2), mt.group(3)))
        acc = acc + tensor(a, b, coef)
    return acc
