"""The free m-dendriform algebra on one generator, realized on m-ary trees.

Elements are :class:`LinComb` combinations of non-leaf :class:`MTree` keys of
one arity.  Operations are coded as in :mod:`polyoperad.axioms`:
``LEFT`` (``<``), ``RIGHT`` (``>``), ``i`` for ``.i`` (2 <= i <= m-1) and
``STAR`` (``*`` = ``<`` + ``>``).

For trees ``t = t1 v ... v tm`` and ``r = r1 v ... v rm``::

    t > r   = (t * r1) v r2 v ... v rm
    t < r   = t1 v ... v t(m-1) v (tm * r)
    t .i r  = t1 v ... v t(i-1) v (ti v ... v t(m-1) v (tm * r1) v r2 v ... v ri)
                                 v r(i+1) v ... v rm

where a leaf acts as a two-sided unit for ``*``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .axioms import LEFT, RIGHT, STAR, AxiomReport, check_axioms, dend_axioms
from .exactlin import LinComb, SpanSolver, bilinear
from .expr import Atom, BinOp, Expr, Grammar, Scaled, Sum, evaluate, format_expr, parse_expr
from .trees import MTree, TreeError, _parse_at, corolla, enumerate_trees, involution, leaf


class DendError(ValueError):
    pass


def validate_op(op: int, m: int, allow_star: bool = True) -> None:
    if op in (LEFT, RIGHT) or (op == STAR and allow_star):
        return
    if 2 <= op <= m - 1:
        return
    if op >= 2:
        raise DendError(f"middle operation .{op} needs 2 <= i <= {m - 1} for arity {m}")
    raise DendError(f"unknown operation code {op}")


def operations(m: int) -> list[int]:
    """The m generating operations in canonical order: <, >, .2, ..., .(m-1)."""
    return [LEFT, RIGHT] + list(range(2, m))


def op_symbol(op: int) -> str:
    if op == LEFT:
        return "<"
    if op == RIGHT:
        return ">"
    if op == STAR:
        return "*"
    return f".{op}"


def parse_op(text: str, m: int) -> int:
    text = text.strip()
    table = {"<": LEFT, ">": RIGHT, "*": STAR}
    if text in table:
        op = table[text]
    elif text.startswith(".") and text[1:].isdigit():
        op = int(text[1:])
    elif text == "." and m == 3:
        op = 2
    else:
        raise DendError(f"unknown operation {text!r}; expected <, >, *, or .i")
    validate_op(op, m)
    return op


# ---------------------------------------------------------------------------
# Products on trees
# ---------------------------------------------------------------------------


def _star(t: MTree, r: MTree) -> LinComb:
    if t.is_leaf:
        return LinComb.basis(r)
    if r.is_leaf:
        return LinComb.basis(t)
    return tree_mul(LEFT, t, r) + tree_mul(RIGHT, t, r)


def _graft_each(prefix: tuple, middle: LinComb, suffix: tuple) -> LinComb:
    return LinComb._raw({MTree(s.arity, prefix + (s,) + suffix): c for s, c in middle.raw_items()})


@lru_cache(maxsize=None)
def tree_mul(op: int, t: MTree, r: MTree) -> LinComb:
    """Product of two non-leaf trees of the same arity."""
    if t.arity != r.arity:
        raise DendError(f"arity mismatch: {t.arity} vs {r.arity}")
    if t.is_leaf or r.is_leaf:
        raise DendError("products with the leaf live in the augmented algebra (see hopfcop)")
    m = t.arity
    validate_op(op, m)
    tc, rc = t.children, r.children
    if op == STAR:
        return tree_mul(LEFT, t, r) + tree_mul(RIGHT, t, r)
    if op == RIGHT:
        return _graft_each((), _star(t, rc[0]), rc[1:])
    if op == LEFT:
        return _graft_each(tc[:-1], _star(tc[-1], r), ())
    i = op
    inner = _graft_each(tc[i - 1 : m - 1], _star(tc[-1], rc[0]), rc[1:i])
    return _graft_each(tc[: i - 1], inner, rc[i:])


def _as_lincomb(x) -> LinComb:
    if isinstance(x, MTree):
        return LinComb.basis(x)
    if isinstance(x, LinComb):
        return x
    raise TypeError(f"expected a tree or a linear combination of trees, got {type(x).__name__}")


def _arity_of(x: LinComb) -> int | None:
    for k in x.raw_items():
        return k[0].arity
    return None


def dend_mul(op: int, x, y) -> LinComb:
    """Bilinear extension of the tree products; ``x``, ``y`` are trees or LinCombs."""
    x, y = _as_lincomb(x), _as_lincomb(y)
    mx, my = _arity_of(x), _arity_of(y)
    if mx is not None and my is not None and mx != my:
        raise DendError(f"arity mismatch: {mx} vs {my}")
    m = mx or my
    if m is not None:
        validate_op(op, m)
    return bilinear(x, y, lambda a, b: tree_mul(op, a, b))


def dend_involution(x) -> LinComb:
    return _as_lincomb(x).map_keys(involution)


def opposite_op(op: int, m: int) -> int:
    """The operation whose swapped product realizes ``op`` in the opposite algebra."""
    if op == LEFT:
        return RIGHT
    if op == RIGHT:
        return LEFT
    if op == STAR:
        return STAR
    return m + 1 - op


def dend_opposite(op: int, x, y, m: int) -> tuple[int, LinComb, LinComb]:
    """Rewrite ``x op' y`` in the opposite algebra as a product of the original one."""
    validate_op(op, m)
    return opposite_op(op, m), _as_lincomb(y), _as_lincomb(x)


def opposite_mul(op: int, x, y, m: int) -> LinComb:
    op2, a, b = dend_opposite(op, x, y, m)
    return dend_mul(op2, a, b)


def check_dend_axioms(m: int, max_degree: int, stop_at_first: bool = True) -> AxiomReport:
    return check_axioms(
        "mdend",
        m,
        dend_axioms(m),
        lambda d: enumerate_trees(m, d),
        tree_mul,
        max_degree,
        stop_at_first,
    )


# ---------------------------------------------------------------------------
# Expressions in the generator
# ---------------------------------------------------------------------------


def grammar(m: int) -> Grammar:
    """Atoms: ``c`` (the corolla), a tree key, or ``.`` (the unit, augmented use only)."""

    def read_atom(s: str, pos: int):
        if s.startswith("c", pos):
            return corolla(m), pos + 1
        if s.startswith(".", pos):
            return leaf(m), pos + 1
        if s.startswith("(", pos):
            try:
                tree, end = _parse_at(s, pos, m)
            except TreeError:
                return None
            return tree, end
        return None

    return Grammar((("<", LEFT), (">", RIGHT), ("*", STAR)), ".", read_atom)


def parse_dend_expr(text: str, m: int) -> Expr:
    return parse_expr(text, grammar(m))


def atom_str(t: MTree) -> str:
    return "c" if not t.is_leaf and t == corolla(t.arity) else t.key


def format_dend_expr(expr: Expr) -> str:
    return format_expr(expr, atom_str, op_symbol)


def evaluate_dend_expr(expr: Expr, m: int) -> LinComb:
    def atom_value(t: MTree) -> LinComb:
        if t.arity != m:
            raise DendError(f"arity mismatch: {t.arity} vs {m}")
        if t.is_leaf:
            raise DendError("the unit '.' is not an element of the nonunital algebra")
        return LinComb.basis(t)

    def mul(op, a, b):
        validate_op(op, m)
        return dend_mul(op, a, b)

    return evaluate(expr, atom_value, mul)


def format_element(x: LinComb) -> str:
    return x.format(str)


# ---------------------------------------------------------------------------
# Writing a tree in terms of the generator
# ---------------------------------------------------------------------------


def _gen(m: int) -> Expr:
    return Atom(corolla(m))


def _middle(t: MTree) -> MTree:
    lf = leaf(t.arity)
    return MTree(t.arity, (lf, t, lf))


def split_ternary(t: MTree) -> tuple[int, MTree, MTree] | None:
    """One step of the arity-3 decomposition through the middle map ``s -> (| s |)``.

    Returns ``(op, a, b)`` with ``a op b = t`` (``None`` for the corolla):

    * t1 non-leaf                    -> t1 > (| t2 t3)
    * t1 leaf, t3 non-leaf           -> (| t2 |) < t3
    * t1, t3 leaves, t2 = (s1 s2 s3) -> (| s1 |) .2 (s2 s3 |)

    The last case is the general formula ``m(s1) . (s2 > m(s3))`` with the
    unit action ``| > u = u`` applied.
    """
    if t.arity != 3:
        raise DendError("the ternary decomposition needs arity 3")
    if t.is_leaf:
        raise DendError("cannot decompose a degree-0 tree")
    lf = leaf(3)
    t1, t2, t3 = t.children
    if t1.is_leaf and t2.is_leaf and t3.is_leaf:
        return None
    if not t1.is_leaf:
        return RIGHT, t1, MTree(3, (lf, t2, t3))
    if not t3.is_leaf:
        return LEFT, _middle(t2), t3
    s1, s2, s3 = t2.children
    return 2, _middle(s1), MTree(3, (s2, s3, lf))


def decompose_ternary(t: MTree) -> Expr:
    """Full arity-3 decomposition, applying :func:`split_ternary` recursively."""
    step = split_ternary(t)
    if step is None:
        return _gen(3)
    op, a, b = step
    return BinOp(op, decompose_ternary(a), decompose_ternary(b))


def product_columns(m: int, n: int) -> Iterable[tuple[int, MTree, MTree]]:
    """All products ``a op b`` of basis trees with deg a + deg b = n, in canonical order."""
    for op in operations(m):
        for p in range(1, n):
            for a in enumerate_trees(m, p):
                for b in enumerate_trees(m, n - p):
                    yield op, a, b


@lru_cache(maxsize=None)
def _solver(m: int, n: int) -> SpanSolver:
    solver = SpanSolver()
    target = len(enumerate_trees(m, n))
    for col in product_columns(m, n):
        solver.add(col, tree_mul(*col))
        if solver.rank == target:
            break
    return solver


@lru_cache(maxsize=None)
def split_by_solve(t: MTree) -> tuple[tuple, ...]:
    """``t`` as a combination ``sum c * (a op b)``; returns ``((c, op, a, b), ...)``."""
    if t.is_leaf or t.degree < 2:
        raise DendError("only trees of degree >= 2 are products")
    m, n = t.arity, t.degree
    combo = _solver(m, n).express(LinComb.basis(t))
    if combo is None:
        raise DendError(f"tree {t} is not in the span of products (arity {m}, degree {n})")
    return tuple((c, op, a, b) for (op, a, b), c in combo.items())


@lru_cache(maxsize=None)
def decompose_by_solve(t: MTree) -> Expr:
    """Decomposition by exact linear solve in the span of degree-n products.

    Products are offered in the order of :func:`product_columns`; a product
    is kept only if independent of those kept before, and ``t`` is written
    in the kept products (free variables set to zero), recursively.
    """
    if t.is_leaf:
        raise DendError("cannot decompose a degree-0 tree")
    m, n = t.arity, t.degree
    if n == 1:
        return _gen(m)
    terms: list[Expr] = []
    for c, op, a, b in split_by_solve(t):
        prod = BinOp(op, decompose_by_solve(a), decompose_by_solve(b))
        terms.append(prod if c == 1 else Scaled(c, prod))
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def decompose_generator(t: MTree) -> Expr:
    """An expression in the corolla ``c`` whose value is exactly ``t``."""
    if t.is_leaf:
        raise DendError("cannot decompose a degree-0 tree")
    if t.arity == 3:
        return decompose_ternary(t)
    return decompose_by_solve(t)
