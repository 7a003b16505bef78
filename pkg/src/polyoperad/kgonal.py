"""The free k-gonal algebra on one generator.

A monomial ``[a|tag:p|c|d]`` stands for ``w1 (x) [v (x) w (x) w2] (x) w3``
with ``|w1| = a``, ``|w2| = c``, ``|w3| = d`` and ``w`` either the scalar
summand (``tag:-``) or a generator copy in the p-th of the k-3 extra
summands (``tag:p``).  The products::

    x -| y  : needs y untagged, y.c = 0        -> (a, tag, c, d + y.a + 1 + y.d)
    x |- y  : needs x untagged, x.c = 0        -> (a + 1 + d + y.a, y.tag, y.c, y.d)
    x _2 y  : needs both untagged, both c = 0  -> (a, -, d + y.a + 1, y.d)
    x _i y  : same guard (3 <= i <= k-1)       -> (a, i-2, d + y.a, y.d)

For ``_i`` with i >= 3 the glued word ``w3 w1' v'`` sends its first letter
into tagged summand i-2 and keeps the remainder as the middle word.
:class:`GonalWord` evaluates the same formulas on words (the oracle).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable

from .axioms import LEFT, RIGHT, AxiomReport, check_axioms, gonal_axioms
from .exactlin import LinComb, bilinear
from .expr import Expr, Grammar, evaluate, format_expr, parse_expr


class GonalError(ValueError):
    pass


def _validate_op(op: int, k: int) -> None:
    if op in (LEFT, RIGHT) or 2 <= op <= k - 1:
        return
    raise GonalError(f"operation code {op} out of range for k = {k} (use -|, |-, _2.._{k - 1})")


@dataclass(frozen=True, order=True)
class GonalMonomial:
    k: int
    a: int
    tag: int  # 0 = scalar summand, 1..k-3 = tagged generator copy
    c: int
    d: int

    def __post_init__(self):
        if self.k < 3:
            raise GonalError("k-gonal monomials need k >= 3")
        if min(self.a, self.c, self.d) < 0:
            raise GonalError("word lengths must be nonnegative")
        if not 0 <= self.tag <= self.k - 3:
            raise GonalError(f"tag {self.tag} out of range for k = {self.k}")

    @property
    def degree(self) -> int:
        return 1 + self.a + (self.tag != 0) + self.c + self.d

    def __str__(self) -> str:
        tag = "-" if self.tag == 0 else str(self.tag)
        return f"[{self.a}|tag:{tag}|{self.c}|{self.d}]"


def chi(k: int) -> GonalMonomial:
    return GonalMonomial(k, 0, 0, 0, 0)


_MONO = re.compile(r"\[\s*(\d+)\s*\|\s*tag:\s*(-|\d+)\s*\|\s*(\d+)\s*\|\s*(\d+)\s*\]")


def parse_monomial(text: str, k: int) -> GonalMonomial:
    mt = _MONO.fullmatch(text.strip())
    if not mt:
        raise GonalError(f"malformed monomial {text!r}; expected [a|tag:p|c|d] with tag:- for none")
    tag = 0 if mt.group(2) == "-" else int(mt.group(2))
    if mt.group(2) != "-" and tag == 0:
        raise GonalError("tags are numbered from 1; write tag:- for the scalar summand")
    return GonalMonomial(k, int(mt.group(1)), tag, int(mt.group(3)), int(mt.group(4)))


@lru_cache(maxsize=None)
def gonal_mul(op: int, x: GonalMonomial, y: GonalMonomial) -> LinComb:
    if x.k != y.k:
        raise GonalError(f"k mismatch: {x.k} vs {y.k}")
    k = x.k
    _validate_op(op, k)
    if op == LEFT:
        if y.tag or y.c:
            return LinComb.zero()
        out = (x.a, x.tag, x.c, x.d + y.a + 1 + y.d)
    elif op == RIGHT:
        if x.tag or x.c:
            return LinComb.zero()
        out = (x.a + 1 + x.d + y.a, y.tag, y.c, y.d)
    else:
        if x.tag or x.c or y.tag or y.c:
            return LinComb.zero()
        if op == 2:
            out = (x.a, 0, x.d + y.a + 1, y.d)
        else:
            out = (x.a, op - 2, x.d + y.a, y.d)
    return LinComb.basis(GonalMonomial(k, *out))


def gonal_lin_mul(op: int, x: LinComb, y: LinComb) -> LinComb:
    return bilinear(x, y, lambda p, q: gonal_mul(op, p, q))


def gonal_number(k: int, n: int) -> int:
    """g_k(n) = n + (k-2) n(n-1)/2."""
    return n + (k - 2) * n * (n - 1) // 2


def gonal_dim(k: int, n: int) -> int:
    if k < 3 or n < 1:
        raise GonalError("need k >= 3 and n >= 1")
    return gonal_number(k, n)


@lru_cache(maxsize=None)
def _monomials(k: int, n: int) -> tuple[GonalMonomial, ...]:
    out = []
    for tag in range(0, k - 2):
        rest = n - 1 - (tag != 0)
        for a in range(rest + 1):
            for c in range(rest - a + 1):
                out.append(GonalMonomial(k, a, tag, c, rest - a - c))
    return tuple(sorted(out))


def enumerate_monomials(k: int, n: int) -> list[GonalMonomial]:
    return list(_monomials(k, n)) if n >= 1 else []


def check_gonal_axioms(k: int, max_degree: int, stop_at_first: bool = True) -> AxiomReport:
    return check_axioms(
        "kgonal", k, gonal_axioms(k), lambda d: _monomials(k, d), gonal_mul, max_degree, stop_at_first
    )


def opposite_op(op: int, k: int) -> int:
    if op == LEFT:
        return RIGHT
    if op == RIGHT:
        return LEFT
    return k + 1 - op


def opposite_mul(op: int, x: GonalMonomial, y: GonalMonomial) -> LinComb:
    """``x op' y`` in the opposite algebra: ``y op'' x`` with -| and |- swapped, _i -> _(k+1-i)."""
    return gonal_mul(opposite_op(op, x.k), y, x)


# ---------------------------------------------------------------------------
# Word-level oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class GonalWord:
    k: int
    left: tuple[Hashable, ...]
    center: Hashable
    tag: tuple  # () for the scalar summand, (p, letter) for summand p
    middle: tuple[Hashable, ...]
    right: tuple[Hashable, ...]

    def exponents(self) -> GonalMonomial:
        return GonalMonomial(self.k, len(self.left), self.tag[0] if self.tag else 0, len(self.middle), len(self.right))

    @property
    def degree(self) -> int:
        return self.exponents().degree


def generator_word(letter: Hashable, k: int) -> GonalWord:
    return GonalWord(k, (), letter, (), (), ())


def _psi(*parts) -> bool:
    return not any(parts)


def _first_letter(word: tuple) -> Hashable:
    return word[0]


def _drop_first(word: tuple) -> tuple:
    return word[1:]


def word_mul(op: int, x: GonalWord, y: GonalWord) -> LinComb:
    k = x.k
    _validate_op(op, k)
    if op == LEFT:
        if not _psi(y.tag, y.middle):
            return LinComb.zero()
        return LinComb.basis(GonalWord(k, x.left, x.center, x.tag, x.middle, x.right + y.left + (y.center,) + y.right))
    if op == RIGHT:
        if not _psi(x.tag, x.middle):
            return LinComb.zero()
        return LinComb.basis(GonalWord(k, x.left + (x.center,) + x.right + y.left, y.center, y.tag, y.middle, y.right))
    if not _psi(x.tag, x.middle, y.tag, y.middle):
        return LinComb.zero()
    glued = x.right + y.left + (y.center,)
    if op == 2:
        return LinComb.basis(GonalWord(k, x.left, x.center, (), glued, y.right))
    tag = (op - 2, _first_letter(glued))
    return LinComb.basis(GonalWord(k, x.left, x.center, tag, _drop_first(glued), y.right))


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------


def op_symbol(op: int) -> str:
    return {LEFT: "-|", RIGHT: "|-"}.get(op, f"_{op}")


def grammar(k: int) -> Grammar:
    def read_atom(s: str, pos: int):
        if s.startswith("x", pos):
            return chi(k), pos + 1
        if s.startswith("[", pos):
            end = s.find("]", pos)
            if end < 0:
                return None
            try:
                return parse_monomial(s[pos : end + 1], k), end + 1
            except GonalError:
                return None
        return None

    return Grammar((("-|", LEFT), ("|-", RIGHT)), "_", read_atom)


def parse_gonal_expr(text: str, k: int) -> Expr:
    return parse_expr(text, grammar(k))


def format_gonal_expr(expr: Expr) -> str:
    return format_expr(expr, lambda x: "x" if x == chi(x.k) else str(x), op_symbol)


def evaluate_gonal_expr(expr: Expr, k: int) -> LinComb:
    def atom_value(x):
        if x.k != k:
            raise GonalError(f"k mismatch: {x.k} vs {k}")
        return LinComb.basis(x)

    def mul(op, a, b):
        _validate_op(op, k)
        return gonal_lin_mul(op, a, b)

    return evaluate(expr, atom_value, mul)
