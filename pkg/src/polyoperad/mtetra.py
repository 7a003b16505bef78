"""The free m-tetrahedral algebra (m = 3: triangular) on one generator.

A monomial ``[a1|a2,...,a(m-1)|am]`` stands for
``w1 (x) [v (x) w2 (x) ... (x) w(m-1)] (x) wm`` with ``|wi| = ai``: a left
word, a central generator carrying m-2 middle words, and a right word.  The
products, read off the tensor formulas with the projections killing every
nonempty word, are::

    x |- y  : needs a2..a(m-1) = 0       -> (a1+1+am+b1, b2, ..., bm)
    x -| y  : needs b2..b(m-1) = 0       -> (a1, ..., a(m-1), am+b1+1+bm)
    x _i y  : needs ai..a(m-1) = 0 and b2..bi = 0
              -> (a1, a2..a(i-1), am+b1+1, b(i+1)..b(m-1), bm)

:class:`TetraWord` implements the same formulas literally on words over an
arbitrary alphabet; it is the independent oracle for the exponent rules and
doubles as the free algebra on several generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Hashable, Iterator

from .axioms import LEFT, RIGHT, AxiomReport, check_axioms, tetra_axioms
from .exactlin import LinComb, bilinear
from .expr import Atom, Expr, Grammar, evaluate, format_expr, parse_expr, substitute


class TetraError(ValueError):
    pass


def _validate_op(op: int, m: int) -> None:
    if op in (LEFT, RIGHT) or 2 <= op <= m - 1:
        return
    raise TetraError(f"operation code {op} out of range for arity {m} (use -|, |-, _2.._{m - 1})")


def op_symbol(op: int) -> str:
    if op == LEFT:
        return "-|"
    if op == RIGHT:
        return "|-"
    return f"_{op}"


def operations(m: int) -> list[int]:
    return [LEFT, RIGHT] + list(range(2, m))


# ---------------------------------------------------------------------------
# Exponent-tuple monomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class TetraMonomial:
    arity: int
    exps: tuple[int, ...]

    def __post_init__(self):
        if self.arity < 3:
            raise TetraError("m-tetrahedral monomials need m >= 3")
        if len(self.exps) != self.arity or any(e < 0 for e in self.exps):
            raise TetraError(f"need {self.arity} nonnegative exponents, got {self.exps}")

    @property
    def degree(self) -> int:
        return 1 + sum(self.exps)

    @property
    def left(self) -> int:
        return self.exps[0]

    @property
    def right(self) -> int:
        return self.exps[-1]

    @property
    def middles(self) -> tuple[int, ...]:
        return self.exps[1:-1]

    def __str__(self) -> str:
        mids = ",".join(map(str, self.middles))
        return f"[{self.left}|{mids}|{self.right}]"


def chi(m: int) -> TetraMonomial:
    """The generator: all words empty."""
    return TetraMonomial(m, (0,) * m)


_MONO = re.compile(r"\[\s*(\d+)\s*\|\s*(\d+(?:\s*,\s*\d+)*)?\s*\|\s*(\d+)\s*\]")


def parse_monomial(text: str, m: int | None = None) -> TetraMonomial:
    mt = _MONO.fullmatch(text.strip())
    if not mt:
        raise TetraError(f"malformed monomial {text!r}; expected [a1|a2,...|am]")
    mids = [int(v) for v in mt.group(2).split(",")] if mt.group(2) else []
    exps = (int(mt.group(1)), *mids, int(mt.group(3)))
    if m is not None and len(exps) != m:
        raise TetraError(f"monomial {text!r} has arity {len(exps)}, expected {m}")
    return TetraMonomial(len(exps), exps)


@lru_cache(maxsize=None)
def tetra_mul(op: int, x: TetraMonomial, y: TetraMonomial) -> LinComb:
    if x.arity != y.arity:
        raise TetraError(f"arity mismatch: {x.arity} vs {y.arity}")
    m = x.arity
    _validate_op(op, m)
    a, b = x.exps, y.exps
    if op == RIGHT:
        if any(a[1:-1]):
            return LinComb.zero()
        out = (a[0] + 1 + a[-1] + b[0],) + b[1:]
    elif op == LEFT:
        if any(b[1:-1]):
            return LinComb.zero()
        out = a[:-1] + (a[-1] + b[0] + 1 + b[-1],)
    else:
        i = op
        # slots are 1-based: a_i..a_(m-1) are a[i-1:m-1], b_2..b_i are b[1:i]
        if any(a[i - 1 : m - 1]) or any(b[1:i]):
            return LinComb.zero()
        out = a[: i - 1] + (a[-1] + b[0] + 1,) + b[i:]
    return LinComb.basis(TetraMonomial(m, out))


def tetra_lin_mul(op: int, x: LinComb, y: LinComb) -> LinComb:
    return bilinear(x, y, lambda p, q: tetra_mul(op, p, q))


def tetra_dim(m: int, n: int) -> int:
    """Degree-n dimension: the tetrahedral number C(n+m-2, m-1)."""
    if m < 3 or n < 1:
        raise TetraError("need m >= 3 and n >= 1")
    return comb(n + m - 2, m - 1)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _monomials(m: int, n: int) -> tuple[TetraMonomial, ...]:
    if n < 1:
        return ()
    return tuple(sorted(TetraMonomial(m, e) for e in _compositions(n - 1, m)))


def enumerate_monomials(m: int, n: int) -> list[TetraMonomial]:
    return list(_monomials(m, n))


def check_tetra_axioms(m: int, max_degree: int, stop_at_first: bool = True) -> AxiomReport:
    return check_axioms(
        "mtetra", m, tetra_axioms(m), lambda d: _monomials(m, d), tetra_mul, max_degree, stop_at_first
    )


# ---------------------------------------------------------------------------
# Homogeneous polynomials and the index bijection
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class HomogMonomial:
    exps: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def __str__(self) -> str:
        parts = [f"X{i}" if e == 1 else f"X{i}^{e}" for i, e in enumerate(self.exps) if e]
        return " ".join(parts) if parts else "1"


def to_polynomial(x: TetraMonomial) -> HomogMonomial:
    """Left word -> X0, right word -> X1, middle words -> X2..X(m-1)."""
    return HomogMonomial((x.left, x.right) + x.middles)


def from_polynomial(p: HomogMonomial) -> TetraMonomial:
    e = p.exps
    if len(e) < 3:
        raise TetraError("need at least three variables")
    return TetraMonomial(len(e), (e[0],) + e[2:] + (e[1],))


_VAR = re.compile(r"X(\d+)(?:\^(\d+))?")


def parse_polynomial(text: str, m: int) -> HomogMonomial:
    text = text.strip()
    exps = [0] * m
    if text == "1":
        return HomogMonomial(tuple(exps))
    for tok in text.split():
        mt = _VAR.fullmatch(tok)
        if not mt:
            raise TetraError(f"malformed factor {tok!r}; expected Xi or Xi^p")
        i = int(mt.group(1))
        if i >= m:
            raise TetraError(f"variable X{i} out of range for m = {m}")
        exps[i] += int(mt.group(2) or 1)
    return HomogMonomial(tuple(exps))


def eta(x: TetraMonomial) -> tuple[int, int]:
    """Index of a ternary monomial: (p1, p3) if p1 <= p3 else (p1, n-1-p3).

    p1 is the left exponent, p3 the top (middle) exponent and n the degree.
    The image of the degree-n monomials is {(k, j): 0 <= k <= j <= n-1}.
    """
    if x.arity != 3:
        raise TetraError("eta is defined for m = 3 only")
    p1, p3, n = x.left, x.middles[0], x.degree
    return (p1, p3) if p1 <= p3 else (p1, n - 1 - p3)


def index_set(n: int) -> list[tuple[int, int]]:
    """{(k, j): 0 <= k <= j <= n-1}, of size n(n+1)/2."""
    return [(k, j) for k in range(n) for j in range(k, n)]


# ---------------------------------------------------------------------------
# Word-level free algebra (oracle; several generators)
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class TetraWord:
    left: tuple[Hashable, ...]
    center: Hashable
    middles: tuple[tuple[Hashable, ...], ...]
    right: tuple[Hashable, ...]

    @property
    def arity(self) -> int:
        return len(self.middles) + 2

    @property
    def degree(self) -> int:
        return len(self.left) + 1 + sum(map(len, self.middles)) + len(self.right)

    def exponents(self) -> TetraMonomial:
        return TetraMonomial(self.arity, (len(self.left), *map(len, self.middles), len(self.right)))

    def __str__(self) -> str:
        def w(t):
            return "".join(map(str, t)) or "1"

        mids = ",".join(w(t) for t in self.middles)
        return f"{w(self.left)}[{self.center}|{mids}]{w(self.right)}"


def generator_word(letter: Hashable, m: int) -> TetraWord:
    return TetraWord((), letter, ((),) * (m - 2), ())


def _psi(words) -> bool:
    """The projection onto empty words: True iff every word is empty."""
    return not any(words)


def word_mul(op: int, x: TetraWord, y: TetraWord) -> LinComb:
    """The tensor formulas evaluated literally on words."""
    m = x.arity
    if y.arity != m:
        raise TetraError("arity mismatch")
    _validate_op(op, m)
    if op == RIGHT:
        if not _psi(x.middles):
            return LinComb.zero()
        return LinComb.basis(TetraWord(x.left + (x.center,) + x.right + y.left, y.center, y.middles, y.right))
    if op == LEFT:
        if not _psi(y.middles):
            return LinComb.zero()
        return LinComb.basis(TetraWord(x.left, x.center, x.middles, x.right + y.left + (y.center,) + y.right))
    i = op
    # middle slot s (2 <= s <= m-1) is middles[s-2]
    if not _psi(x.middles[i - 2 :]) or not _psi(y.middles[: i - 1]):
        return LinComb.zero()
    glued = x.right + y.left + (y.center,)
    middles = x.middles[: i - 2] + (glued,) + y.middles[i - 1 :]
    return LinComb.basis(TetraWord(x.left, x.center, middles, y.right))


def word_lin_mul(op: int, x: LinComb, y: LinComb) -> LinComb:
    return bilinear(x, y, lambda p, q: word_mul(op, p, q))


# ---------------------------------------------------------------------------
# Expressions and the substitution arithmetic
# ---------------------------------------------------------------------------


def grammar(m: int) -> Grammar:
    """Atoms: ``x`` (the generator) or a monomial ``[a1|...|am]``."""

    def read_atom(s: str, pos: int):
        if s.startswith("x", pos):
            return chi(m), pos + 1
        if s.startswith("[", pos):
            end = s.find("]", pos)
            if end < 0:
                return None
            try:
                return parse_monomial(s[pos : end + 1], m), end + 1
            except TetraError:
                return None
        return None

    return Grammar((("-|", LEFT), ("|-", RIGHT)), "_", read_atom)


def parse_tetra_expr(text: str, m: int) -> Expr:
    return parse_expr(text, grammar(m))


def atom_str(x: TetraMonomial) -> str:
    return "x" if x == chi(x.arity) else str(x)


def format_tetra_expr(expr: Expr) -> str:
    return format_expr(expr, atom_str, op_symbol)


def evaluate_tetra_expr(expr: Expr, m: int) -> LinComb:
    def atom_value(x):
        if isinstance(x, LinComb):
            return x
        if x.arity != m:
            raise TetraError(f"arity mismatch: {x.arity} vs {m}")
        return LinComb.basis(x)

    return evaluate(expr, atom_value, tetra_lin_mul)


def circledast(code: Expr, z: LinComb, m: int) -> LinComb:
    """Substitute ``z`` for every generator in ``code`` and evaluate."""
    if not z:
        raise TetraError("substitution needs a nonzero element")
    degrees = {k.degree for k in z.keys()}
    if len(degrees) != 1:
        raise TetraError("substitution needs a homogeneous element")

    def sub(atom):
        if atom != chi(m):
            raise TetraError("the code must be an expression in the generator x only")
        return Atom(z)

    return evaluate_tetra_expr(substitute(code, sub), m)
