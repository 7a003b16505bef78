"""Formal expressions over binary operations, with a small shared parser.

An expression is an atom, a binary product ``(L op R)``, a rational multiple
``q*E`` or a sum ``E + E - E``.  Every algebra in the package evaluates
expressions through the same :func:`evaluate`, and prints them through
:func:`format_expr`, whose output the parser reads back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Union

from .exactlin import LinComb


@dataclass(frozen=True)
class Atom:
    key: Any


@dataclass(frozen=True)
class BinOp:
    op: int
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Scaled:
    coef: Fraction
    body: "Expr"


@dataclass(frozen=True)
class Sum:
    terms: tuple["Expr", ...]


Expr = Union[Atom, BinOp, Scaled, Sum]


def evaluate(
    expr: Expr,
    atom_value: Callable[[Any], LinComb],
    mul: Callable[[int, LinComb, LinComb], LinComb],
) -> LinComb:
    if isinstance(expr, Atom):
        return atom_value(expr.key)
    if isinstance(expr, BinOp):
        return mul(expr.op, evaluate(expr.left, atom_value, mul), evaluate(expr.right, atom_value, mul))
    if isinstance(expr, Scaled):
        return evaluate(expr.body, atom_value, mul).scale(expr.coef)
    if isinstance(expr, Sum):
        acc = LinComb.zero()
        for t in expr.terms:
            acc = acc + evaluate(t, atom_value, mul)
        return acc
    raise TypeError(f"not an expression: {expr!r}")


def substitute(expr: Expr, f: Callable[[Any], Expr]) -> Expr:
    """Replace every atom ``a`` by the expression ``f(a)``."""
    if isinstance(expr, Atom):
        return f(expr.key)
    if isinstance(expr, BinOp):
        return BinOp(expr.op, substitute(expr.left, f), substitute(expr.right, f))
    if isinstance(expr, Scaled):
        return Scaled(expr.coef, substitute(expr.body, f))
    return Sum(tuple(substitute(t, f) for t in expr.terms))


def format_expr(expr: Expr, atom_str: Callable[[Any], str], op_str: Callable[[int], str]) -> str:
    if isinstance(expr, Atom):
        return atom_str(expr.key)
    if isinstance(expr, BinOp):
        left = format_expr(expr.left, atom_str, op_str)
        right = format_expr(expr.right, atom_str, op_str)
        return f"({left} {op_str(expr.op)} {right})"
    if isinstance(expr, Scaled):
        body = format_expr(expr.body, atom_str, op_str)
        if isinstance(expr.body, Sum):
            body = f"({body})"
        return f"{expr.coef}*{body}"
    parts = []
    for i, t in enumerate(expr.terms):
        s = format_expr(t, atom_str, op_str)
        if i and isinstance(t, Scaled) and t.coef < 0:
            parts.append(" - " + format_expr(Scaled(-t.coef, t.body), atom_str, op_str))
        else:
            parts.append((" + " if i else "") + s)
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class ExprSyntaxError(ValueError):
    """Malformed expression; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.pos = pos
        self.text = text


AtomReader = Callable[[str, int], "tuple[Any, int] | None"]

_NUMBER = re.compile(r"\d+(?:/\d+)?")


@dataclass(frozen=True)
class Grammar:
    """Operator spellings plus an atom reader.

    ``ops`` maps fixed spellings to op codes; ``indexed`` is a prefix such
    as ``"."`` or ``"_"`` that, followed by digits, spells the middle
    operation of that index.
    """

    ops: tuple[tuple[str, int], ...]
    indexed: str
    read_atom: AtomReader

    def match_op(self, s: str, pos: int) -> tuple[int, int] | None:
        for spelling, code in sorted(self.ops, key=lambda p: -len(p[0])):
            if s.startswith(spelling, pos):
                return code, pos + len(spelling)
        if s.startswith(self.indexed, pos):
            m = re.compile(r"\d+").match(s, pos + len(self.indexed))
            if m:
                return int(m.group()), m.end()
        return None


def parse_expr(text: str, grammar: Grammar) -> Expr:
    parser = _Parser(text, grammar)
    expr = parser.sum()
    parser.skip()
    if parser.pos != len(text):
        raise ExprSyntaxError("unexpected trailing input", text, parser.pos)
    return expr


class _Parser:
    def __init__(self, text: str, grammar: Grammar):
        self.s = text
        self.g = grammar
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.s) and self.s[self.pos].isspace():
            self.pos += 1

    def error(self, message: str) -> ExprSyntaxError:
        return ExprSyntaxError(message, self.s, self.pos)

    def sum(self) -> Expr:
        terms = [self.term(negate=False)]
        while True:
            self.skip()
            if self.pos >= len(self.s) or self.g.match_op(self.s, self.pos):
                break
            ch = self.s[self.pos]
            if ch not in "+-":
                break
            self.pos += 1
            terms.append(self.term(negate=ch == "-"))
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self, negate: bool) -> Expr:
        self.skip()
        if not negate and self.s.startswith("-", self.pos) and not self.g.match_op(self.s, self.pos):
            self.pos += 1
            negate = True
            self.skip()
        m = _NUMBER.match(self.s, self.pos)
        coef = None
        if m:
            after = m.end()
            while after < len(self.s) and self.s[after].isspace():
                after += 1
            if after < len(self.s) and self.s[after] == "*":
                coef = Fraction(m.group())
                self.pos = after + 1
        body = self.primary()
        if coef is None and not negate:
            return body
        c = (coef if coef is not None else Fraction(1)) * (-1 if negate else 1)
        return Scaled(c, body)

    def primary(self) -> Expr:
        self.skip()
        if self.pos >= len(self.s):
            raise self.error("expected an operand")
        got = self.g.read_atom(self.s, self.pos)
        if got is not None:
            key, self.pos = got
            return Atom(key)
        zero = re.compile(r"0(?![\d/])").match(self.s, self.pos)
        if zero:
            self.pos = zero.end()
            return Sum(())
        if self.s[self.pos] != "(":
            raise self.error(f"unexpected character {self.s[self.pos]!r}")
        self.pos += 1
        left = self.sum()
        self.skip()
        op = self.g.match_op(self.s, self.pos)
        if op is not None:
            code, self.pos = op
            right = self.sum()
            self.skip()
            if not self.s.startswith(")", self.pos):
                raise self.error("expected ')' after a product; products must be fully parenthesized")
            self.pos += 1
            return BinOp(code, left, right)
        if not self.s.startswith(")", self.pos):
            raise self.error("expected an operator or ')'")
        self.pos += 1
        return left
