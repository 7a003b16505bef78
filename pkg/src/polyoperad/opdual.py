"""Relation spaces of the binary quadratic families and their orthogonal duals.

Quadratic monomials for k operations are ``(o1)o2`` (left comb, shape ``L``)
and ``o1(o2)`` (right comb, shape ``R``), 2k^2 in all, ordered shape-major
and then by the operation pair in the order ``<, >, .2, ..., .(k-1)``.  A
relation is a rational vector in this basis.  The pairing is

    <(a, b), (a', b')> = sum a a' - sum b b'

(plus on left combs, minus on right combs), and two families are dual when
one relation space is the orthogonal complement of the other, after matching
``<`` with ``-|``, ``>`` with ``|-`` and ``.i`` with ``_i`` (which the shared
operation codes already do).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .axioms import FAMILIES, LEFT, RIGHT, axioms_for, expected_axiom_count
from .exactlin import RatMatrix, kernel_basis, matrix_rank, rref, same_span

FAMILY_NAMES = {"mdend": "mDend", "mtetra": "mTetra", "kp": "kP", "kgonal": "kGonal"}


class DualityError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class QuadMonomial:
    shape: str  # "L" = (o1)o2, "R" = o1(o2)
    op1: int
    op2: int

    def format(self, op_str=None) -> str:
        op_str = op_str or _dend_op
        a, b = op_str(self.op1), op_str(self.op2)
        return f"({a}){b}" if self.shape == "L" else f"{a}({b})"

    def __str__(self) -> str:
        return self.format()


def _dend_op(op: int) -> str:
    return {LEFT: "<", RIGHT: ">"}.get(op, f".{op}")


def operation_codes(k: int) -> list[int]:
    return [LEFT, RIGHT] + list(range(2, k))


def quad_monomials(k: int) -> list[QuadMonomial]:
    ops = operation_codes(k)
    return [QuadMonomial(shape, a, b) for shape in ("L", "R") for a in ops for b in ops]


def normalize_family(name: str) -> str:
    key = name.strip().lower().replace("-", "").replace("_", "")
    aliases = {"dend": "mdend", "tetra": "mtetra", "triang": "mtetra", "gonal": "kgonal", "p": "kp"}
    key = aliases.get(key, key)
    if key not in FAMILIES:
        raise DualityError(f"unknown family {name!r}; expected one of {', '.join(FAMILY_NAMES.values())}")
    return key


def _min_param(family: str) -> int:
    return 2 if family in ("mdend", "kp") else 3


@dataclass(frozen=True)
class RelationSpace:
    family: str
    k: int
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return 2 * self.k * self.k

    @property
    def label(self) -> str:
        return f"{FAMILY_NAMES.get(self.family, self.family)}({self.k})"

    def monomials(self) -> list[QuadMonomial]:
        return quad_monomials(self.k)

    def format_vector(self, v) -> str:
        terms = []
        for mono, c in zip(self.monomials(), v):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = str(mono) if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        return out + "".join(f" {s} {b}" for s, b in terms[1:])


def build_relations(family: str, k: int) -> RelationSpace:
    """One vector per axiom, from the shared axiom tables."""
    family = normalize_family(family)
    if k < _min_param(family):
        raise DualityError(f"{FAMILY_NAMES[family]} needs parameter >= {_min_param(family)}, got {k}")
    index = {(q.shape, q.op1, q.op2): n for n, q in enumerate(quad_monomials(k))}
    vectors = []
    for axiom in axioms_for(family, k):
        v = [Fraction(0)] * len(index)
        for coef, shape, o1, o2 in axiom.terms:
            v[index[shape, o1, o2]] += coef
        vectors.append(tuple(v))
    space = RelationSpace(family, k, tuple(vectors))
    if vectors and matrix_rank(RatMatrix.from_rows(vectors, len(index))) != len(vectors):
        raise DualityError(f"the axioms of {space.label} are linearly dependent")
    return space


def pairing(u, v) -> Fraction:
    half = len(u) // 2
    return sum((a * b for a, b in zip(u[:half], v[:half])), Fraction(0)) - sum(
        (a * b for a, b in zip(u[half:], v[half:])), Fraction(0)
    )


def orthogonal_complement(space: RelationSpace, family: str = "dual") -> RelationSpace:
    n, half = space.ambient_dim, space.ambient_dim // 2
    signed = [[c if j < half else -c for j, c in enumerate(v)] for v in space.basis]
    perp = kernel_basis(RatMatrix.from_rows(signed, n)) if signed else [
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    ]
    return RelationSpace(family, space.k, tuple(perp))


def reduced_basis(space: RelationSpace) -> list[tuple[Fraction, ...]]:
    if not space.basis:
        return []
    return [tuple(r) for r in rref(RatMatrix.from_rows(space.basis, space.ambient_dim))[0].entries]


@dataclass
class DualityReport:
    a: RelationSpace
    b: RelationSpace
    perp: RelationSpace

    @property
    def holds(self) -> bool:
        return self.perp.dim == self.b.dim and same_span(self.perp.basis, self.b.basis)

    def summary(self) -> str:
        verdict = "dual" if self.holds else "NOT dual"
        return (
            f"{self.a.label}: dim R = {self.a.dim}, dim R^perp = {self.perp.dim}; "
            f"{self.b.label}: dim R = {self.b.dim}; ambient {self.a.ambient_dim}; {verdict}"
        )


def duality_report(family_a: str, family_b: str, k: int) -> DualityReport:
    a = build_relations(family_a, k)
    b = build_relations(family_b, k)
    return DualityReport(a, b, orthogonal_complement(a))


def verify_duality(family_a: str, family_b: str, k: int) -> bool:
    return duality_report(family_a, family_b, k).holds


def expected_dim(family: str, k: int) -> int:
    return expected_axiom_count(normalize_family(family), k)
