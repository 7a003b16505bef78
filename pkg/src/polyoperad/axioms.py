"""Quadratic axiom schemas for every operad family, and a generic checker.

Operations are numbered the same way in every family:

* ``LEFT = 0``  is ``<`` (dendriform side) or ``-|`` (tetrahedral/gonal side),
* ``RIGHT = 1`` is ``>`` or ``|-``,
* ``i >= 2``    is the middle operation ``.i`` or ``_i``.

A relation is a list of terms ``(coef, shape, op1, op2)`` whose sum is zero.
``shape == "L"`` stands for ``(x op1 y) op2 z`` and ``shape == "R"`` for
``x op1 (y op2 z)``.  The monomial calculi, the axiom checkers and the
duality computation all read these lists, so they cannot drift apart.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Sequence

from .exactlin import LinComb

LEFT = 0
RIGHT = 1
STAR = -1

FAMILIES = ("mdend", "mtetra", "kp", "kgonal")


@dataclass(frozen=True)
class Axiom:
    name: str
    terms: tuple[tuple[int, str, int, int], ...]


def _ax(name: str, *terms) -> Axiom:
    return Axiom(name, tuple(terms))


def _splitting_axioms(k: int) -> list[Axiom]:
    """The 3(k-1) relations obtained from the symmetric unit action."""
    L, R = LEFT, RIGHT
    out = [
        _ax("(x<y)<z = x<(y*z)", (1, "L", L, L), (-1, "R", L, L), (-1, "R", L, R)),
        _ax("(x>y)<z = x>(y<z)", (1, "L", R, L), (-1, "R", R, L)),
        _ax("(x*y)>z = x>(y>z)", (1, "L", L, R), (1, "L", R, R), (-1, "R", R, R)),
    ]
    for i in range(2, k):
        out += [
            _ax(f"(x<y).{i}z = x.{i}(y>z)", (1, "L", L, i), (-1, "R", i, R)),
            _ax(f"(x>y).{i}z = x>(y.{i}z)", (1, "L", R, i), (-1, "R", R, i)),
            _ax(f"(x.{i}y)<z = x.{i}(y<z)", (1, "L", i, L), (-1, "R", i, L)),
        ]
    return out


def dend_axioms(m: int) -> list[Axiom]:
    """m(m+1)/2 axioms of m-dendriform algebras."""
    if m < 2:
        raise ValueError("m-dendriform needs m >= 2")
    out = _splitting_axioms(m)
    for i in range(2, m):
        for j in range(i + 1, m):
            out.append(_ax(f"(x.{i}y).{j}z = x.{i}(y.{j}z)", (1, "L", i, j), (-1, "R", i, j)))
    return out


def kp_axioms(k: int) -> list[Axiom]:
    """The 3(k-1) relations alone (no middle/middle associativity)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return _splitting_axioms(k)


def _dias_axioms() -> list[Axiom]:
    L, R = LEFT, RIGHT
    return [
        _ax("(x-|y)-|z = x-|(y-|z)", (1, "L", L, L), (-1, "R", L, L)),
        _ax("(x-|y)-|z = x-|(y|-z)", (1, "L", L, L), (-1, "R", L, R)),
        _ax("(x|-y)-|z = x|-(y-|z)", (1, "L", R, L), (-1, "R", R, L)),
        _ax("(x-|y)|-z = x|-(y|-z)", (1, "L", L, R), (-1, "R", R, R)),
        _ax("(x|-y)|-z = x|-(y|-z)", (1, "L", R, R), (-1, "R", R, R)),
    ]


def _perp_mixed_axioms(i: int) -> list[Axiom]:
    L, R = LEFT, RIGHT
    return [
        _ax(f"(x-|y)_{i}z = x_{i}(y|-z)", (1, "L", L, i), (-1, "R", i, R)),
        _ax(f"(x|-y)_{i}z = x|-(y_{i}z)", (1, "L", R, i), (-1, "R", R, i)),
        _ax(f"(x_{i}y)-|z = x_{i}(y-|z)", (1, "L", i, L), (-1, "R", i, L)),
    ]


def tetra_axioms(m: int) -> list[Axiom]:
    """m(3m-1)/2 axioms of m-tetrahedral algebras (m = 3: triangular)."""
    if m < 2:
        raise ValueError("m-tetrahedral needs m >= 2")
    L, R = LEFT, RIGHT
    out = _dias_axioms()
    for i in range(2, m):
        out += _perp_mixed_axioms(i)
        out += [
            _ax(f"(x_{i}y)_{i}z = 0", (1, "L", i, i)),
            _ax(f"x_{i}(y_{i}z) = 0", (1, "R", i, i)),
            _ax(f"(x_{i}y)|-z = 0", (1, "L", i, R)),
            _ax(f"x-|(y_{i}z) = 0", (1, "R", L, i)),
        ]
    for i in range(2, m):
        for j in range(i + 1, m):
            out += [
                _ax(f"(x_{i}y)_{j}z = x_{i}(y_{j}z)", (1, "L", i, j), (-1, "R", i, j)),
                _ax(f"(x_{j}y)_{i}z = 0", (1, "L", j, i)),
                _ax(f"x_{j}(y_{i}z) = 0", (1, "R", j, i)),
            ]
    return out


def gonal_axioms(k: int) -> list[Axiom]:
    """2k^2 - 3(k-1) axioms of k-gonal algebras."""
    if k < 3:
        raise ValueError("k-gonal needs k >= 3")
    L, R = LEFT, RIGHT
    out = _dias_axioms()
    for i in range(2, k):
        out += _perp_mixed_axioms(i)
        out += [
            _ax(f"(x_{i}y)|-z = 0", (1, "L", i, R)),
            _ax(f"x-|(y_{i}z) = 0", (1, "R", L, i)),
        ]
    for i in range(2, k):
        for j in range(2, k):
            out += [
                _ax(f"(x_{i}y)_{j}z = 0", (1, "L", i, j)),
                _ax(f"x_{i}(y_{j}z) = 0", (1, "R", i, j)),
            ]
    return out


def axioms_for(family: str, param: int) -> list[Axiom]:
    try:
        builder = {"mdend": dend_axioms, "mtetra": tetra_axioms, "kp": kp_axioms, "kgonal": gonal_axioms}[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}") from None
    return builder(param)


def expected_axiom_count(family: str, param: int) -> int:
    k = param
    return {
        "mdend": k * (k + 1) // 2,
        "mtetra": k * (3 * k - 1) // 2,
        "kp": 3 * (k - 1),
        "kgonal": 2 * k * k - 3 * (k - 1),
    }[family]


# ---------------------------------------------------------------------------
# Checking axioms in a concrete algebra
# ---------------------------------------------------------------------------

Mul = Callable[[int, Hashable, Hashable], LinComb]


@dataclass
class AxiomReport:
    family: str
    param: int
    max_degree: int
    axiom_count: int
    triples_checked: int = 0
    evaluations: int = 0
    failures: list[tuple[str, tuple, LinComb]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        line = (
            f"{self.family}({self.param}) N={self.max_degree}: {verdict}, "
            f"{self.axiom_count} axioms x {self.triples_checked} triples"
        )
        if self.failures:
            name, triple, residue = self.failures[0]
            line += f"; first failure {name} on {tuple(map(str, triple))}: residue {residue.format()}"
        return line


def _lin_mul(mul: Mul, op: int, x: LinComb, y: LinComb) -> LinComb:
    acc = LinComb.zero()
    for a, ca in x.raw_items():
        for b, cb in y.raw_items():
            acc = acc + mul(op, a, b).scale(ca * cb)
    return acc


def evaluate_relation(axiom: Axiom, mul: Mul, x, y, z) -> LinComb:
    """Sum of the axiom's terms evaluated on basis elements x, y, z."""
    bx, by, bz = LinComb.basis(x), LinComb.basis(y), LinComb.basis(z)
    total = LinComb.zero()
    for coef, shape, o1, o2 in axiom.terms:
        if shape == "L":
            val = _lin_mul(mul, o2, _lin_mul(mul, o1, bx, by), bz)
        else:
            val = _lin_mul(mul, o1, bx, _lin_mul(mul, o2, by, bz))
        total = total + val.scale(coef)
    return total


def check_axioms(
    family: str,
    param: int,
    axioms: Sequence[Axiom],
    basis_of_degree: Callable[[int], Sequence[Hashable]],
    mul: Mul,
    max_degree: int,
    stop_at_first: bool = True,
) -> AxiomReport:
    """Evaluate every axiom on every basis triple of total degree <= max_degree."""
    report = AxiomReport(family, param, max_degree, len(axioms))
    for dx, dy, dz in product(range(1, max_degree + 1), repeat=3):
        if dx + dy + dz > max_degree:
            continue
        for triple in product(basis_of_degree(dx), basis_of_degree(dy), basis_of_degree(dz)):
            report.triples_checked += 1
            for ax in axioms:
                report.evaluations += 1
                residue = evaluate_relation(ax, mul, *triple)
                if residue:
                    report.failures.append((ax.name, triple, residue))
                    if stop_at_first:
                        return report
    return report
