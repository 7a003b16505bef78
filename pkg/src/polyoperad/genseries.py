"""Truncated exact power series: generating series of the families,
composition, compositional inversion and the two number triangles.

The generating series of a family with dimensions ``d_n`` is the signed
series ``sum (-1)^n d_n x^n``.  Closed forms are rational functions and are
expanded by exact long division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactlin import as_rational
from .kgonal import gonal_number
from .trees import count_trees


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class PowerSeries:
    """``c_0 + c_1 x + ... + c_N x^N + O(x^(N+1))``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise SeriesError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))

    @classmethod
    def from_list(cls, coeffs: Sequence, order: int | None = None) -> PowerSeries:
        coeffs = list(coeffs)
        if order is not None:
            coeffs = (coeffs + [0] * (order + 1))[: order + 1]
        return cls(tuple(coeffs))

    @classmethod
    def x(cls, order: int) -> PowerSeries:
        return cls.from_list([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n <= self.order else Fraction(0)

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise SeriesError(f"cannot extend a series known to order {self.order} to order {order}")
        return PowerSeries(self.coeffs[: order + 1])

    def _common(self, other: PowerSeries) -> int:
        return min(self.order, other.order)

    def __add__(self, other: PowerSeries) -> PowerSeries:
        n = self._common(other)
        return PowerSeries(tuple(self[i] + other[i] for i in range(n + 1)))

    def __neg__(self) -> PowerSeries:
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        return self + (-other)

    def scale(self, c) -> PowerSeries:
        c = as_rational(c)
        return PowerSeries(tuple(c * v for v in self.coeffs))

    def __mul__(self, other: PowerSeries) -> PowerSeries:
        n = self._common(other)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other[j]
        return PowerSeries(tuple(out))

    def signed_terms(self, start: int = 1) -> list[Fraction]:
        return list(self.coeffs[start:])

    def abs_terms(self, start: int = 1) -> list[Fraction]:
        return [abs(c) for c in self.coeffs[start:]]

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            mono = "" if n == 0 else ("x" if n == 1 else f"x^{n}")
            body = str(mag) if (mag != 1 or not mono) else ""
            body = f"{body}*{mono}" if body and mono else (body or mono)
            parts.append(("-" if c < 0 else "+", body))
        out = ""
        for i, (s, b) in enumerate(parts):
            out += (f"-{b}" if s == "-" else b) if i == 0 else f" {s} {b}"
        return f"{out or '0'} + O(x^{self.order + 1})"


def expand_rational(num: Sequence, den: Sequence, order: int) -> PowerSeries:
    """Taylor coefficients of num(x)/den(x) by long division (den(0) != 0)."""
    num = [as_rational(c) for c in num]
    den = [as_rational(c) for c in den]
    if not den or den[0] == 0:
        raise SeriesError("the denominator must have a nonzero constant term")
    out = []
    for n in range(order + 1):
        acc = num[n] if n < len(num) else Fraction(0)
        for j in range(1, min(n, len(den) - 1) + 1):
            acc -= den[j] * out[n - j]
        out.append(acc / den[0])
    return PowerSeries(tuple(out))


def _one_plus_x_power(m: int) -> list[int]:
    return [comb(m, j) for j in range(m + 1)]


def compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """``f(g(x))`` truncated at the common order; ``g`` needs no constant term."""
    if g[0] != 0:
        raise SeriesError("the inner series must have zero constant term")
    n = f._common(g)
    g = g.truncate(n)
    out = PowerSeries.from_list([f[0]], n)
    power = PowerSeries.from_list([1], n)
    for k in range(1, n + 1):
        power = power * g
        if f[k]:
            out = out + power.scale(f[k])
    return out


def comp_inverse(f: PowerSeries) -> PowerSeries:
    """The series ``g`` with ``f(g(x)) = x``, solved one degree at a time."""
    if f[0] != 0:
        raise SeriesError("compositional inverse needs zero constant term")
    if f[1] == 0:
        raise SeriesError("compositional inverse needs a nonzero linear coefficient")
    n = f.order
    g = [Fraction(0), 1 / f[1]] + [Fraction(0)] * (n - 1)
    for k in range(2, n + 1):
        # with g_k = 0, coefficient k of f(g) is the residue to cancel
        residue = compose(f.truncate(k), PowerSeries(tuple(g[: k + 1])))[k]
        g[k] = -residue / f[1]
    return PowerSeries(tuple(g[: n + 1]))


# ---------------------------------------------------------------------------
# Series of the families
# ---------------------------------------------------------------------------

FAMILY_ALIASES = {
    "mdend": "mdend",
    "dend": "mdend",
    "mtetra": "mtetra",
    "tetra": "mtetra",
    "kgonal": "kgonal",
    "gonal": "kgonal",
    "kp": "kp",
    "p": "kp",
}


def normalize_family(name: str) -> str:
    key = name.strip().lower().replace("-", "").replace("_", "")
    if key not in FAMILY_ALIASES:
        raise SeriesError(f"unknown family {name!r}; expected mDend, mTetra, kP or kGonal")
    return FAMILY_ALIASES[key]


def series_of(family: str, param: int, order: int) -> PowerSeries:
    family = normalize_family(family)
    if order < 1:
        raise SeriesError("order must be >= 1")
    if family == "mdend":
        if param < 2:
            raise SeriesError("mDend needs m >= 2")
        return PowerSeries(tuple([0] + [(-1) ** n * count_trees(param, n) for n in range(1, order + 1)]))
    if family == "mtetra":
        if param < 2:
            raise SeriesError("mTetra needs m >= 2")
        return expand_rational([0, -1], _one_plus_x_power(param), order)
    if family == "kgonal":
        if param < 3:
            raise SeriesError("kGonal needs k >= 3")
        return expand_rational([0, -1, param - 3], _one_plus_x_power(3), order)
    if param < 2:
        raise SeriesError("kP needs k >= 2")
    if order > 3:
        raise SeriesError("kP dimensions are only known up to arity 3 (order <= 3)")
    dims = [1, param, 2 * param * param - 3 * (param - 1)]
    return PowerSeries(tuple([0] + [(-1) ** n * dims[n - 1] for n in range(1, order + 1)]))


def dimension_sequence(family: str, param: int, order: int) -> list[int]:
    """Unsigned dimensions d_1..d_N read from the series."""
    return [int(c) for c in series_of(family, param, order).abs_terms()]


def gonal_series_matches(k: int, order: int) -> bool:
    s = series_of("kgonal", k, order)
    return all(s[n] == (-1) ** n * gonal_number(k, n) for n in range(1, order + 1))


# ---------------------------------------------------------------------------
# Number triangles
# ---------------------------------------------------------------------------


def pascal_triangle(rows: int) -> list[list[int]]:
    """Rows 0..rows of binomial coefficients."""
    if rows < 0:
        raise SeriesError("rows must be >= 0")
    return [[comb(n, j) for j in range(n + 1)] for n in range(rows + 1)]


def dual_triangle(rows: int) -> list[list[int]]:
    """Rows 1..rows of tree counts, symmetric about the binary-tree column.

    Row n reads count(n+1, 1), count(n, 2), ..., count(2, n), ..., count(n+1, 1);
    the column at distance d from the center lists the (d+2)-ary tree counts.
    """
    if rows < 1:
        raise SeriesError("rows must be >= 1")
    out = []
    for n in range(1, rows + 1):
        half = [count_trees(n + 1 - j, j + 1) for j in range(n)]  # count(n+1,1) .. count(2,n)
        out.append(half + half[-2::-1])
    return out


def pascal_tables(rows: int) -> tuple[list[list[int]], list[list[int]]]:
    return pascal_triangle(rows), dual_triangle(rows)


def dual_column(triangle: list[list[int]], distance: int) -> list[int]:
    """Entries at a fixed distance right of the center, top to bottom."""
    out = []
    for row in triangle:
        center = len(row) // 2
        if center + distance < len(row):
            out.append(row[center + distance])
    return out


def format_triangle(rows: list[list[int]], csv: bool = False) -> str:
    if csv:
        return "\n".join(",".join(map(str, r)) for r in rows)
    width = max(len(str(v)) for r in rows for v in r)
    lines = [" ".join(str(v).rjust(width) for v in r) for r in rows]
    longest = max(len(line) for line in lines)
    return "\n".join(line.center(longest).rstrip() for line in lines)
