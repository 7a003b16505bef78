"""Exact rational scalars, formal linear combinations and dense linear algebra.

Everything downstream is built on :class:`LinComb` (an immutable finite
combination of orderable basis keys with :class:`fractions.Fraction`
coefficients) and on the Gaussian elimination routines below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

Rational = Fraction


def as_rational(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(value)


class LinComb:
    """Finite formal linear combination ``sum c_k * k`` with exact coefficients.

    Zero coefficients are never stored.  Iteration follows the natural order
    of the keys, so keys of one combination must be mutually comparable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Hashable, Any] | Iterable[tuple[Hashable, Any]] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coef in items:
            c = acc.get(key, 0) + as_rational(coef)
            if c:
                acc[key] = c
            else:
                acc.pop(key, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> LinComb:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, key: Hashable, coef: Any = 1) -> LinComb:
        c = as_rational(coef)
        return cls._raw({key: c} if c else {})

    @classmethod
    def zero(cls) -> LinComb:
        return cls._raw({})

    # -- container protocol -------------------------------------------------
    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms))

    def __contains__(self, key: Hashable) -> bool:
        return key in self._terms

    def __getitem__(self, key: Hashable) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def coefficient(self, key: Hashable) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def items(self) -> list[tuple[Any, Fraction]]:
        """Terms in canonical key order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def raw_items(self):
        """Terms in insertion order (cheaper; use when order is irrelevant)."""
        return self._terms.items()

    def keys(self) -> list:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: LinComb) -> LinComb:
        if not isinstance(other, LinComb):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for k, c in other._terms.items():
            s = acc.get(k, 0) + c
            if s:
                acc[k] = s
            else:
                del acc[k]
        return LinComb._raw(acc)

    def __neg__(self) -> LinComb:
        return LinComb._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: LinComb) -> LinComb:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def scale(self, coef: Any) -> LinComb:
        c = as_rational(coef)
        if not c:
            return LinComb.zero()
        if c == 1:
            return self
        return LinComb._raw({k: v * c for k, v in self._terms.items()})

    def __mul__(self, coef: Any) -> LinComb:
        if isinstance(coef, LinComb):
            return NotImplemented
        return self.scale(coef)

    __rmul__ = __mul__

    def map_keys(self, f: Callable[[Any], Hashable]) -> LinComb:
        """Apply ``f`` to every key, merging coefficients of colliding images."""
        return LinComb((f(k), c) for k, c in self._terms.items())

    def apply_linear(self, f: Callable[[Any], LinComb]) -> LinComb:
        """Extend a map ``key -> LinComb`` linearly."""
        acc: dict = {}
        for k, c in self._terms.items():
            for k2, c2 in f(k)._terms.items():
                s = acc.get(k2, 0) + c * c2
                if s:
                    acc[k2] = s
                else:
                    acc.pop(k2, None)
        return LinComb._raw(acc)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LinComb({self.format()})"

    def format(self, key_str: Callable[[Any], str] = str) -> str:
        """Human/CLI form: ``3/2*k1 + k2 - k3``; the zero combination is ``0``."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for i, (k, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = key_str(k) if mag == 1 else f"{mag}*{key_str(k)}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)


def bilinear(x: LinComb, y: LinComb, f: Callable[[Any, Any], LinComb]) -> LinComb:
    """Extend ``f(key, key) -> LinComb`` bilinearly to ``x`` and ``y``."""
    acc: dict = {}
    for a, ca in x.raw_items():
        for b, cb in y.raw_items():
            cc = ca * cb
            for k, c in f(a, b).raw_items():
                s = acc.get(k, 0) + cc * c
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)
    return LinComb._raw(acc)


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count does not match rows x cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], cols: int | None = None) -> RatMatrix:
        data = tuple(tuple(as_rational(v) for v in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        z = Fraction(0)
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def transpose(self) -> RatMatrix:
        if not self.rows:
            return RatMatrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return RatMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; pivot = first nonzero entry in column order."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        pivot_row = [v * inv for v in m[r]]
        m[r] = pivot_row
        nz = [j for j in range(c, ncols) if pivot_row[j]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                for j in nz:
                    row[j] -= f * pivot_row[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    rows, pivots = _rref([list(r) for r in m.entries], m.cols)
    return RatMatrix(len(rows), m.cols, tuple(tuple(r) for r in rows)), pivots


def matrix_rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref([list(r) for r in m.entries], m.cols)[1])


def kernel_basis(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space, one vector per free column.

    The vector for free column ``f`` has a 1 in position ``f``, zeros in the
    other free positions and the negated RREF entries in the pivot positions.
    """
    n = m.cols
    rows, pivots = _rref([list(r) for r in m.entries], n) if m.rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def same_span(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> bool:
    """True iff the two lists of vectors span the same rational subspace."""
    lengths = {len(v) for v in a} | {len(v) for v in b}
    if len(lengths) > 1:
        raise ValueError("vectors of different lengths")
    if not lengths:
        return True
    n = lengths.pop()
    ra = matrix_rank(RatMatrix.from_rows(a, n)) if a else 0
    rb = matrix_rank(RatMatrix.from_rows(b, n)) if b else 0
    if ra != rb:
        return False
    rab = matrix_rank(RatMatrix.from_rows(list(a) + list(b), n)) if (a or b) else 0
    return rab == ra


class SpanSolver:
    """Incremental sparse elimination over LinComb vectors.

    Columns are offered in a fixed order; a column is kept only if it is
    independent of the ones kept before it (greedy, hence deterministic).
    :meth:`express` writes a vector as a combination of the kept columns,
    which is the unique solution supported on those pivot columns.
    """

    def __init__(self):
        # pivot key -> (reduced vector, combination of column labels)
        self._rows: dict = {}
        self._order: list = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: LinComb, combo: LinComb) -> tuple[LinComb, LinComb]:
        while vec:
            hit = None
            for k in vec.keys():
                if k in self._rows:
                    hit = k
                    break
            if hit is None:
                return vec, combo
            prow, pcombo = self._rows[hit]
            f = vec[hit] / prow[hit]
            vec = vec - prow.scale(f)
            combo = combo - pcombo.scale(f)
        return vec, combo

    def add(self, label: Hashable, vec: LinComb) -> bool:
        red, combo = self._reduce(vec, LinComb.basis(label))
        if not red:
            return False
        pivot = red.keys()[0]
        self._rows[pivot] = (red, combo)
        self._order.append(pivot)
        return True

    def express(self, vec: LinComb) -> LinComb | None:
        """Combination of column labels equal to ``vec``, or None if outside the span."""
        red, combo = self._reduce(vec, LinComb.zero())
        if red:
            return None
        return -combo
