"""The two chain complexes: index pairs for 3-dendriform algebras, colored trees
for m-tetrahedral algebras; faces, boundaries and exact homology ranks.

A chain is a LinComb over ``(cell, args)`` where ``cell`` is an index pair
``(k, j)`` or an :class:`MTree`, and ``args`` is a tuple of ``n`` basis
elements of a target algebra.  Face ``d_i`` (1 <= i <= n-1) maps the cell
and fuses ``args[i-1]`` and ``args[i]`` with the operation attached to
``(i, cell)``; the boundary is ``sum (-1)^(i+1) d_i``.

Index-pair complex: cells of ``C_n`` are ``{(k, j): 0 <= k <= j <= n-1}``;
``d_i`` lowers every entry ``r >= i`` by one, and fuses with::

    .2  if i-1 and i both lie in {k, j}
    >   if only i does
    <   if only i-1 does
    *   if neither does

Tree complex (arity m): cells of ``C_n`` are the degree-n trees.  Leaves
are numbered from 0; operation ``j`` sits on leaf ``j*(m-1)`` and is ``-|``
for a first child, ``|-`` for a last child and ``_(m-c)`` for child ``c``
in between.  ``del_j`` looks at the father ``F`` of that leaf: if all
children of ``F`` are leaves, ``F`` becomes a leaf; if the leaf is an end
child and every middle child of ``F`` is an uncolored leaf, ``F`` is replaced
by its other end child; otherwise the face is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .axioms import LEFT, RIGHT, STAR
from .exactlin import LinComb, RatMatrix, matrix_rank
from .mdend import tree_mul
from .mtetra import (
    TetraWord,
    enumerate_monomials,
    generator_word,
    tetra_mul,
    word_mul,
)
from .trees import MTree, corolla, enumerate_trees, leaf


class ChainError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Target algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainAlgebra:
    """A target algebra: products on basis keys plus an optional weight grading."""

    name: str
    mul: Callable[[int, Hashable, Hashable], LinComb]
    basis_of_weight: Callable[[int], Sequence[Hashable]] | None = None
    fmt: Callable[[Hashable], str] = str


def _dend_op_with_star(mul):
    def f(op, a, b):
        if op == STAR:
            return mul(LEFT, a, b) + mul(RIGHT, a, b)
        return mul(op, a, b)

    return f


def free_dend_algebra(m: int = 3) -> ChainAlgebra:
    """Free m-dendriform algebra on one generator (trees, weight = degree)."""
    return ChainAlgebra(f"free {m}-dend", tree_mul, lambda w: enumerate_trees(m, w) if w >= 1 else [])


def _decorated_dend_mul(op, a, b):
    (t, u), (r, v) = a, b
    return tree_mul(op, t, r).map_keys(lambda s: (s, u + v))


def free_dend_words(m: int = 3) -> ChainAlgebra:
    """Free m-dendriform algebra on many generators: tree (x) word of letters."""
    return ChainAlgebra(f"free {m}-dend on letters", _dend_op_with_star(_decorated_dend_mul), fmt=_decorated_str)


def _decorated_str(a) -> str:
    t, w = a
    return f"{t}{''.join(map(str, w))}"


def dend_letter(letter: Hashable, m: int = 3):
    return (corolla(m), (letter,))


def free_tetra_algebra(m: int = 3) -> ChainAlgebra:
    """Free m-tetrahedral algebra on one generator (weight = degree)."""
    return ChainAlgebra(f"free {m}-tetra", tetra_mul, lambda w: enumerate_monomials(m, w) if w >= 1 else [])


def free_tetra_words(m: int = 3) -> ChainAlgebra:
    return ChainAlgebra(f"free {m}-tetra on letters", word_mul)


def tetra_letter(letter: Hashable, m: int = 3) -> TetraWord:
    return generator_word(letter, m)


def zero_algebra(pool: Sequence[Hashable]) -> ChainAlgebra:
    """All products vanish; every pool element has weight 1."""
    pool = tuple(pool)
    return ChainAlgebra("zero", lambda op, a, b: LinComb.zero(), lambda w: pool if w == 1 else ())


def formal_magma(op_str: Callable[[int], str]) -> ChainAlgebra:
    """Products recorded as text: ``x op y`` becomes the key ``(x op y)``."""

    def mul(op, a, b):
        return LinComb.basis(f"({a} {op_str(op)} {b})")

    return ChainAlgebra("formal", mul)


def strip_outer(s: str) -> str:
    return s[1:-1] if s.startswith("(") and s.endswith(")") else s


# ---------------------------------------------------------------------------
# Index-pair complex
# ---------------------------------------------------------------------------


def index_cells(n: int) -> list[tuple[int, int]]:
    return [(k, j) for k in range(n) for j in range(k, n)]


def dend_symbol(i: int, kj: tuple[int, int], n: int | None = None) -> int:
    k, j = kj
    if i < 1 or (n is not None and (i > n - 1 or not 0 <= k <= j <= n - 1)):
        raise ChainError(f"face {i} or index {kj} out of range for n = {n}")
    s = {k, j}
    before, at = (i - 1) in s, i in s
    if before and at:
        return 2
    if at:
        return RIGHT
    if before:
        return LEFT
    return STAR


def _lower(i: int, r: int) -> int:
    return r - 1 if r >= i else r


def index_face_cell(i: int, kj: tuple[int, int]) -> tuple[tuple[int, int], int]:
    k, j = kj
    return (_lower(i, k), _lower(i, j)), dend_symbol(i, kj)


# ---------------------------------------------------------------------------
# Colored-tree complex
# ---------------------------------------------------------------------------


def leaf_paths(t: MTree) -> list[tuple[int, ...]]:
    """Paths (child indices from the root) of the leaves, left to right."""
    out: list[tuple[int, ...]] = []

    def go(s, path):
        if s.is_leaf:
            out.append(path)
            return
        for c, child in enumerate(s.children):
            go(child, path + (c,))

    go(t, ())
    return out


def subtree(t: MTree, path: tuple[int, ...]) -> MTree:
    for c in path:
        t = t.children[c]
    return t


def replace_at(t: MTree, path: tuple[int, ...], new: MTree) -> MTree:
    if not path:
        return new
    c = path[0]
    kids = list(t.children)
    kids[c] = replace_at(kids[c], path[1:], new)
    return MTree(t.arity, tuple(kids))


def direction_symbol(c: int, m: int) -> int:
    """Operation attached to a leaf that is child ``c`` of its father."""
    if c == 0:
        return LEFT
    if c == m - 1:
        return RIGHT
    return m - c


@dataclass(frozen=True)
class ColoredTree:
    tree: MTree
    positions: tuple[int, ...]
    symbols: tuple[int, ...]

    def __str__(self) -> str:
        from .mtetra import op_symbol

        cols = ", ".join(f"({p};{op_symbol(s)})" for p, s in zip(self.positions, self.symbols))
        return f"[{self.tree}{', ' if cols else ''}{cols}]"


@lru_cache(maxsize=None)
def color_tree(t: MTree) -> ColoredTree:
    if t.is_leaf:
        raise ChainError("cannot color a degree-0 tree")
    m, n = t.arity, t.degree
    paths = leaf_paths(t)
    positions = tuple(j * (m - 1) for j in range(1, n))
    symbols = tuple(direction_symbol(paths[p][-1], m) for p in positions)
    return ColoredTree(t, positions, symbols)


@lru_cache(maxsize=None)
def del_face(j: int, t: MTree) -> MTree | None:
    """The tree part of face ``j``; ``None`` when the face is zero."""
    m, n = t.arity, t.degree
    if not 1 <= j <= n - 1:
        raise ChainError(f"face {j} out of range for degree {n}")
    paths = leaf_paths(t)
    colored = {paths[q * (m - 1)] for q in range(1, n)}
    path = paths[j * (m - 1)]
    father_path, c = path[:-1], path[-1]
    father = subtree(t, father_path)
    if all(ch.is_leaf for ch in father.children):
        return replace_at(t, father_path, leaf(m))
    if c not in (0, m - 1):
        return None
    for s in range(1, m - 1):
        if not father.children[s].is_leaf or father_path + (s,) in colored:
            return None
    return replace_at(t, father_path, father.children[m - 1 - c])


def tree_face_cell(j: int, t: MTree) -> tuple[MTree | None, int]:
    return del_face(j, t), color_tree(t).symbols[j - 1]


# ---------------------------------------------------------------------------
# Complexes, faces and boundaries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Complex:
    name: str
    cells: Callable[[int], Sequence[Hashable]]
    face_cell: Callable[[int, Hashable], tuple[Hashable | None, int]]


DEND3 = Complex("dend3", index_cells, index_face_cell)


def tetra_complex(m: int = 3) -> Complex:
    if m < 3:
        raise ChainError("the tree complex needs arity >= 3")
    return Complex(f"tetra{m}", lambda n: enumerate_trees(m, n) if n >= 1 else [], tree_face_cell)


def get_complex(name: str) -> Complex:
    if name == "dend3":
        return DEND3
    if name.startswith("tetra"):
        try:
            return tetra_complex(int(name[5:] or 3))
        except ValueError:
            pass
    raise ChainError(f"unknown complex {name!r}; expected dend3 or tetraM (e.g. tetra3)")


def face(i: int, chain: LinComb, cx: Complex, alg: ChainAlgebra) -> LinComb:
    acc: dict = {}
    for (cell, args), coef in chain.raw_items():
        if not 1 <= i <= len(args) - 1:
            raise ChainError(f"face {i} out of range for a chain with {len(args)} arguments")
        new_cell, op = cx.face_cell(i, cell)
        if new_cell is None:
            continue
        for fused, c in alg.mul(op, args[i - 1], args[i]).raw_items():
            key = (new_cell, args[: i - 1] + (fused,) + args[i + 1 :])
            s = acc.get(key, 0) + coef * c
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
    return LinComb._raw(acc)


def boundary(chain: LinComb, cx: Complex, alg: ChainAlgebra) -> LinComb:
    acc = LinComb.zero()
    lengths = {len(args) for _, args in chain.keys()}
    if not lengths:
        return acc
    if len(lengths) > 1:
        raise ChainError("boundary needs a homogeneous chain")
    n = lengths.pop()
    for i in range(1, n):
        f = face(i, chain, cx, alg)
        acc = acc + (f if i % 2 else -f)
    return acc


def chain(cell, args: Sequence[Hashable], coef=1) -> LinComb:
    return LinComb.basis((cell, tuple(args)), coef)


# ---------------------------------------------------------------------------
# Homology
# ---------------------------------------------------------------------------


def _weight_tuples(alg: ChainAlgebra, n: int, w: int):
    """Argument tuples of length n with total weight w (each weight >= 1)."""
    if n == 0:
        if w == 0:
            yield ()
        return
    for first in range(1, w - n + 2):
        for a in alg.basis_of_weight(first):
            for rest in _weight_tuples(alg, n - 1, w - first):
                yield (a,) + rest


def chain_basis(cx: Complex, alg: ChainAlgebra, n: int, w: int) -> list:
    if n < 1:
        return []
    args = list(_weight_tuples(alg, n, w))
    return [(cell, a) for cell in cx.cells(n) for a in args]


def boundary_matrix(cx: Complex, alg: ChainAlgebra, n: int, w: int) -> RatMatrix:
    """Matrix of d: C_n -> C_(n-1) in weight w (rows: C_(n-1), columns: C_n)."""
    src = chain_basis(cx, alg, n, w)
    dst = chain_basis(cx, alg, n - 1, w) if n >= 2 else []
    index = {b: r for r, b in enumerate(dst)}
    rows = [[Fraction(0)] * len(src) for _ in dst]
    if n >= 2:
        for col, b in enumerate(src):
            for key, c in boundary(LinComb.basis(b), cx, alg).raw_items():
                rows[index[key]][col] += c
    return RatMatrix(len(dst), len(src), tuple(tuple(r) for r in rows))


@dataclass
class HomologyRow:
    n: int
    dim_chains: int
    rank_out: int
    rank_in: int
    dim_homology: int
    rank_out_transposed: int
    rank_in_transposed: int

    @property
    def consistent(self) -> bool:
        return self.rank_out == self.rank_out_transposed and self.rank_in == self.rank_in_transposed


@dataclass
class HomologyReport:
    complex_name: str
    algebra_name: str
    max_weight: int
    rows: list[HomologyRow] = field(default_factory=list)

    def dim(self, n: int) -> int:
        return next(r.dim_homology for r in self.rows if r.n == n)


def homology_ranks(cx: Complex, alg: ChainAlgebra, n_max: int, max_weight: int) -> HomologyReport:
    """dim H_n for n = 1..n_max, summed over argument weights 1..max_weight.

    The boundary preserves the total weight of the arguments, so the
    complex splits into finite pieces; each rank is computed on the boundary
    matrix and, independently, on its transpose.
    """
    if alg.basis_of_weight is None:
        raise ChainError(f"algebra {alg.name!r} has no finite weight grading")
    if n_max > max_weight:
        raise ChainError(
            f"H_{n_max} needs arguments of total weight >= {n_max}; raise the weight bound (now {max_weight})"
        )
    report = HomologyReport(cx.name, alg.name, max_weight)
    mats = {}
    for n in range(1, n_max + 2):
        for w in range(1, max_weight + 1):
            mats[n, w] = boundary_matrix(cx, alg, n, w)
    for n in range(1, n_max + 1):
        dim = ro = ri = rot = rit = 0
        for w in range(1, max_weight + 1):
            d_out, d_in = mats[n, w], mats[n + 1, w]
            dim += d_out.cols
            ro += matrix_rank(d_out)
            ri += matrix_rank(d_in)
            rot += matrix_rank(d_out.transpose())
            rit += matrix_rank(d_in.transpose())
        report.rows.append(HomologyRow(n, dim, ro, ri, dim - ro - ri, rot, rit))
    return report


def check_d_squared(cx: Complex, alg: ChainAlgebra, n: int, arg_tuples) -> tuple[int, list]:
    """Apply d.d to every (cell, args) basis chain; return (count, failures)."""
    failures = []
    count = 0
    for cell in cx.cells(n):
        for args in arg_tuples:
            c = chain(cell, args)
            dd = boundary(boundary(c, cx, alg), cx, alg)
            count += 1
            if dd:
                failures.append((cell, args, dd))
    return count, failures


def check_simplicial(cx: Complex, alg: ChainAlgebra, n: int, arg_tuples) -> tuple[int, list]:
    """d_i d_j = d_(j-1) d_i for all 1 <= i < j <= n-1 on every basis chain."""
    failures = []
    count = 0
    for cell in cx.cells(n):
        for args in arg_tuples:
            c = chain(cell, args)
            for j in range(2, n):
                dj = face(j, c, cx, alg)
                for i in range(1, j):
                    count += 1
                    lhs = face(i, dj, cx, alg)
                    rhs = face(j - 1, face(i, c, cx, alg), cx, alg)
                    if lhs != rhs:
                        failures.append((cell, args, i, j))
    return count, failures


def letters(n: int) -> tuple[str, ...]:
    return tuple("xyzuvwst"[:n]) if n <= 8 else tuple(f"a{i}" for i in range(n))
