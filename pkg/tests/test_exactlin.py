from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyoperad.exactlin import (
    LinComb,
    RatMatrix,
    SpanSolver,
    as_rational,
    bilinear,
    kernel_basis,
    matrix_rank,
    rref,
    same_span,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def small_matrix(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_lincomb_additive_inverse():
    assert LinComb({"T": 1}) + LinComb({"T": -1}) == LinComb.zero()
    assert not (LinComb({"T": 1}) + LinComb({"T": -1}))


def test_lincomb_disjoint_and_rational():
    s = LinComb({"T1": 1}) + LinComb({"T2": 2})
    assert s.items() == [("T1", 1), ("T2", 2)]
    assert (LinComb({"T1": Fraction(1, 2)}) + LinComb({"T1": Fraction(1, 3)}))["T1"] == Fraction(5, 6)


def test_lincomb_never_stores_zero():
    x = LinComb([("a", 1), ("a", -1), ("b", 0)])
    assert len(x) == 0 and x == 0


def test_lincomb_format():
    x = LinComb({"k1": Fraction(3, 2), "k2": 1, "k3": -1})
    assert x.format() == "3/2*k1 + k2 - k3"
    assert LinComb.zero().format() == "0"
    assert LinComb({"a": -2}).format() == "-2*a"


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_bilinear_extension():
    x = LinComb({1: 2, 2: 1})
    y = LinComb({10: 3})
    z = bilinear(x, y, lambda a, b: LinComb.basis(a + b))
    assert z == LinComb({11: 6, 12: 3})


@given(rationals, rationals, rationals)
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(st.dictionaries(st.integers(0, 5), rationals), st.dictionaries(st.integers(0, 5), rationals))
def test_lincomb_commutative_and_scale(d1, d2):
    x, y = LinComb(d1), LinComb(d2)
    assert x + y == y + x
    assert (x + y).scale(3) == x.scale(3) + y.scale(3)
    assert x - x == 0


def test_rank_examples():
    assert matrix_rank(RatMatrix.identity(2)) == 2
    assert matrix_rank(RatMatrix.zeros(3, 4)) == 0
    assert matrix_rank(RatMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(RatMatrix.identity(3)) == []
    k = kernel_basis(RatMatrix.zeros(2, 3))
    assert k == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    (v,) = kernel_basis(RatMatrix.from_rows([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_same_span_examples():
    assert same_span([(1, 0)], [(2, 0)])
    assert not same_span([(1, 0)], [(0, 1)])
    assert same_span([(1, 1), (1, -1)], [(1, 0), (0, 1)])
    with pytest.raises(ValueError):
        same_span([(1, 0)], [(1, 0, 0)])


def test_matrix_shape_validated():
    with pytest.raises(ValueError):
        RatMatrix(2, 2, ((Fraction(1),),))
    assert RatMatrix.zeros(0, 3).transpose().rows == 3


@settings(max_examples=60)
@given(small_matrix())
def test_rank_nullity(rows):
    m = RatMatrix.from_rows(rows)
    ker = kernel_basis(m)
    assert matrix_rank(m) + len(ker) == m.cols
    for v in ker:
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) == 0


@settings(max_examples=60)
@given(small_matrix())
def test_rank_of_transpose(rows):
    m = RatMatrix.from_rows(rows)
    assert matrix_rank(m) == matrix_rank(m.transpose())


@settings(max_examples=60)
@given(small_matrix(), small_matrix(), st.lists(rationals.filter(bool), min_size=4, max_size=4))
def test_same_span_properties(a, b, scales):
    n = len(a[0])
    b = [r[:n] + [Fraction(0)] * (n - len(r)) for r in b]
    assert same_span(a, a)
    assert same_span(a, b) == same_span(b, a)
    scaled = [[x * scales[i % 4] for x in r] for i, r in enumerate(a)]
    assert same_span(a, scaled)


def test_rref_pivots_first_nonzero():
    r, piv = rref(RatMatrix.from_rows([[0, 2, 4], [0, 1, 3]]))
    assert piv == [1, 2]
    assert r.entries[0] == (0, 1, 0)


@settings(max_examples=40)
@given(st.lists(st.dictionaries(st.integers(0, 4), st.integers(-3, 3)), min_size=1, max_size=6))
def test_span_solver_expresses_members(vecs):
    solver = SpanSolver()
    cols = [LinComb(v) for v in vecs]
    for i, v in enumerate(cols):
        solver.add(i, v)
    target = cols[0].scale(2) + cols[-1]
    combo = solver.express(target)
    assert combo is not None
    assert combo.apply_linear(lambda i: cols[i]) == target
    dense = [[v[k] for k in range(5)] for v in cols]
    assert solver.rank == (matrix_rank(RatMatrix.from_rows(dense)) if dense else 0)
