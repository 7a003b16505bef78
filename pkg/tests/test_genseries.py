from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from polyoperad.genseries import (
    PowerSeries,
    SeriesError,
    comp_inverse,
    compose,
    dimension_sequence,
    dual_column,
    dual_triangle,
    expand_rational,
    format_triangle,
    gonal_series_matches,
    pascal_tables,
    series_of,
)
from polyoperad.kgonal import gonal_number
from polyoperad.mtetra import tetra_dim
from polyoperad.trees import count_trees


def lagrange_inverse(f: PowerSeries) -> PowerSeries:
    """[x^n] g = (1/n) [x^(n-1)] (x / f(x))^n."""
    n_max = f.order
    h = PowerSeries(tuple(f[i + 1] for i in range(n_max)))  # f(x)/x, order n_max - 1
    # 1/h by long division
    inv = expand_rational([1], list(h.coeffs), n_max - 1)
    out = [Fraction(0)]
    power = PowerSeries.from_list([1], n_max - 1)
    for n in range(1, n_max + 1):
        power = power * inv
        out.append(power[n - 1] / n)
    return PowerSeries(tuple(out))


def test_series_examples():
    assert series_of("mTetra", 3, 5).signed_terms() == [-1, 3, -6, 10, -15]
    assert series_of("kGonal", 4, 4).abs_terms() == [1, 4, 9, 16]
    assert series_of("mDend", 2, 3).signed_terms() == [-1, 2, -5]
    assert series_of("kP", 4, 3).abs_terms() == [1, 4, 23]
    assert str(series_of("mTetra", 3, 3)) == "-x + 3*x^2 - 6*x^3 + O(x^4)"


def test_kp_limited():
    with pytest.raises(SeriesError):
        series_of("kP", 3, 4)


def test_compose_basics():
    f = series_of("mTetra", 4, 6)
    assert compose(f, PowerSeries.x(6)) == f
    minus_x = PowerSeries.from_list([0, -1], 6)
    assert compose(minus_x, minus_x) == PowerSeries.x(6)
    with pytest.raises(SeriesError):
        compose(f, PowerSeries.from_list([1, 1], 6))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_dend_and_tetra_are_inverse(m):
    d, t = series_of("mDend", m, 8), series_of("mTetra", m, 8)
    assert compose(d, t) == PowerSeries.x(8)
    assert compose(t, d) == PowerSeries.x(8)
    assert comp_inverse(t) == d


def test_triang_inverse_counts():
    g = comp_inverse(series_of("mTetra", 3, 4))
    assert g.signed_terms() == [(-1) ** n * count_trees(3, n) for n in range(1, 5)]
    assert g.abs_terms() == [1, 3, 12, 55]


def test_gonal_five_inverse():
    g = comp_inverse(series_of("kGonal", 5, 7))
    assert g.abs_terms() == [1, 5, 38, 347, 3507, 37788, 425490]


def test_tetra_five_inverse_differs():
    g = comp_inverse(series_of("mTetra", 5, 4))
    assert g.abs_terms() == [1, 5, 35, 285]


@pytest.mark.parametrize("k", range(3, 8))
def test_gonal_inverse_starts_with_kp_dims(k):
    g = comp_inverse(series_of("kGonal", k, 3))
    assert g.abs_terms() == [1, k, 2 * k * k - 3 * (k - 1)]
    assert g == series_of("kP", k, 3)


def test_double_inverse():
    f = series_of("mTetra", 3, 8)
    assert comp_inverse(comp_inverse(f)) == f


@pytest.mark.parametrize("m", range(2, 7))
def test_tetra_coefficients(m):
    s = series_of("mTetra", m, 10)
    for n in range(1, 11):
        assert s[n] == (-1) ** n * comb(n + m - 2, m - 1)
        if m >= 3:
            assert s[n] == (-1) ** n * tetra_dim(m, n)


@pytest.mark.parametrize("k", range(3, 8))
def test_gonal_coefficients(k):
    assert gonal_series_matches(k, 10)
    assert dimension_sequence("kGonal", k, 5) == [gonal_number(k, n) for n in range(1, 6)]


def test_gonal_three_is_tetra_three():
    assert series_of("kGonal", 3, 10) == series_of("mTetra", 3, 10)


def test_inverse_errors():
    with pytest.raises(SeriesError):
        comp_inverse(PowerSeries.from_list([0, 0, 1], 4))
    with pytest.raises(SeriesError):
        comp_inverse(PowerSeries.from_list([1, 1], 4))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=5, max_size=5), st.integers(1, 4).map(lambda v: v * (1 if v % 2 else -1)))
def test_inverse_matches_lagrange(tail, c1):
    f = PowerSeries.from_list([0, c1] + tail)
    g = comp_inverse(f)
    assert g == lagrange_inverse(f)
    assert compose(f, g) == PowerSeries.x(f.order)
    assert compose(g, f) == PowerSeries.x(f.order)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6), st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_composition_is_associative(a, b):
    f = PowerSeries.from_list(a)
    g = PowerSeries.from_list([0] + b)
    h = PowerSeries.from_list([0, 1, 2, -1, 3, 1])
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_pascal_tables():
    tri, dual = pascal_tables(6)
    assert tri[4] == [1, 4, 6, 4, 1]
    for m in range(3, 6):
        for n in range(1, 6 - m + 3):
            assert tri[n + m - 2][m - 1] == tetra_dim(m, n)
    assert dual_column(dual, 0) == [1, 2, 5, 14, 42, 132]
    assert dual_column(dual, 1) == [1, 3, 12, 55, 273]
    assert dual[4] == [1, 5, 22, 55, 42, 55, 22, 5, 1]
    assert all(row == row[::-1] for row in dual)


def test_triangle_text():
    assert format_triangle(dual_triangle(2), csv=True) == "1\n1,2,1"
    assert format_triangle(dual_triangle(2)).splitlines() == ["  1", "1 2 1"]
