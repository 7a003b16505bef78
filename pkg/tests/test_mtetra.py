from __future__ import annotations

from itertools import product
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyoperad.axioms import LEFT, RIGHT, check_axioms, expected_axiom_count, tetra_axioms
from polyoperad.exactlin import LinComb
from polyoperad.expr import ExprSyntaxError
from polyoperad.mtetra import (
    HomogMonomial,
    TetraError,
    TetraMonomial,
    TetraWord,
    check_tetra_axioms,
    chi,
    circledast,
    enumerate_monomials,
    eta,
    evaluate_tetra_expr,
    format_tetra_expr,
    from_polynomial,
    generator_word,
    index_set,
    parse_monomial,
    parse_polynomial,
    parse_tetra_expr,
    tetra_dim,
    tetra_lin_mul,
    tetra_mul,
    to_polynomial,
    word_lin_mul,
    word_mul,
)

X = chi(3)


def M(*e):
    return TetraMonomial(len(e), tuple(e))


def B(*e):
    return LinComb.basis(M(*e))


def words_of_degree(m, n, letter="v"):
    """Every word-level monomial of degree n on one letter."""
    out = []
    for mono in enumerate_monomials(m, n):
        e = mono.exps
        out.append(TetraWord((letter,) * e[0], letter, tuple((letter,) * k for k in e[1:-1]), (letter,) * e[-1]))
    return out


def test_product_examples():
    assert tetra_mul(LEFT, X, X) == B(0, 0, 1)
    assert tetra_mul(2, X, X) == B(0, 1, 0)
    assert tetra_mul(2, M(0, 1, 0), X) == 0
    assert tetra_lin_mul(LEFT, tetra_mul(LEFT, X, X), B(0, 0, 0)) == B(0, 0, 2)
    assert tetra_lin_mul(LEFT, B(0, 0, 0), tetra_mul(RIGHT, X, X)) == B(0, 0, 2)
    assert tetra_mul(RIGHT, X, X) == B(1, 0, 0)


def test_word_oracle_examples():
    v = generator_word("v", 3)
    assert word_mul(LEFT, v, v) == LinComb.basis(TetraWord((), "v", ((),), ("v",)))
    assert word_mul(2, v, v) == LinComb.basis(TetraWord((), "v", (("v",),), ()))
    u = generator_word("u", 3)
    # the right factor's centre lands last in the glued word
    assert word_mul(LEFT, v, u) == LinComb.basis(TetraWord((), "v", ((),), ("u",)))
    assert word_mul(RIGHT, v, u) == LinComb.basis(TetraWord(("v",), "u", ((),), ()))


@pytest.mark.parametrize("m", [3, 4, 5])
def test_exponent_rules_match_word_oracle(m):
    words = {n: words_of_degree(m, n) for n in range(1, 5)}
    for p in range(1, 5):
        for q in range(1, 6 - p):
            for w1, w2 in product(words[p], words[q]):
                for op in [LEFT, RIGHT] + list(range(2, m)):
                    expected = word_mul(op, w1, w2).map_keys(TetraWord.exponents)
                    assert tetra_mul(op, w1.exponents(), w2.exponents()) == expected


def test_errors():
    with pytest.raises(TetraError):
        tetra_mul(LEFT, chi(3), chi(4))
    with pytest.raises(TetraError):
        tetra_mul(3, X, X)
    with pytest.raises(TetraError):
        TetraMonomial(3, (0, 0))
    with pytest.raises(TetraError):
        parse_monomial("[1|2]")


@pytest.mark.parametrize("m,N", [(3, 5), (4, 4), (5, 4)])
def test_axioms_hold(m, N):
    report = check_tetra_axioms(m, N)
    assert report.passed, report.summary()


def test_axiom_counts():
    assert len(tetra_axioms(3)) == 12
    assert len(tetra_axioms(4)) == 22
    assert len(tetra_axioms(5)) == 35 == expected_axiom_count("mtetra", 5)


def test_word_algebra_satisfies_axioms_on_two_letters():
    pool = [generator_word(a, 3) for a in "uv"]
    pool += [k for a, b in product(pool, pool) for op in (LEFT, RIGHT, 2) for k in word_mul(op, a, b).keys()]
    report = check_axioms("mtetra", 3, tetra_axioms(3), lambda d: [w for w in pool if w.degree == d], word_mul, 4)
    assert report.passed, report.summary()


def test_dimension_examples():
    assert [tetra_dim(3, n) for n in range(1, 6)] == [1, 3, 6, 10, 15]
    assert [tetra_dim(4, n) for n in range(1, 5)] == [1, 4, 10, 20]
    assert tetra_dim(3, 1) == 1


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_dimension_law(m):
    for n in range(1, 11):
        assert len(enumerate_monomials(m, n)) == tetra_dim(m, n) == comb(n + m - 2, m - 1)


def test_polynomial_examples():
    assert to_polynomial(X) == HomogMonomial((0, 0, 0))
    assert str(to_polynomial(X)) == "1"
    assert str(to_polynomial(M(0, 1, 0))) == "X2"
    assert len({to_polynomial(t) for t in enumerate_monomials(3, 3)}) == 6
    assert str(to_polynomial(M(2, 1, 3))) == "X0^2 X1^3 X2"


@pytest.mark.parametrize("m", [3, 4, 5])
def test_polynomial_bijection(m):
    for n in range(1, 7):
        monos = enumerate_monomials(m, n)
        polys = {to_polynomial(t) for t in monos}
        assert len(polys) == len(monos)
        assert all(p.degree == n - 1 for p in polys)
        for t in monos:
            p = to_polynomial(t)
            assert from_polynomial(p) == t
            assert parse_polynomial(str(p), m) == p


def test_eta_examples():
    assert eta(X) == (0, 0)
    assert eta(M(1, 2, 0)) == (1, 2)


def test_eta_bijection():
    for n in range(1, 9):
        images = [eta(t) for t in enumerate_monomials(3, n)]
        assert len(set(images)) == len(images)
        assert sorted(images) == sorted(index_set(n))
        assert len(images) == n * (n + 1) // 2


def test_circledast_examples():
    code = parse_tetra_expr("((x _2 x) -| x)", 3)
    assert circledast(parse_tetra_expr("x", 3), B(0, 0, 1), 3) == B(0, 0, 1)
    assert circledast(code, LinComb.basis(X), 3) == B(0, 1, 1)
    z = tetra_mul(LEFT, X, X)
    expected = tetra_lin_mul(LEFT, tetra_lin_mul(2, z, z), z)
    assert circledast(code, z, 3) == expected
    with pytest.raises(TetraError):
        circledast(code, B(0, 0, 0) + B(0, 0, 1), 3)


def test_expression_round_trip():
    for text in ["((x _2 x) -| x)", "(x |- [0|1|0])", "2*(x -| x) - (x |- x)"]:
        e = parse_tetra_expr(text, 3)
        assert evaluate_tetra_expr(parse_tetra_expr(format_tetra_expr(e), 3), 3) == evaluate_tetra_expr(e, 3)
    with pytest.raises(ExprSyntaxError):
        parse_tetra_expr("(x -| x", 3)


def test_monomial_text_round_trip():
    for m in (3, 4, 5):
        for t in enumerate_monomials(m, 3):
            assert parse_monomial(str(t), m) == t
    assert str(M(1, 2, 3, 4)) == "[1|2,3|4]"


def test_associative_algebra_embedding():
    """-| = |- = an associative product and _i = 0 satisfy every axiom."""
    pool = [("a",), ("b",), ("a", "b")]

    def mul(op, x, y):
        return LinComb.basis(x + y) if op in (LEFT, RIGHT) else LinComb.zero()

    report = check_axioms("mtetra", 4, tetra_axioms(4), lambda d: [w for w in pool if len(w) == d], mul, 6)
    assert report.passed


def test_dialgebra_subaxioms():
    names = [ax.name for ax in tetra_axioms(3)[:5]]
    assert names == [
        "(x-|y)-|z = x-|(y-|z)",
        "(x-|y)-|z = x-|(y|-z)",
        "(x|-y)-|z = x|-(y-|z)",
        "(x-|y)|-z = x|-(y|-z)",
        "(x|-y)|-z = x|-(y|-z)",
    ]


@given(st.integers(3, 6).flatmap(lambda m: st.tuples(st.just(m), st.integers(1, 4), st.integers(1, 4))), st.data())
def test_degree_additivity(mpq, data):
    m, p, q = mpq
    x = data.draw(st.sampled_from(enumerate_monomials(m, p)))
    y = data.draw(st.sampled_from(enumerate_monomials(m, q)))
    op = data.draw(st.sampled_from([LEFT, RIGHT] + list(range(2, m))))
    for k in tetra_mul(op, x, y).keys():
        assert k.degree == p + q
