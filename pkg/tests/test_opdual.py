from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polyoperad.axioms import LEFT, RIGHT
from polyoperad.opdual import (
    DualityError,
    QuadMonomial,
    RelationSpace,
    build_relations,
    duality_report,
    expected_dim,
    orthogonal_complement,
    pairing,
    quad_monomials,
    reduced_basis,
    verify_duality,
)
from polyoperad.exactlin import same_span

FAMILIES = ["mDend", "mTetra", "kP", "kGonal"]


def vec(space, terms):
    index = {str(q): n for n, q in enumerate(space.monomials())}
    v = [Fraction(0)] * space.ambient_dim
    for name, c in terms:
        v[index[name]] += c
    return tuple(v)


def test_monomial_order():
    monos = quad_monomials(3)
    assert len(monos) == 18
    assert [str(q) for q in monos[:4]] == ["(<)<", "(<)>", "(<).2", "(>)<"]
    assert monos[9] == QuadMonomial("R", LEFT, LEFT)
    assert monos == sorted(monos, key=lambda q: (q.shape, [LEFT, RIGHT, 2].index(q.op1), [LEFT, RIGHT, 2].index(q.op2)))


def test_first_dend_relation_vector():
    space = build_relations("mDend", 3)
    assert space.basis[0] == vec(space, [("(<)<", 1), ("<(<)", -1), ("<(>)", -1)])
    assert space.format_vector(space.basis[0]) == "(<)< - <(<) - <(>)"


def test_zero_rhs_relation_is_single_monomial():
    space = build_relations("mTetra", 3)
    assert vec(space, [("(.2).2", 1)]) in space.basis


def test_pairing_example():
    space = build_relations("mDend", 3)
    u = vec(space, [("(<)<", 1), ("<(<)", -1), ("<(>)", -1)])
    v = vec(space, [("(<)<", 1), ("<(<)", -1)])
    assert pairing(u, v) == 0


@pytest.mark.parametrize("family, k, dim", [("mDend", 3, 6), ("mTetra", 3, 12), ("kGonal", 4, 23), ("kP", 5, 12)])
def test_relation_dims(family, k, dim):
    assert build_relations(family, k).dim == dim


@pytest.mark.parametrize("k", range(3, 8))
@pytest.mark.parametrize("family", FAMILIES)
def test_dims_and_complements(family, k):
    space = build_relations(family, k)
    assert space.dim == expected_dim(family, k)
    assert space.dim + orthogonal_complement(space).dim == 2 * k * k


def test_complement_of_full_space_is_zero():
    n = 8
    full = RelationSpace("full", 2, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))
    assert orthogonal_complement(full).dim == 0
    assert orthogonal_complement(orthogonal_complement(full)).dim == n


@pytest.mark.parametrize("k", [3, 4, 5])
def test_dualities(k):
    assert verify_duality("mDend", "mTetra", k)
    assert verify_duality("kP", "kGonal", k)
    assert verify_duality("mTetra", "mDend", k)
    assert verify_duality("kGonal", "kP", k)


def test_non_duality():
    assert not verify_duality("mDend", "kGonal", 4)
    report = duality_report("mDend", "kGonal", 4)
    assert (report.a.dim, report.perp.dim, report.b.dim) == (10, 22, 23)
    assert "NOT dual" in report.summary()


def test_k3_pairs_coincide():
    assert same_span(build_relations("mDend", 3).basis, build_relations("kP", 3).basis)
    assert same_span(build_relations("mTetra", 3).basis, build_relations("kGonal", 3).basis)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("k", [3, 4])
def test_double_dual(family, k):
    space = build_relations(family, k)
    assert same_span(orthogonal_complement(orthogonal_complement(space)).basis, space.basis)


def test_reduced_basis_spans():
    space = build_relations("kGonal", 4)
    assert same_span(reduced_basis(space), space.basis)


def test_errors():
    with pytest.raises(DualityError):
        build_relations("kGonal", 2)
    with pytest.raises(DualityError):
        build_relations("bogus", 3)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FAMILIES), st.sampled_from(FAMILIES), st.integers(3, 5))
def test_symmetry(a, b, k):
    assert verify_duality(a, b, k) == verify_duality(b, a, k)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(3, 5), st.data())
def test_complement_is_orthogonal(family, k, data):
    space = build_relations(family, k)
    perp = orthogonal_complement(space)
    r = data.draw(st.sampled_from(space.basis))
    p = data.draw(st.sampled_from(perp.basis))
    assert pairing(r, p) == 0
