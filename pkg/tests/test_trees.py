from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyoperad.trees import (
    MTree,
    TreeError,
    corolla,
    count_trees,
    enumerate_trees,
    graft,
    involution,
    leaf,
    parse_tree,
)


def lukasiewicz_words(m: int, n: int) -> set[str]:
    """Brute force: all words over {node, leaf} read as prefix codes, rendered as keys."""
    out = set()
    total = m * n + 1

    def render(word):
        def go(i):
            if word[i] == 0:
                return ".", i + 1
            parts, j = [], i + 1
            for _ in range(m):
                s, j = go(j)
                parts.append(s)
            return "(" + " ".join(parts) + ")", j

        return go(0)[0]

    def extend(word, need, nodes):
        if need == 0:
            if len(word) == total and nodes == n:
                out.add(render(word))
            return
        if len(word) >= total:
            return
        if nodes < n:
            extend(word + [1], need - 1 + m, nodes + 1)
        extend(word + [0], need - 1, nodes)

    extend([], 1, 0)
    return out


def test_graft_examples():
    lf = leaf(3)
    assert graft([lf, corolla(3), lf]).key == "(. (. . .) .)"
    assert graft([lf] * 3) == corolla(3)
    assert graft([leaf(4)] * 4).key == "(. . . .)"


def test_graft_errors():
    with pytest.raises(TreeError):
        graft([leaf(3), leaf(3)])
    with pytest.raises(TreeError):
        graft([leaf(3), leaf(4), leaf(3)])


def test_involution_examples():
    assert involution(parse_tree("((. . .) . .)")).key == "(. . (. . .))"
    assert involution(leaf(3)) == leaf(3)
    t = parse_tree("(. (. . .) .)")
    assert involution(t) == t


def test_enumerate_examples():
    assert [t.key for t in enumerate_trees(3, 2)] == ["((. . .) . .)", "(. (. . .) .)", "(. . (. . .))"]
    assert len(enumerate_trees(3, 3)) == 12
    assert len(enumerate_trees(2, 4)) == 14


def test_count_examples():
    assert [count_trees(2, n) for n in range(1, 6)] == [1, 2, 5, 14, 42]
    assert count_trees(3, 0) == 1
    assert [count_trees(3, n) for n in range(1, 5)] == [1, 3, 12, 55]
    # C(12,4)/9 = 55
    assert comb(12, 4) // 9 == 55


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_enumeration_matches_bruteforce_and_formula(m):
    for n in range(0, 7 if m <= 3 else 5):
        trees = enumerate_trees(m, n)
        keys = [t.key for t in trees]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys) == count_trees(m, n)
        if n <= 5:
            assert set(keys) == lukasiewicz_words(m, n)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_counts_up_to_degree_six(m):
    for n in range(7):
        if m ** n > 20000:
            assert count_trees(m, n) > 0
            continue
        assert len(enumerate_trees(m, n)) == count_trees(m, n)


@pytest.mark.parametrize("m,n", [(2, 4), (3, 3), (4, 3)])
def test_involution_is_degree_preserving_bijection(m, n):
    trees = enumerate_trees(m, n)
    images = [involution(t) for t in trees]
    assert sorted(images) == trees
    assert all(involution(s) == t for s, t in zip(images, trees))


def test_leaf_count_and_unique_decomposition():
    for t in enumerate_trees(3, 3):
        assert t.leaf_count == 2 * t.degree + 1
        assert graft(t.children) == t
        assert t.key.count(".") == t.leaf_count


trees_st = st.integers(2, 4).flatmap(
    lambda m: st.integers(0, 4).flatmap(lambda n: st.sampled_from(enumerate_trees(m, n)))
)


@given(trees_st)
def test_key_round_trip(t):
    assert parse_tree(t.key, t.arity) == t
    if not t.is_leaf:
        assert parse_tree(t.key) == t


@pytest.mark.parametrize("bad", ["(. .", "(.  . .)", "( . . .)", "(. . .)x", "(.)", "((. .) . .)", ""])
def test_parse_rejects(bad):
    with pytest.raises(TreeError):
        parse_tree(bad)


def test_bare_leaf_needs_arity():
    with pytest.raises(TreeError):
        parse_tree(".")
    assert parse_tree(".", 3) == leaf(3)


def test_arity_validated():
    with pytest.raises(TreeError):
        MTree(1)
    with pytest.raises(TreeError):
        parse_tree("(. . .)", 4)
