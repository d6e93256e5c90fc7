from fractions import Fraction

import pytest

TREE_COUNTS = {3: 1, 4: 4, 5: 26, 6: 236, 7: 2752}


def test_vertex_weight():
    from rubber_system.api.trees import vertex_weight
    from rubber_system.misc.exceptions import ValidationError

    assert [vertex_weight(d) for d in (1, 3, 4, 5, 6)] == [1, 1, -1, 2, -6]
    with pytest.raises(ValidationError):
        vertex_weight(2)


def test_enumeration_counts(small_trees):
    from rubber_system.api.trees import enumerate_stable_trees, iter_stable_trees

    for n, trees in small_trees.items():
        assert len(trees) == TREE_COUNTS[n]
        assert len({tree.code for tree in trees}) == len(trees)
    assert sum(1 for _ in iter_stable_trees(6)) == TREE_COUNTS[6]
    assert len(enumerate_stable_trees(7)) == TREE_COUNTS[7]


@pytest.mark.slow
def test_enumeration_count_eight():
    from rubber_system.api.trees import iter_stable_trees

    assert sum(1 for _ in iter_stable_trees(8)) == 39208


def test_enumeration_bounds():
    from rubber_system.api.trees import enumerate_stable_trees
    from rubber_system.misc.exceptions import BoundExceededError, ValidationError

    with pytest.raises(ValidationError):
        enumerate_stable_trees(2)
    with pytest.raises(BoundExceededError):
        enumerate_stable_trees(10)


def test_brute_force_counts():
    from rubber_system.api.trees import count_stable_trees_bruteforce
    from rubber_system.misc.exceptions import BoundExceededError

    for n in (3, 4, 5):
        assert count_stable_trees_bruteforce(n) == TREE_COUNTS[n]
    with pytest.raises(BoundExceededError):
        count_stable_trees_bruteforce(7)


@pytest.mark.slow
def test_brute_force_count_six():
    from rubber_system.api.trees import count_stable_trees_bruteforce

    assert count_stable_trees_bruteforce(6) == TREE_COUNTS[6]


def test_tree_structure():
    from rubber_system.api.trees import MarkedTree

    tree = MarkedTree.from_splits(4, [[1, 2]])
    assert tree.nested == (2, (3, 4))
    assert tree.code == "4:1,2"
    assert str(tree) == "4:1,2"
    assert tree.base == 5
    assert tree.internal_vertices == [5, 6]
    assert tree.edges[0] == (1, 5)
    assert tree.children(5) == [2, 6]
    assert tree.below(6) == frozenset({3, 4})
    assert tree.parent[6] == 5
    assert tree.internal_valences() == [3, 3]
    assert tree.valence(2) == 1
    assert tree.neighbours(6) == [5, 3, 4]
    assert tree.clusters == frozenset({frozenset({3, 4})})
    assert tree.has_split([1, 2])
    assert tree.has_split([3, 4])
    assert not tree.has_split([1, 3])
    assert tree.has_split([2])
    assert not tree.has_split([2], leaf_edges=False)


def test_star_and_codes(small_trees):
    from rubber_system.api.trees import MarkedTree
    from rubber_system.misc.exceptions import UnstableTreeError, ValidationError

    star = MarkedTree.star(5)
    assert star.code == "5:"
    assert star.internal_valences() == [5]
    assert MarkedTree.from_code("5:") == star
    for trees in small_trees.values():
        for tree in trees:
            assert MarkedTree.from_code(tree.code) == tree
            assert MarkedTree.from_splits(tree.n, tree.clusters) == tree
    with pytest.raises(ValidationError):
        MarkedTree.from_code("5")
    with pytest.raises(ValidationError):
        MarkedTree.from_code("5:2,3")
    with pytest.raises(ValidationError):
        MarkedTree.from_splits(5, [[1, 2], [1, 3]])
    with pytest.raises(UnstableTreeError):
        MarkedTree.star(2)
    with pytest.raises(UnstableTreeError):
        MarkedTree.from_nested(4, (2, (3,), 4))


def test_from_nested_is_canonical():
    from rubber_system.api.trees import MarkedTree

    tree = MarkedTree.from_nested(5, ((5, 3), 4, 2))
    assert tree.nested == (2, (3, 5), 4)
    assert tree == MarkedTree.from_splits(5, [[3, 5]])


def test_stabilize():
    from rubber_system.api.trees import MarkedTree, stabilize
    from rubber_system.misc.exceptions import UnstableTreeError, ValidationError

    # a chain a - b - c with a bivalent middle vertex
    edges = [("a", "b"), ("b", "c"), (1, "a"), (2, "a"), (3, "c"), (4, "c")]
    labels = {1: 1, 2: 2, 3: 3, 4: 4}
    assert stabilize(edges, labels) == MarkedTree.from_splits(4, [[1, 2]])
    with pytest.raises(UnstableTreeError):
        stabilize(edges + [("c", "d")], labels)
    with pytest.raises(ValidationError):
        stabilize(edges + [("a", "c")], labels)
    with pytest.raises(UnstableTreeError):
        stabilize([(1, "a"), (2, "a"), (3, "a"), (4, 3)], labels)


def test_ribbon_trees():
    from rubber_system.api.trees import enumerate_rrt, stats
    from rubber_system.misc.exceptions import ValidationError

    assert [tree.code for tree in enumerate_rrt(1, 4)] == [
        "(()())",
        "(()()())",
        "(()()()())",
    ]
    trees = enumerate_rrt(2, 3)
    assert sorted(tree.code for tree in trees) == ["((()())())", "(()(()()))"]
    for tree in trees:
        assert tree.internal_count == 2
        assert tree.leaf_count == 3
        assert stats(tree)[1] == 3
    weight, leaves = stats(enumerate_rrt(1, 2)[0])
    assert (weight, leaves) == (Fraction(1, 2), 2)
    assert all(t.leaf_count <= 7 for t in enumerate_rrt(3, 7))
    with pytest.raises(ValidationError):
        enumerate_rrt(0, 4)


def test_decomposition_and_reassembly():
    from rubber_system.api.trees import (
        RibbonRootedTree,
        assemble,
        decomposition_type,
        enumerate_rrt,
    )

    tree = RibbonRootedTree(((), ((), ())))
    record, subtrees, slots = decomposition_type(tree)
    assert (record.k, record.j, record.multiplicities) == (1, 1, (1,))
    assert record.parts == (1,)
    assert subtrees == (RibbonRootedTree(((), ())),)
    assert slots == (0,)
    for m in range(2, 5):
        for tree in enumerate_rrt(m, 7):
            decomposition = decomposition_type(tree)
            assert len(decomposition.record.multiplicities) == m - 1
            assert sum(
                size * count
                for size, count in enumerate(decomposition.record.multiplicities, 1)
            ) == m - 1
            assert assemble(decomposition) == tree


@pytest.mark.parametrize("n", [3, 4, 5])
def test_stabilize_keeps_stable_trees(n):
    from rubber_system.api.trees import enumerate_stable_trees, stabilize

    for tree in enumerate_stable_trees(n):
        assert tree.leaf_label == {i: i for i in range(1, n + 1)}
        assert tree.adjacency == tree.edges
        assert stabilize(tree.adjacency, tree.leaf_label) == tree
