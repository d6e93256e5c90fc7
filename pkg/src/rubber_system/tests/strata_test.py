import pytest

CHERRIES = [-5, 1, 1, 1, 2]


def _cherry_tree():
    from rubber_system.api.trees import MarkedTree

    return MarkedTree.from_splits(5, [[2, 3], [4, 5]])


def test_subtree_weight():
    from rubber_system.api.strata import subtree_weight
    from rubber_system.api.trees import MarkedTree
    from rubber_system.misc.exceptions import ValidationError

    tree = MarkedTree.from_splits(4, [[1, 2]])
    x = (3, 1, -2, -2)
    assert subtree_weight(tree, x, (5, 6)) == -4
    assert subtree_weight(tree, x, (5, 6), "near") == 4
    assert subtree_weight(tree, x, (5, 6), 3) == -4
    assert subtree_weight(tree, x, (5, 6), 1) == 4
    assert subtree_weight(tree, x, (5, 2)) == 1
    with pytest.raises(ValidationError):
        subtree_weight(tree, x, (5, 3))
    with pytest.raises(ValidationError):
        subtree_weight(tree, x, (5, 6), "left")
    with pytest.raises(ValidationError):
        subtree_weight(tree, (2, -1, -1), (5, 6))


def test_x_directing():
    from rubber_system.api.strata import partial_order, x_directing
    from rubber_system.api.trees import MarkedTree

    tree = MarkedTree.from_splits(4, [[1, 2]])
    directed = x_directing(tree, (3, -1, -1, -1))
    assert set(directed.arcs) == {(1, 5), (5, 2), (5, 6), (6, 3), (6, 4)}
    assert directed.less(5, 6)
    assert not directed.less(6, 5)
    assert directed.internal_relations() == [(5, 6)]
    assert partial_order(directed)[1] == frozenset({2, 3, 4, 5, 6})
    assert partial_order(directed)[3] == frozenset()

    directed = x_directing(_cherry_tree(), CHERRIES)
    assert sorted(directed.internal_relations()) == [(7, 6), (8, 6)]
    assert not directed.comparable(7, 8)
    # leaves are minimal or maximal
    for leaf in range(1, 6):
        assert not directed.up_sets[leaf] or not any(
            leaf in directed.up_sets[v] for v in range(1, 9)
        )


def test_admissible_partitions():
    from rubber_system.api.strata import (
        OrderedPartition,
        admissible_partitions,
        is_admissible,
        x_directing,
    )

    tree = _cherry_tree()
    directed = x_directing(tree, CHERRIES)
    partitions = admissible_partitions(tree, CHERRIES)
    assert sorted(p.to_dict() for p in partitions) == [
        [[2, 3, 4, 5], [7], [8], [6], [1]],
        [[2, 3, 4, 5], [7, 8], [6], [1]],
        [[2, 3, 4, 5], [8], [7], [6], [1]],
    ]
    assert all(is_admissible(tree, directed, p) for p in partitions)
    assert sorted(len(p) for p in partitions) == [4, 5, 5]
    assert partitions[0].middle == partitions[0].blocks[1:-1]
    wrong_order = OrderedPartition(
        tuple(map(frozenset, ([2, 3, 4, 5], [6], [7, 8], [1])))
    )
    assert not is_admissible(tree, directed, wrong_order)
    not_antichain = OrderedPartition(
        tuple(map(frozenset, ([2, 3, 4, 5], [7, 6], [8], [1])))
    )
    assert not is_admissible(tree, directed, not_antichain)
    missing = OrderedPartition(tuple(map(frozenset, ([2, 3, 4, 5], [7, 8], [1]))))
    assert not is_admissible(tree, directed, missing)


def test_admissible_partitions_match_definition(small_trees):
    """The builder finds exactly the partitions satisfying the conditions."""
    import itertools

    from rubber_system.api.strata import (
        OrderedPartition,
        admissible_partitions,
        is_admissible,
        x_directing,
    )

    x = (3, 1, -2, -2)
    for tree in small_trees[4]:
        directed = x_directing(tree, x)
        found = {p.blocks for p in admissible_partitions(tree, x)}
        internal = tree.internal_vertices
        expected = set()
        for labels in itertools.product(range(len(internal)), repeat=len(internal)):
            used = sorted(set(labels))
            if used != list(range(len(used))):
                continue
            middle = tuple(
                frozenset(v for v, label in zip(internal, labels) if label == block)
                for block in used
            )
            blocks = (frozenset({1, 2}),) + middle + (frozenset({3, 4}),)
            if is_admissible(tree, directed, OrderedPartition(blocks)):
                expected.add(blocks)
        assert found == expected


def test_vertex_classes():
    from rubber_system.api.strata import class_m0m, class_mbar0
    from rubber_system.misc.exceptions import ValidationError
    from rubber_system.model.gclass import GClass

    assert class_m0m(3) == GClass([1])
    assert class_m0m(4) == GClass([-2, 1])
    assert class_m0m(5) == GClass([6, -5, 1])
    with pytest.raises(ValidationError):
        class_m0m(2)
    assert class_mbar0(2) == GClass([1])
    assert class_mbar0(4) == GClass([1, 1])
    assert class_mbar0(5) == GClass([1, 5, 1])
    assert class_mbar0(5).evaluate(1) == 7


def test_stratum_class():
    from rubber_system.api.strata import stratum_class
    from rubber_system.api.trees import MarkedTree
    from rubber_system.model.gclass import GClass

    assert stratum_class(_cherry_tree(), CHERRIES) == GClass([1, 1])
    assert stratum_class(MarkedTree.star(4), (3, -1, -1, -1)) == GClass([-2, 1])
    assert stratum_class(MarkedTree.from_splits(4, [[1, 3]]), (3, -1, -1, -1)) == 1


def test_total_class():
    from rubber_system.api.strata import total_class
    from rubber_system.model.gclass import GClass

    assert total_class((2, -1, -1)) == GClass([1])
    assert total_class((3, -1, -1, -1)) == GClass([1, 1])
    assert total_class("3,-1,-1,-1").evaluate(1) == 2


def test_total_class_with_workers(test_config):
    from rubber_system.api.strata import total_class

    x = (4, -1, -1, -1, -1)
    serial = total_class(x)
    test_config.override(workers=3)
    assert total_class(x) == serial


def test_central_data_match_table():
    from rubber_system.api.recursion import chi_table
    from rubber_system.api.strata import euler_char

    table = chi_table(5)
    for n in range(2, 6):
        x = (n,) + (-1,) * n
        assert euler_char(x) == table.row_sum(n)
    assert euler_char((4, -1, -1, -1, -1)) == 10


def test_linear_extensions():
    from rubber_system.api.strata import count_linear_extensions
    from rubber_system.misc.exceptions import BoundExceededError

    assert count_linear_extensions([1, 2, 3], [(1, 2), (2, 3)]) == 1
    assert count_linear_extensions([1, 2, 3], []) == 6
    assert count_linear_extensions([1, 2, 3], [(1, 2)]) == 3
    assert count_linear_extensions(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]) == 6
    assert count_linear_extensions([], []) == 1
    with pytest.raises(BoundExceededError):
        count_linear_extensions(list(range(21)), [])


def test_linear_extensions_agree(small_trees):
    from rubber_system.api.strata import (
        linear_extensions,
        linear_extensions_bruteforce,
        x_directing,
    )

    for x in [(3, 1, -2, -2), (-5, 1, 1, 1, 2), (4, 1, 1, -3, -3)]:
        for tree in small_trees[len(x)]:
            directed = x_directing(tree, x)
            assert linear_extensions(directed) == linear_extensions_bruteforce(directed)


@pytest.mark.parametrize(
    "x", ["3,1,-2,-2", "-5,1,1,1,2", "4,1,1,-3,-3", "5,-1,-1,-1,-2"]
)
def test_euler_char_methods_agree(x):
    from rubber_system.api.strata import euler_char

    assert euler_char(x) == euler_char(x, "linear-extensions")


def test_euler_char_method():
    from rubber_system.api.strata import euler_char
    from rubber_system.misc.exceptions import ValidationError

    assert euler_char((2, -1, -1)) == 1
    assert euler_char((2, -1, -1), "linear-extensions") == 1
    with pytest.raises(ValidationError):
        euler_char((2, -1, -1), "bogus")
