"""
Stable marked trees, the objects of Γ_{0,n}, and ribbon rooted trees.

A :py:class:`MarkedTree` is stored as a nested tuple hanging off leaf 1:
the *base* vertex (the internal vertex adjacent to leaf 1) is a tuple of
its children, every child is either a leaf label or again a tuple. Children
are sorted by their smallest leaf, which makes the representation canonical:
two trees are equal iff their split sets are equal.

Vertex ids: leaves carry their label 1..n, internal vertices get the ids
n+1, n+2, ... in preorder, base first. Edges are pairs ``(u, v)`` with ``u``
on the side of leaf 1.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import (
    Hashable,
    Iterable,
    Iterator,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Union,
)

import toolz

from rubber_system.misc import config
from rubber_system.misc import logger
from rubber_system.misc.exceptions import (
    BoundExceededError,
    UnstableTreeError,
    ValidationError,
)

__all__ = [
    "Decomposition",
    "DecompositionTypeRecord",
    "MarkedTree",
    "RibbonRootedTree",
    "assemble",
    "count_stable_trees_bruteforce",
    "decomposition_type",
    "enumerate_rrt",
    "enumerate_stable_trees",
    "iter_stable_trees",
    "stabilize",
    "stats",
    "vertex_weight",
]

Nested = Union[int, tuple]
Edge = tuple[int, int]


def vertex_weight(valence: int) -> int:
    """χ(M_{0,d}) = (-1)^{d-1} (d-3)! for d >= 3, with the convention 1 for d = 1."""
    if valence == 1:
        return 1
    if valence < 3:
        raise ValidationError(f"no weight for vertices of valence {valence}")
    return (-1) ** (valence - 1) * math.factorial(valence - 3)


def _min_leaf(node: Nested) -> int:
    while isinstance(node, tuple):
        node = node[0]
    return node


def _leaves(node: Nested) -> Iterator[int]:
    if isinstance(node, tuple):
        for child in node:
            yield from _leaves(child)
    else:
        yield node


def _canonical(node: Nested) -> Nested:
    if not isinstance(node, tuple):
        return node
    children = [_canonical(child) for child in node]
    return tuple(sorted(children, key=_min_leaf))


@dataclass(frozen=True)
class MarkedTree:
    """A stable tree with n leaves labelled 1..n.

    Use :py:meth:`from_splits`, :py:meth:`from_code` or :py:func:`stabilize`
    to construct trees from other descriptions.
    """

    n: int
    nested: tuple

    @classmethod
    def star(cls, n: int) -> "MarkedTree":
        """The tree with a single internal vertex."""
        if n < 3:
            raise UnstableTreeError(f"stable trees need at least 3 leaves, got {n}")
        return cls(n, tuple(range(2, n + 1)))

    @classmethod
    def from_nested(cls, n: int, nested: Sequence) -> "MarkedTree":
        """Build a tree from an arbitrarily ordered nested tuple."""
        nested = _canonical(tuple(nested))
        leaves = sorted(_leaves(nested))
        if leaves != list(range(2, n + 1)):
            raise ValidationError(f"the leaves 2..{n} must appear exactly once")
        tree = cls(n, nested)  # type: ignore[arg-type]
        if any(v < 3 for v in tree.internal_valences()):
            raise UnstableTreeError(f"{nested} has an internal vertex of valence < 3")
        return tree

    @classmethod
    def from_splits(cls, n: int, splits: Iterable[Iterable[int]]) -> "MarkedTree":
        """Build a tree from the leaf bipartitions of its internal edges.

        Each split can be given by either of its sides.
        """
        if n < 3:
            raise UnstableTreeError(f"stable trees need at least 3 leaves, got {n}")
        everything = frozenset(range(1, n + 1))
        clusters = set()
        for split in splits:
            side = frozenset(split)
            if not side <= everything:
                raise ValidationError(f"split {sorted(side)} is not a subset of 1..{n}")
            cluster = everything - side if 1 in side else side
            if len(cluster) < 2 or len(cluster) > n - 2:
                raise ValidationError(
                    f"split {sorted(side)} does not belong to an internal edge"
                )
            clusters.add(cluster)
        ordered = sorted(clusters, key=len)
        for a, b in itertools.combinations(ordered, 2):
            if a & b and not a <= b:
                raise ValidationError(
                    f"the splits {sorted(a)} and {sorted(b)} are not compatible"
                )

        def build(leaves: frozenset[int]) -> tuple:
            inside = [c for c in ordered if c < leaves]
            maximal = [c for c in inside if not any(c < d for d in inside)]
            covered = frozenset().union(*maximal) if maximal else frozenset()
            children: list[Nested] = [build(c) for c in maximal]
            children.extend(leaves - covered)
            return tuple(sorted(children, key=_min_leaf))

        return cls(n, build(everything - {1}))

    @classmethod
    def from_code(cls, text: str) -> "MarkedTree":
        """Inverse of :py:attr:`code`."""
        head, sep, body = text.strip().partition(":")
        if not sep:
            raise ValidationError(f"{text!r} is not a tree code")
        try:
            n = int(head)
            splits = [
                [int(leaf) for leaf in side.split(",")]
                for side in body.split(";")
                if side.strip()
            ]
        except ValueError as error:
            raise ValidationError(f"{text!r} is not a tree code") from error
        if any(1 not in side for side in splits):
            raise ValidationError("every split is written by its side containing 1")
        return cls.from_splits(n, splits)

    @cached_property
    def _structure(
        self,
    ) -> tuple[list[Edge], dict[int, frozenset[int]], dict[int, list[int]]]:
        edges: list[Edge] = []
        below: dict[int, frozenset[int]] = {1: frozenset({1})}
        children: dict[int, list[int]] = {}
        counter = itertools.count(self.n + 1)

        def walk(node: Nested, parent: int) -> int:
            if not isinstance(node, tuple):
                edges.append((parent, node))
                below[node] = frozenset({node})
                children[node] = []
                return node
            vertex = next(counter)
            edges.append((parent, vertex))
            children[vertex] = []
            leaves: set[int] = set()
            for child in node:
                child_id = walk(child, vertex)
                children[vertex].append(child_id)
                leaves.update(below[child_id])
            below[vertex] = frozenset(leaves)
            return vertex

        walk(self.nested, 1)
        children[1] = [self.n + 1]
        return edges, below, children

    @property
    def edges(self) -> list[Edge]:
        """All edges, leaf-1 edge first, then in preorder."""
        return self._structure[0]

    adjacency = edges

    @property
    def internal_count(self) -> int:
        return len(self.internal_vertices)

    @property
    def base(self) -> int:
        return self.n + 1

    @cached_property
    def vertices(self) -> list[int]:
        return list(range(1, self.n + 1)) + [
            v for _, v in self.edges if v > self.n
        ]

    @property
    def internal_vertices(self) -> list[int]:
        return [v for _, v in self.edges if v > self.n]

    @cached_property
    def leaf_label(self) -> dict[int, int]:
        """Leaf label to vertex id, the identity by construction."""
        return {i: i for i in range(1, self.n + 1)}

    def below(self, vertex: int) -> frozenset[int]:
        """Leaves on the far side (from leaf 1) of the edge above ``vertex``."""
        return self._structure[1][vertex]

    def children(self, vertex: int) -> list[int]:
        return self._structure[2][vertex]

    @cached_property
    def parent(self) -> dict[int, int]:
        return {v: u for u, v in self.edges}

    def valence(self, vertex: int) -> int:
        if vertex <= self.n:
            return 1
        return len(self.children(vertex)) + 1

    def internal_valences(self) -> list[int]:
        """Valences of the internal vertices, in preorder."""
        result: list[int] = []
        stack: list[Nested] = [self.nested]
        while stack:
            node = stack.pop()
            result.append(len(node) + 1)
            stack.extend(reversed([c for c in node if isinstance(c, tuple)]))
        return result

    def neighbours(self, vertex: int) -> list[int]:
        result = list(self.children(vertex))
        if vertex in self.parent:
            result.insert(0, self.parent[vertex])
        return result

    @cached_property
    def clusters(self) -> frozenset[frozenset[int]]:
        """For every internal edge the side not containing leaf 1."""
        return frozenset(
            self.below(v) for u, v in self.edges if u > self.n and v > self.n
        )

    @cached_property
    def splits(self) -> frozenset[frozenset[int]]:
        """For every internal edge the side containing leaf 1."""
        everything = frozenset(range(1, self.n + 1))
        return frozenset(everything - c for c in self.clusters)

    def has_split(self, subset: Iterable[int], leaf_edges: bool = True) -> bool:
        """Whether some edge separates ``subset`` from its complement."""
        side = frozenset(subset)
        everything = frozenset(range(1, self.n + 1))
        if not side or side == everything or not side <= everything:
            return False
        cluster = everything - side if 1 in side else side
        if len(cluster) == 1 or len(cluster) == self.n - 1:
            return leaf_edges
        return cluster in self.clusters

    @cached_property
    def code(self) -> str:
        """Canonical text form, e.g. ``5:1,2;1,2,3``; the star is ``n:``."""
        sides = sorted(tuple(sorted(s)) for s in self.splits)
        return f"{self.n}:" + ";".join(",".join(map(str, s)) for s in sides)

    def __str__(self) -> str:
        return self.code


def _insert(node: Nested, leaf: int) -> Iterator[Nested]:
    """All ways of attaching ``leaf`` to the hierarchy below ``node``."""
    # subdivide the edge above node
    yield (node, leaf)
    if isinstance(node, tuple):
        # attach to the vertex itself
        yield node + (leaf,)
        for i, child in enumerate(node):
            for new_child in _insert(child, leaf):
                yield node[:i] + (new_child,) + node[i + 1 :]


def _iter_nested(n: int) -> Iterator[tuple]:
    if n == 3:
        yield (2, 3)
        return
    for nested in _iter_nested(n - 1):
        for grown in _insert(nested, n):
            yield grown  # type: ignore[misc]


def _check_tree_bound(n: int) -> None:
    if n < 3:
        raise ValidationError(f"Γ_0,n needs n >= 3, got {n}")
    bound = config.get(config.MAX_TREE_N)
    if n > bound:
        raise BoundExceededError("number of tree leaves", n, bound)


def iter_stable_trees(n: int) -> Iterator[MarkedTree]:
    """Lazily iterate over Γ_{0,n} in canonical order.

    Every tree of Γ_{0,n-1} is grown by attaching leaf n to each of its
    edges and each of its internal vertices. Since leaf n carries the
    largest label every tree is produced exactly once and already in
    canonical form.
    """
    _check_tree_bound(n)
    for nested in _iter_nested(n):
        yield MarkedTree(n, nested)


def enumerate_stable_trees(n: int) -> list[MarkedTree]:
    """All of Γ_{0,n}, one representative per isomorphism class."""
    trees = list(iter_stable_trees(n))
    logger.debug("enumerated %i trees of Γ_{0,%i}", len(trees), n)
    return trees


def stabilize(
    edges: Iterable[tuple[Hashable, Hashable]],
    leaf_label: Mapping[int, Hashable],
) -> MarkedTree:
    """Smooth the bivalent vertices of a labelled tree.

    Parameters
    ----------
    edges: Iterable[tuple[Hashable, Hashable]]
        Edges of the tree, over arbitrary hashable vertex ids.
    leaf_label: Mapping[int, Hashable]
        Leaf label 1..n to vertex id.

    Returns
    -------
    MarkedTree: the stable tree with the same leaf bipartitions
    """
    n = len(leaf_label)
    if sorted(leaf_label) != list(range(1, n + 1)):
        raise ValidationError("leaves must be labelled 1..n")
    if n < 3:
        raise UnstableTreeError(f"stable trees need at least 3 leaves, got {n}")
    neighbours: dict[Hashable, list[Hashable]] = defaultdict(list)
    edge_count = 0
    for u, v in edges:
        neighbours[u].append(v)
        neighbours[v].append(u)
        edge_count += 1
    if edge_count != len(neighbours) - 1:
        raise ValidationError("the input graph is not a tree")
    label_of = {vertex: label for label, vertex in leaf_label.items()}
    for vertex, adjacent in neighbours.items():
        if vertex in label_of and len(adjacent) != 1:
            raise UnstableTreeError(
                f"leaf {label_of[vertex]} has valence {len(adjacent)}"
            )
        if vertex not in label_of and len(adjacent) == 1:
            raise UnstableTreeError(f"unlabelled vertex {vertex!r} has valence 1")
    root = leaf_label[1]
    if root not in neighbours:
        raise ValidationError("leaf 1 is not part of the tree")
    order: list[Hashable] = []
    parent: dict[Hashable, Hashable] = {root: root}
    stack = [root]
    while stack:
        vertex = stack.pop()
        order.append(vertex)
        for other in neighbours[vertex]:
            if other not in parent:
                parent[other] = vertex
                stack.append(other)
    if len(order) != len(neighbours):
        raise ValidationError("the input graph is not connected")
    below: dict[Hashable, frozenset[int]] = {}
    for vertex in reversed(order):
        leaves = {label_of[vertex]} if vertex in label_of and vertex != root else set()
        for other in neighbours[vertex]:
            if parent.get(other) == vertex and other != root:
                leaves.update(below[other])
        below[vertex] = frozenset(leaves)
    clusters = {c for c in below.values() if 2 <= len(c) <= n - 2}
    return MarkedTree.from_splits(n, clusters)


def count_stable_trees_bruteforce(n: int) -> int:
    """Count Γ_{0,n} by exhaustive generation of labelled trees.

    For every number i of internal vertices all trees on the internal
    vertices (from Prüfer sequences) and all attachments of the n leaves are
    generated; the stable ones are deduplicated by their split sets.
    """
    if n < 3 or n > 6:
        raise BoundExceededError("number of leaves for brute force", n, 6)
    seen: set[str] = set()
    for i in range(1, n - 1):
        internal = list(range(n + 1, n + i + 1))
        for skeleton in _labelled_trees(internal):
            for attachment in itertools.product(internal, repeat=n):
                valence = {v: 0 for v in internal}
                for u, v in skeleton:
                    valence[u] += 1
                    valence[v] += 1
                for v in attachment:
                    valence[v] += 1
                if min(valence.values()) < 3:
                    continue
                edges = list(skeleton) + [
                    (leaf, v) for leaf, v in enumerate(attachment, start=1)
                ]
                tree = stabilize(edges, {leaf: leaf for leaf in range(1, n + 1)})
                seen.add(tree.code)
    return len(seen)


def _labelled_trees(vertices: list[int]) -> Iterator[list[Edge]]:
    count = len(vertices)
    if count == 1:
        yield []
        return
    if count == 2:
        yield [(vertices[0], vertices[1])]
        return
    for sequence in itertools.product(vertices, repeat=count - 2):
        degree = {v: 1 for v in vertices}
        for v in sequence:
            degree[v] += 1
        edges: list[Edge] = []
        for v in sequence:
            leaf = min(u for u in vertices if degree[u] == 1)
            edges.append((leaf, v))
            degree[leaf] -= 1
            degree[v] -= 1
        u, w = [x for x in vertices if degree[x] == 1]
        edges.append((u, w))
        yield edges


PlaneTree = tuple
"""A planted plane tree: a leaf is ``()``, an internal vertex the tuple of
its children in their cyclic order after the half-edge towards the root."""


@dataclass(frozen=True)
class RibbonRootedTree:
    """A rooted stable tree with a cyclic order of half-edges at every vertex.

    The root leaf is implicit, ``shape`` is the base vertex as a plane tree.
    Fixing the half-edge towards the root turns every cyclic order into a
    linear order of the children, so plane trees are exactly the
    isomorphism classes.
    """

    shape: PlaneTree

    @cached_property
    def internal_count(self) -> int:
        return _count_internal(self.shape)

    @cached_property
    def leaf_count(self) -> int:
        """N_T, the number of leaves other than the root."""
        return _count_leaves(self.shape)

    def internal_valences(self) -> list[int]:
        result: list[int] = []
        stack = [self.shape]
        while stack:
            node = stack.pop()
            result.append(len(node) + 1)
            stack.extend(reversed([c for c in node if c]))
        return result

    def relations(self) -> tuple[list[int], list[tuple[int, int]]]:
        """Internal vertices in preorder and the parent-before-child relations."""
        elements: list[int] = []
        relations: list[tuple[int, int]] = []
        counter = itertools.count()

        def walk(node: PlaneTree, parent: Optional[int]) -> None:
            vertex = next(counter)
            elements.append(vertex)
            if parent is not None:
                relations.append((parent, vertex))
            for child in node:
                if child:
                    walk(child, vertex)

        walk(self.shape, None)
        return elements, relations

    @cached_property
    def code(self) -> str:
        """Bracket notation, every leaf is ``()``."""
        return _bracket(self.shape)

    def __str__(self) -> str:
        return self.code


def _bracket(node: PlaneTree) -> str:
    return "(" + "".join(_bracket(child) for child in node) + ")"


def _count_internal(node: PlaneTree) -> int:
    if not node:
        return 0
    return 1 + sum(_count_internal(child) for child in node)


def _count_leaves(node: PlaneTree) -> int:
    if not node:
        return 1
    return sum(_count_leaves(child) for child in node)


@toolz.memoize
def _planted(internal: int, leaves: int) -> tuple[PlaneTree, ...]:
    if internal == 0:
        return ((),) if leaves == 1 else ()
    return tuple(
        forest for forest in _forests(internal - 1, leaves) if len(forest) >= 2
    )


@toolz.memoize
def _forests(internal: int, leaves: int) -> tuple[tuple[PlaneTree, ...], ...]:
    """Nonempty sequences of planted trees with the given totals."""
    result: list[tuple[PlaneTree, ...]] = []
    for first_internal in range(internal + 1):
        # a planted tree with i internal vertices has at least i + 1 leaves
        for first_leaves in range(first_internal + 1, leaves + 1):
            heads = _planted(first_internal, first_leaves)
            if not heads:
                continue
            rest_internal = internal - first_internal
            rest_leaves = leaves - first_leaves
            if rest_internal == 0 and rest_leaves == 0:
                tails: tuple[tuple[PlaneTree, ...], ...] = ((),)
            elif rest_leaves == 0:
                continue
            else:
                tails = _forests(rest_internal, rest_leaves)
            for head in heads:
                for tail in tails:
                    result.append((head,) + tail)
    return tuple(result)


def enumerate_rrt(m: int, max_leaves: int) -> list[RibbonRootedTree]:
    """Ribbon rooted trees with m internal vertices and N_T <= max_leaves.

    Trees are ordered by N_T, then by generation order.
    """
    if m < 1:
        raise ValidationError("ribbon rooted trees need at least one internal vertex")
    trees = [
        RibbonRootedTree(shape)
        for leaves in range(m + 1, max_leaves + 1)
        for shape in _planted(m, leaves)
    ]
    logger.debug("enumerated %i ribbon rooted trees in RRT(%i)", len(trees), m)
    return trees


def stats(tree: RibbonRootedTree) -> tuple[Fraction, int]:
    """The weight a_T = Π A_val(v) / (val(v) - 1)! and N_T."""
    weight = Fraction(1)
    for valence in tree.internal_valences():
        weight *= Fraction(vertex_weight(valence), math.factorial(valence - 1))
    return weight, tree.leaf_count


class DecompositionTypeRecord(NamedTuple):
    """The decomposition type (k, j, λ) at the base vertex.

    ``multiplicities[i - 1]`` is the number of cut off subtrees with i
    internal vertices, so it has length m - 1.
    """

    k: int
    j: int
    multiplicities: tuple[int, ...]

    @property
    def parts(self) -> tuple[int, ...]:
        """λ as a non increasing list of parts."""
        return tuple(
            size
            for size in range(len(self.multiplicities), 0, -1)
            for _ in range(self.multiplicities[size - 1])
        )


class Decomposition(NamedTuple):
    record: DecompositionTypeRecord
    subtrees: tuple[RibbonRootedTree, ...]
    leaf_slots: tuple[int, ...]


def decomposition_type(tree: RibbonRootedTree) -> Decomposition:
    """Cut a ribbon rooted tree at its base vertex.

    Returns the type (k, j, λ), the subtrees hanging off the base in their
    ribbon order, and the positions of the k leaves among the base's
    children (needed to reassemble the tree).
    """
    children = tree.shape
    subtrees = tuple(RibbonRootedTree(child) for child in children if child)
    leaf_slots = tuple(i for i, child in enumerate(children) if not child)
    multiplicities = [0] * (tree.internal_count - 1)
    for subtree in subtrees:
        multiplicities[subtree.internal_count - 1] += 1
    record = DecompositionTypeRecord(
        len(leaf_slots), len(subtrees), tuple(multiplicities)
    )
    return Decomposition(record, subtrees, leaf_slots)


def assemble(decomposition: Decomposition) -> RibbonRootedTree:
    """Reassemble a tree from the output of :py:func:`decomposition_type`."""
    record, subtrees, leaf_slots = decomposition
    size = record.k + record.j
    if len(subtrees) != record.j or len(leaf_slots) != record.k:
        raise ValidationError("decomposition does not match its type")
    pieces = iter(subtrees)
    slots = set(leaf_slots)
    shape = tuple(() if i in slots else next(pieces).shape for i in range(size))
    return RibbonRootedTree(shape)
