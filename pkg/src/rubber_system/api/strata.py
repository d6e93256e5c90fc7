"""
Everything a ramification datum x induces on a stable tree: the x-directing,
the order ≤ₓ, the admissible ordered partitions P_x(T) and the classes of
the strata M_x(T) in Z[L].
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from multiprocessing.pool import ThreadPool
from typing import Hashable, Iterable, Iterator, Optional, Sequence, Union

import toolz

from rubber_system.api.trees import (
    Edge,
    MarkedTree,
    iter_stable_trees,
    vertex_weight,
)
from rubber_system.misc import config
from rubber_system.misc import logger
from rubber_system.misc.exceptions import BoundExceededError, ValidationError
from rubber_system.misc.utils import Timer
from rubber_system.model.gclass import ONE, ZERO, GClass

__all__ = [
    "DirectedMarkedTree",
    "OrderedPartition",
    "RamificationDatum",
    "admissible_partitions",
    "as_datum",
    "class_m0m",
    "class_mbar0",
    "count_linear_extensions",
    "euler_char",
    "euler_char_fast",
    "is_admissible",
    "linear_extensions",
    "linear_extensions_bruteforce",
    "partial_order",
    "stratum_class",
    "subtree_weight",
    "total_class",
    "x_directing",
]


@dataclass(frozen=True)
class RamificationDatum:
    """An integer vector of length n >= 3 with zero sum and no vanishing
    proper subset sum.

    Instances are created by :py:func:`rubber_system.api.chambers.validate`,
    the constructor itself does not check anything.
    """

    x: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.x)

    def __getitem__(self, label: int) -> int:
        """The entry x_label, labels are 1-based."""
        if label < 1:
            raise IndexError(label)
        return self.x[label - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.x)

    def __len__(self) -> int:
        return len(self.x)

    def weight(self, leaves: Iterable[int]) -> int:
        """Σ x_i over the given 1-based labels."""
        return sum(self.x[i - 1] for i in leaves)

    @cached_property
    def positive(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.x, start=1) if v > 0)

    @cached_property
    def negative(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.x, start=1) if v < 0)

    def to_dict(self) -> list[int]:
        return list(self.x)

    def __str__(self) -> str:
        return ",".join(map(str, self.x))


DatumLike = Union[RamificationDatum, Sequence[int], str]


def as_datum(x: DatumLike) -> RamificationDatum:
    if isinstance(x, RamificationDatum):
        return x
    from rubber_system.api.chambers import validate

    return validate(x)


def _check_length(tree: MarkedTree, datum: RamificationDatum) -> None:
    if tree.n != datum.n:
        raise ValidationError(
            f"a tree with {tree.n} leaves needs a datum of length {tree.n}, "
            f"got {datum.n}"
        )


def subtree_weight(
    tree: MarkedTree,
    x: DatumLike,
    edge: Edge,
    side: Union[str, int] = "far",
) -> int:
    """w(T_1) for one of the two components T_1 of T minus ``edge``.

    Parameters
    ----------
    tree: MarkedTree
        The stable tree.
    x: RamificationDatum
        The ramification datum.
    edge: tuple[int, int]
        An edge of the tree as listed in :py:attr:`MarkedTree.edges`.
    side: str | int, default: far
        ``far`` for the component not containing leaf 1, ``near`` for the
        other one, or a leaf label selecting the component containing it.
    """
    datum = as_datum(x)
    _check_length(tree, datum)
    if edge not in tree.edges:
        raise ValidationError(f"{edge} is not an edge of {tree.code}")
    far = tree.below(edge[1])
    if side == "far":
        leaves = far
    elif side == "near":
        leaves = frozenset(range(1, tree.n + 1)) - far
    elif isinstance(side, int) and 1 <= side <= tree.n:
        leaves = far if side in far else frozenset(range(1, tree.n + 1)) - far
    else:
        raise ValidationError(f"invalid side selector {side!r}")
    return datum.weight(leaves)


@dataclass(frozen=True)
class DirectedMarkedTree:
    """A stable tree together with an orientation of each of its edges."""

    tree: MarkedTree
    arcs: tuple[Edge, ...]

    @cached_property
    def successors(self) -> dict[int, list[int]]:
        result: dict[int, list[int]] = defaultdict(list)
        for tail, head in self.arcs:
            result[tail].append(head)
        return dict(result)

    def out_neighbours(self, vertex: int) -> list[int]:
        return self.successors.get(vertex, [])

    @cached_property
    def up_sets(self) -> dict[int, frozenset[int]]:
        """Every vertex to the set of vertices strictly above it."""
        result: dict[int, frozenset[int]] = {}

        def visit(vertex: int) -> frozenset[int]:
            if vertex not in result:
                above: set[int] = set()
                for head in self.out_neighbours(vertex):
                    above.add(head)
                    above.update(visit(head))
                result[vertex] = frozenset(above)
            return result[vertex]

        for vertex in self.tree.vertices:
            visit(vertex)
        return result

    def less(self, a: int, b: int) -> bool:
        """a <ₓ b."""
        return b in self.up_sets[a]

    def comparable(self, a: int, b: int) -> bool:
        return a == b or self.less(a, b) or self.less(b, a)

    def internal_relations(self) -> list[tuple[int, int]]:
        """Arcs between internal vertices, they generate ≤ₓ on I(T)."""
        n = self.tree.n
        return [(a, b) for a, b in self.arcs if a > n and b > n]


def x_directing(tree: MarkedTree, x: DatumLike) -> DirectedMarkedTree:
    """Orient every edge away from the component of positive weight."""
    datum = as_datum(x)
    _check_length(tree, datum)
    arcs: list[Edge] = []
    for u, v in tree.edges:
        # the far side is never of weight zero for a valid datum
        if datum.weight(tree.below(v)) < 0:
            arcs.append((u, v))
        else:
            arcs.append((v, u))
    return DirectedMarkedTree(tree, tuple(arcs))


def partial_order(directed: DirectedMarkedTree) -> dict[int, frozenset[int]]:
    """The order ≤ₓ as the map from each vertex to the vertices strictly above."""
    return directed.up_sets


@dataclass(frozen=True)
class OrderedPartition:
    """An ordered partition of V(T), first block L⁺, last block L⁻."""

    blocks: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def middle(self) -> tuple[frozenset[int], ...]:
        return self.blocks[1:-1]

    def to_dict(self) -> list[list[int]]:
        return [sorted(block) for block in self.blocks]


def _minimal(remaining: frozenset[int], relations: dict[int, set[int]]) -> list[int]:
    return sorted(v for v in remaining if not relations[v] & remaining)


def _subsets(items: list[int]) -> Iterator[frozenset[int]]:
    for size in range(1, len(items) + 1):
        for combination in itertools.combinations(items, size):
            yield frozenset(combination)


def admissible_partitions(tree: MarkedTree, x: DatumLike) -> list[OrderedPartition]:
    """All admissible ordered partitions P_x(T).

    The middle blocks are built left to right, each a nonempty set of
    currently minimal internal vertices. This yields antichains in an order
    compatible with ≤ₓ; the sandwich condition holds automatically since
    every internal vertex lies above a positive and below a negative leaf.
    """
    datum = as_datum(x)
    _check_length(tree, datum)
    directed = x_directing(tree, datum)
    internal = frozenset(tree.internal_vertices)
    below: dict[int, set[int]] = {v: set() for v in internal}
    for a, b in directed.internal_relations():
        below[b].add(a)
    first = datum.positive
    last = datum.negative
    result: list[OrderedPartition] = []

    def extend(prefix: tuple[frozenset[int], ...], remaining: frozenset[int]) -> None:
        if not remaining:
            result.append(OrderedPartition((first,) + prefix + (last,)))
            return
        for block in _subsets(_minimal(remaining, below)):
            extend(prefix + (block,), remaining - block)

    extend((), internal)
    return result


def is_admissible(
    tree: MarkedTree, directed: DirectedMarkedTree, partition: OrderedPartition
) -> bool:
    """Check the defining conditions of an admissible ordered partition."""
    blocks = partition.blocks
    if len(blocks) < 3 or any(not block for block in blocks):
        return False
    seen: set[int] = set()
    index: dict[int, int] = {}
    for i, block in enumerate(blocks):
        if block & seen:
            return False
        seen.update(block)
        for v in block:
            index[v] = i
    if seen != set(tree.vertices):
        return False
    leaves = frozenset(range(1, tree.n + 1))
    first = frozenset(
        v for v in leaves if not any(directed.less(u, v) for u in tree.vertices)
    )
    last = frozenset(v for v in leaves if not directed.up_sets[v])
    if blocks[0] != first or blocks[-1] != last:
        return False
    # antichains
    for block in blocks:
        for a, b in itertools.combinations(block, 2):
            if directed.comparable(a, b):
                return False
    # compatible with the order
    for a, b in itertools.permutations(seen, 2):
        if directed.less(a, b) and index[a] > index[b]:
            return False
    # every middle element sits strictly between earlier and later blocks
    for i, block in enumerate(blocks[1:-1], start=1):
        for a in block:
            has_lower = any(directed.less(c, a) and index[c] < i for c in seen)
            has_upper = any(directed.less(a, b) and index[b] > i for b in seen)
            if not (has_lower and has_upper):
                return False
    return True


@toolz.memoize
def class_m0m(m: int) -> GClass:
    """[M_{0,m}] = Π_{i=2}^{m-2} (L - i)."""
    if m < 3:
        raise ValidationError(f"M_0,{m} is not a stable moduli space")
    return GClass.from_roots(range(2, m - 1))


def _vertex_class(tree: MarkedTree) -> GClass:
    product = ONE
    for valence in tree.internal_valences():
        product = product * class_m0m(valence)
    return product


def stratum_class(tree: MarkedTree, x: DatumLike) -> GClass:
    """[M_x(T)] = Π_v [M_{0,val v}] · Σ_P (L - 1)^{|I(T)| - ℓ(P) + 2}."""
    datum = as_datum(x)
    internal_count = tree.internal_count
    counts: dict[int, int] = defaultdict(int)
    for partition in admissible_partitions(tree, datum):
        counts[internal_count - len(partition) + 2] += 1
    torus = GClass([-1, 1])
    total = ZERO
    for exponent, count in counts.items():
        total = total + count * torus**exponent
    return _vertex_class(tree) * total


def class_mbar0(n: int) -> GClass:
    """[M̄_{0,n}] as the sum over Γ_{0,n} of the vertex class products.

    [M̄_{0,2}] is set to 1, the value the split product identity needs.
    """
    if n == 2:
        return ONE
    total = ZERO
    for tree in iter_stable_trees(n):
        total = total + _vertex_class(tree)
    return total


def _map(function, items: list) -> list:  # type: ignore[no-untyped-def]
    workers = config.get(config.WORKERS)
    if workers > 1 and len(items) > 1:
        with ThreadPool(workers) as pool:
            return pool.map(function, items)
    return [function(item) for item in items]


def total_class(x: DatumLike) -> GClass:
    """[M̄(x)] = Σ_{T ∈ Γ_{0,n}} [M_x(T)]."""
    datum = as_datum(x)
    with Timer(f"class of M̄({datum})"):
        trees = list(iter_stable_trees(datum.n))
        classes = _map(lambda tree: stratum_class(tree, datum), trees)
        total = sum(classes, ZERO)
    logger.debug("summed the strata of %i trees", len(trees))
    return total


def count_linear_extensions(
    elements: Sequence[Hashable], relations: Iterable[tuple[Hashable, Hashable]]
) -> int:
    """Number of linear extensions of the order generated by ``relations``.

    Dynamic programming over down-sets encoded as bit masks; a pair
    ``(a, b)`` in ``relations`` means a < b.
    """
    size = len(elements)
    bound = config.get(config.MAX_LINEAR_EXTENSION_SIZE)
    if size > bound:
        raise BoundExceededError("poset size", size, bound)
    position = {element: i for i, element in enumerate(elements)}
    required = [0] * size
    for a, b in relations:
        required[position[b]] |= 1 << position[a]
    layer: dict[int, int] = {0: 1}
    for _ in range(size):
        following: dict[int, int] = defaultdict(int)
        for mask, count in layer.items():
            for i in range(size):
                bit = 1 << i
                if not mask & bit and required[i] & mask == required[i]:
                    following[mask | bit] += count
        layer = following
    return layer.get((1 << size) - 1, 0)


def linear_extensions(directed: DirectedMarkedTree) -> int:
    """Total orders of I(T) refining ≤ₓ."""
    return count_linear_extensions(
        directed.tree.internal_vertices, directed.internal_relations()
    )


def linear_extensions_bruteforce(directed: DirectedMarkedTree) -> int:
    """Count the permutations of I(T) compatible with ≤ₓ."""
    internal = directed.tree.internal_vertices
    if len(internal) > 8:
        raise BoundExceededError("poset size for brute force", len(internal), 8)
    count = 0
    for ordering in itertools.permutations(internal):
        rank = {v: i for i, v in enumerate(ordering)}
        if all(rank[a] < rank[b] for a, b in directed.internal_relations()):
            count += 1
    return count


def euler_char_fast(x: DatumLike) -> int:
    """χ(M̄(x)) as Σ_T Π_v A_val(v) times the number of linear extensions."""
    datum = as_datum(x)
    total = 0
    for tree in iter_stable_trees(datum.n):
        product = 1
        for valence in tree.internal_valences():
            product *= vertex_weight(valence)
        total += product * linear_extensions(x_directing(tree, datum))
    return total


def euler_char(x: DatumLike, method: Optional[str] = None) -> int:
    """χ(M̄(x)), the class evaluated at L = 1.

    Parameters
    ----------
    x: RamificationDatum
        The ramification datum.
    method: str, default: strata
        ``strata`` evaluates :py:func:`total_class`, ``linear-extensions``
        uses :py:func:`euler_char_fast`.
    """
    method = method or "strata"
    if method == "strata":
        return total_class(x).evaluate(1)
    if method == "linear-extensions":
        return euler_char_fast(x)
    raise ValidationError(f"unknown method {method!r}")
