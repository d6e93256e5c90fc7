"""
Brute-force computations that cross-validate the fast paths.

Nothing in here is meant to be fast. The combinatorial types are built
directly from level assignments and the balancing condition and never use
the partition enumerator of :py:mod:`rubber_system.api.strata`.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from rubber_system.api.recursion import nu1_derivative
from rubber_system.api.series import Scalar, TruncatedSeries, add, mul, scale
from rubber_system.api.strata import (
    DatumLike,
    RamificationDatum,
    as_datum,
    class_m0m,
    count_linear_extensions,
)
from rubber_system.api.trees import (
    Edge,
    MarkedTree,
    RibbonRootedTree,
    decomposition_type,
    enumerate_rrt,
    stats,
)
from rubber_system.misc import logger
from rubber_system.misc.exceptions import BoundExceededError, ValidationError
from rubber_system.model.gclass import ONE, ZERO, GClass

__all__ = [
    "CombinatorialType",
    "cake_check",
    "class_from_types",
    "enumerate_combinatorial_types",
    "local_calc_check",
    "naive_compose",
    "rrt_nu",
    "set_partitions_count",
    "type_class",
    "weight_function",
]


@dataclass
class CombinatorialType:
    """The dual graph of a rubber map: a subdivision of a stable tree mapping
    to a path with r internal vertices.

    ``levels`` maps the vertices of the source to 0..r+1, ``weights`` maps
    the source edges to their positive ramification orders. Vertices of the
    stable tree keep their ids, bivalent vertices get fresh ones.
    """

    tree: MarkedTree
    x: RamificationDatum
    target_length: int
    edges: list[Edge]
    levels: dict[int, int]
    weights: dict[Edge, int]

    @property
    def bivalent(self) -> list[int]:
        return sorted(v for v in self.levels if v not in set(self.tree.vertices))

    @property
    def leaf_label(self) -> dict[int, int]:
        return {i: i for i in range(1, self.tree.n + 1)}

    def preimage_counts(self) -> dict[int, int]:
        """Number of vertices of the stable tree on each target vertex 1..r."""
        counts: dict[int, int] = defaultdict(int)
        for v in self.tree.internal_vertices:
            counts[self.levels[v]] += 1
        return dict(counts)


def weight_function(
    tree: MarkedTree, levels: dict[int, int], x: DatumLike
) -> Optional[dict[Edge, int]]:
    """The unique balanced weight function for a level assignment.

    Parameters
    ----------
    tree: MarkedTree
        The stable tree.
    levels: dict[int, int]
        Level of every vertex of the tree, positive leaves on 0, negative
        leaves on r + 1.
    x: RamificationDatum
        The datum fixing the weights |x_i| of the leaf edges.

    Returns
    -------
    dict[Edge, int] | None: weights of the edges of the tree, None if some
    weight is not positive or adjacent vertices share a level
    """
    datum = as_datum(x)
    weights: dict[Edge, int] = {}
    for vertex in reversed(tree.internal_vertices):
        lower = higher = 0
        for child in tree.children(vertex):
            if child <= tree.n:
                weights[(vertex, child)] = abs(datum[child])
            weight = weights[(vertex, child)]
            if levels[child] < levels[vertex]:
                lower += weight
            elif levels[child] > levels[vertex]:
                higher += weight
            else:
                return None
        parent = tree.parent[vertex]
        if levels[parent] == levels[vertex]:
            return None
        weight = higher - lower if levels[parent] < levels[vertex] else lower - higher
        if weight <= 0:
            return None
        weights[(parent, vertex)] = weight
    if weights[(1, tree.base)] != abs(datum[1]):
        return None
    return weights


def _subdivide(
    tree: MarkedTree,
    datum: RamificationDatum,
    levels: dict[int, int],
    weights: dict[Edge, int],
    r: int,
) -> CombinatorialType:
    fresh = itertools.count(max(tree.vertices) + 1)
    edges: list[Edge] = []
    all_levels = dict(levels)
    all_weights: dict[Edge, int] = {}
    for u, v in tree.edges:
        step = 1 if levels[v] > levels[u] else -1
        previous = u
        for level in range(levels[u] + step, levels[v], step):
            middle = next(fresh)
            all_levels[middle] = level
            edges.append((previous, middle))
            all_weights[(previous, middle)] = weights[(u, v)]
            previous = middle
        edges.append((previous, v))
        all_weights[(previous, v)] = weights[(u, v)]
    return CombinatorialType(tree, datum, r, edges, all_levels, all_weights)


def enumerate_combinatorial_types(
    tree: MarkedTree, x: DatumLike
) -> list[CombinatorialType]:
    """All combinatorial types whose source stabilizes to ``tree``.

    Every surjection of the internal vertices onto 1..r (r <= |I(T)|) is
    tried; edges spanning several levels are subdivided and the assignment
    is kept if the balanced weight function is positive.
    """
    datum = as_datum(x)
    internal = tree.internal_vertices
    if len(internal) > 7:
        raise BoundExceededError("internal vertices for the oracle", len(internal), 7)
    result: list[CombinatorialType] = []
    for r in range(1, len(internal) + 1):
        for assignment in itertools.product(range(1, r + 1), repeat=len(internal)):
            if len(set(assignment)) != r:
                continue
            levels = {i: (0 if datum[i] > 0 else r + 1) for i in range(1, tree.n + 1)}
            levels.update(zip(internal, assignment))
            weights = weight_function(tree, levels, datum)
            if weights is not None:
                result.append(_subdivide(tree, datum, levels, weights, r))
    logger.debug("%i combinatorial types over %s", len(result), tree.code)
    return result


def local_calc_check(ct: CombinatorialType) -> bool:
    """Compare w(T_1) with the left minus right weights at v inside T_1.

    T_1 is the component containing v after cutting an internal edge at v.
    """
    n = ct.tree.n
    neighbours: dict[int, list[int]] = defaultdict(list)
    weight: dict[frozenset[int], int] = {}
    for (u, v) in ct.edges:
        neighbours[u].append(v)
        neighbours[v].append(u)
        weight[frozenset((u, v))] = ct.weights[(u, v)]
    for vertex in neighbours:
        if vertex <= n:
            continue
        for cut in neighbours[vertex]:
            if cut <= n:
                continue
            component = {vertex}
            stack = [vertex]
            while stack:
                current = stack.pop()
                for other in neighbours[current]:
                    if other in component or (current == vertex and other == cut):
                        continue
                    component.add(other)
                    stack.append(other)
            leaf_sum = ct.x.weight(v for v in component if v <= n)
            local = 0
            for other in neighbours[vertex]:
                if other == cut:
                    continue
                w = weight[frozenset((vertex, other))]
                local += w if ct.levels[other] < ct.levels[vertex] else -w
            if leaf_sum != local:
                return False
    return True


def type_class(ct: CombinatorialType) -> GClass:
    """Class of the stratum of one combinatorial type, bivalent vertices
    contributing trivially: Π_v [M_{0,val v}] · (L-1)^{Σ (preimages - 1)}."""
    product = ONE
    for valence in ct.tree.internal_valences():
        product = product * class_m0m(valence)
    exponent = sum(count - 1 for count in ct.preimage_counts().values())
    return product * GClass([-1, 1]) ** exponent


def class_from_types(tree: MarkedTree, x: DatumLike) -> GClass:
    return sum(
        (type_class(ct) for ct in enumerate_combinatorial_types(tree, x)), ZERO
    )


def _o(tree: RibbonRootedTree) -> int:
    elements, relations = tree.relations()
    return count_linear_extensions(elements, relations)


def rrt_nu(m: int, order: int) -> TruncatedSeries:
    """ν_m as Σ_{T ∈ RRT(m)} a_T o_T t^{N_T}."""
    coeffs = [Fraction(0)] * (order + 1)
    for tree in enumerate_rrt(m, order):
        weight, leaves = stats(tree)
        coeffs[leaves] += weight * _o(tree)
    return TruncatedSeries(coeffs, order)


def cake_check(m: int, order: int) -> bool:
    """Regroup RRT(m) by decomposition type and compare with :py:func:`rrt_nu`.

    The right hand side is

        Σ_j ν_1^{(j)} / j! · Σ_λ (m-1)!/Π(i!)^{λ_i}
            · Σ_{(T_1..T_j)} Π a_{T_i} o_{T_i} t^{N_{T_i}}

    where the inner sum runs over the distinct ordered tuples of cut off
    subtrees that occur.
    """
    if m < 2:
        raise ValidationError("the decomposition needs m >= 2")
    tuples: dict[tuple[int, tuple[int, ...]], set[tuple]] = defaultdict(set)
    for tree in enumerate_rrt(m, order):
        record, subtrees, _ = decomposition_type(tree)
        tuples[(record.j, record.multiplicities)].add(
            tuple(subtree.shape for subtree in subtrees)
        )
    total = TruncatedSeries.zero(order)
    for (j, multiplicities), members in sorted(tuples.items()):
        inner = [Fraction(0)] * (order + 1)
        for shapes in members:
            product = Fraction(1)
            leaves = 0
            for shape in shapes:
                subtree = RibbonRootedTree(shape)
                weight, count = stats(subtree)
                product *= weight * _o(subtree)
                leaves += count
            if leaves <= order:
                inner[leaves] += product
        factor = Fraction(math.factorial(m - 1), math.factorial(j))
        for size, multiplicity in enumerate(multiplicities, start=1):
            factor /= math.factorial(size) ** multiplicity
        term = mul(nu1_derivative(j, order), TruncatedSeries(inner, order))
        total = add(total, scale(term, factor))
    expected = rrt_nu(m, order)
    if total != expected:
        logger.debug("cake check failed for m = %i: %s != %s", m, total, expected)
    return total == expected


def set_partitions_count(m: int, j: int) -> int:
    """Number of partitions of an m-set into j blocks, by listing them."""
    if m > 10:
        raise BoundExceededError("set size for brute force", m, 10)
    count = 0

    def grow(size: int, blocks: int) -> None:
        nonlocal count
        if size == m:
            count += blocks == j
            return
        for block in range(blocks + 1):
            grow(size + 1, max(blocks, block + 1))

    grow(0, 0)
    return count


def naive_compose(
    g: Sequence[Scalar],
    f: Union[TruncatedSeries, Sequence[Scalar]],
    order: Optional[int] = None,
) -> TruncatedSeries:
    """g(f) by substituting and expanding with Horner's rule."""
    if not isinstance(f, TruncatedSeries):
        f = TruncatedSeries(f, order)
    result = TruncatedSeries.zero(f.order)
    for coeff in reversed(list(g)):
        result = add(mul(result, f), TruncatedSeries((coeff,), f.order))
    return result
