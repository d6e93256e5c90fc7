"""
Tooling for the resonance arrangement: validation of ramification data,
chamber signatures, sampling of data on either side of a wall and the
wall-crossing differences of the classes [M̄(x)].
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Optional, Sequence, Union

import toolz

from rubber_system.api.recursion import EulerTable, chi_mbar0_series, chi_table
from rubber_system.api.strata import (
    DatumLike,
    RamificationDatum,
    as_datum,
    class_mbar0,
    class_m0m,
    stratum_class,
    total_class,
)
from rubber_system.api.trees import iter_stable_trees
from rubber_system.misc import config
from rubber_system.misc import logger
from rubber_system.misc.exceptions import (
    BoundExceededError,
    DimensionMismatchError,
    NonZeroTotalError,
    RubberError,
    ValidationError,
    VanishingSubsetError,
    ZeroEntryError,
)
from rubber_system.misc.utils import parse_subset, parse_vector
from rubber_system.model.gclass import ONE, ZERO, GClass

__all__ = [
    "ChamberSignature",
    "WallCrossing",
    "canonical_subsets",
    "differing_walls",
    "random_datum",
    "ratio_trend",
    "same_chamber",
    "sample_across_wall",
    "sample_same_chamber",
    "signature",
    "split_product_check",
    "validate",
    "wall_spec",
    "wallcross",
]

Subset = tuple[int, ...]


def _check_signature_bound(n: int) -> None:
    bound = config.get(config.MAX_SIGNATURE_N)
    if n > bound:
        raise BoundExceededError("datum length for chamber signatures", n, bound)


@toolz.memoize
def canonical_subsets(n: int) -> tuple[Subset, ...]:
    """The proper subsets of 1..n containing 1, by size, then lexicographically."""
    rest = range(2, n + 1)
    return tuple(
        (1,) + others
        for size in range(0, n - 1)
        for others in itertools.combinations(rest, size)
    )


def wall_spec(subset: Union[str, Iterable[int]], n: int) -> Subset:
    """Canonical form of the wall W_S: the side of the split containing 1."""
    side = parse_subset(subset, n)
    if not side or len(side) == n:
        raise ValidationError("a wall needs a proper nonempty subset")
    if 1 not in side:
        side = frozenset(range(1, n + 1)) - side
    return tuple(sorted(side))


def validate(x: Union[str, Sequence[int], RamificationDatum]) -> RamificationDatum:
    """Check that x lies in the complement of the resonance arrangement.

    Raises
    ------
    ZeroEntryError: some entry is zero
    NonZeroTotalError: the entries do not sum to zero
    VanishingSubsetError: a proper subset sums to zero, the witness is the
        first such subset containing 1 in canonical order
    """
    values = parse_vector(x.x if isinstance(x, RamificationDatum) else x)
    n = len(values)
    if n < 3:
        raise ValidationError(f"ramification data need at least 3 entries, got {n}")
    for index, value in enumerate(values, start=1):
        if value == 0:
            raise ZeroEntryError(index)
    total = sum(values)
    if total != 0:
        raise NonZeroTotalError(total)
    _check_signature_bound(n)
    for subset in canonical_subsets(n):
        if sum(values[i - 1] for i in subset) == 0:
            raise VanishingSubsetError(subset)
    return RamificationDatum(values)


@dataclass(frozen=True)
class ChamberSignature:
    """Signs of Σ_{i ∈ I} x_i over the canonical subsets I."""

    n: int
    signs: tuple[int, ...]

    @property
    def subsets(self) -> tuple[Subset, ...]:
        return canonical_subsets(self.n)

    def sign(self, subset: Iterable[int]) -> int:
        """The sign of any proper nonempty subset, complements flip the sign."""
        side = frozenset(subset)
        if 1 in side:
            return self.signs[self.subsets.index(tuple(sorted(side)))]
        complement = frozenset(range(1, self.n + 1)) - side
        return -self.signs[self.subsets.index(tuple(sorted(complement)))]

    def to_dict(self) -> list[dict[str, Any]]:
        return [
            {"subset": list(subset), "sign": "+" if sign > 0 else "-"}
            for subset, sign in zip(self.subsets, self.signs)
        ]


def _signs(datum: RamificationDatum) -> Iterator[int]:
    for subset in canonical_subsets(datum.n):
        yield 1 if datum.weight(subset) > 0 else -1


def signature(x: DatumLike) -> ChamberSignature:
    datum = as_datum(x)
    _check_signature_bound(datum.n)
    return ChamberSignature(datum.n, tuple(_signs(datum)))


def same_chamber(x: DatumLike, y: DatumLike) -> bool:
    """Whether x and y lie in the same resonance chamber.

    The signs are compared subset by subset, stopping at the first
    difference.
    """
    first, second = as_datum(x), as_datum(y)
    if first.n != second.n:
        raise DimensionMismatchError(
            f"cannot compare data of length {first.n} and {second.n}"
        )
    _check_signature_bound(first.n)
    return all(a == b for a, b in zip(_signs(first), _signs(second)))


def differing_walls(x: DatumLike, y: DatumLike) -> list[Subset]:
    """The canonical subsets on which x and y have opposite signs."""
    first, second = as_datum(x), as_datum(y)
    if first.n != second.n:
        raise DimensionMismatchError(
            f"cannot compare data of length {first.n} and {second.n}"
        )
    _check_signature_bound(first.n)
    return [
        subset
        for subset, a, b in zip(
            canonical_subsets(first.n), _signs(first), _signs(second)
        )
        if a != b
    ]


def _primitive(values: Sequence[int]) -> tuple[int, ...]:
    divisor = math.gcd(*values)
    return tuple(v // divisor for v in values)


def random_datum(
    n: int, rng: Optional[random.Random] = None, spread: int = 10
) -> RamificationDatum:
    """A random valid datum with the first n - 1 entries in [-spread, spread]."""
    rng = rng or random.Random(config.get(config.SEED))
    attempts = 10 * config.get(config.WALL_SEARCH_BUDGET)
    for _ in range(attempts):
        values = [rng.choice([-1, 1]) * rng.randint(1, spread) for _ in range(n - 1)]
        values.append(-sum(values))
        try:
            return validate(values)
        except ValidationError:
            continue
    raise RubberError(f"no valid datum of length {n} found in {attempts} attempts")


def sample_same_chamber(
    base: DatumLike, count: int = 3, rng: Optional[random.Random] = None
) -> list[RamificationDatum]:
    """Distinct representatives of the chamber of ``base``.

    The candidates are c·base + δ with c >= 2n and δ a zero sum vector with
    entries in {-1, 0, 1}; such a perturbation cannot change any sign. Data
    proportional to base or to an earlier representative are skipped.
    """
    datum = as_datum(base)
    rng = rng or random.Random(config.get(config.SEED))
    n = datum.n
    seen = {_primitive(datum.x)}
    result: list[RamificationDatum] = []
    for attempt in range(config.get(config.WALL_SEARCH_BUDGET)):
        if len(result) >= count:
            break
        scale = 2 * n + attempt
        delta = [rng.randint(-1, 1) for _ in range(n - 1)]
        delta.append(-sum(delta))
        values = [scale * v + d for v, d in zip(datum.x, delta)]
        key = _primitive(values)
        if key in seen:
            continue
        candidate = validate(values)
        if not same_chamber(candidate, datum):
            raise RubberError(f"{candidate} left the chamber of {datum}")
        seen.add(key)
        result.append(candidate)
    if len(result) < count:
        logger.warning(
            "found only %i of %i representatives of the chamber of %s",
            len(result),
            count,
            datum,
        )
    return result


def _integral(point: Sequence[Fraction]) -> list[int]:
    denominator = math.lcm(*(v.denominator for v in point))
    values = [int(v * denominator) for v in point]
    return list(_primitive(values))


def sample_across_wall(
    wall: Union[str, Iterable[int]],
    base: DatumLike,
    rng: Optional[random.Random] = None,
) -> Optional[tuple[RamificationDatum, RamificationDatum]]:
    """Two data separated by the wall W_S and by no other wall.

    A generic point P near the ray of base is moved along the normal
    direction of W_S within the zero sum hyperplane. If W_S is the only
    wall crossed at its crossing time, the midpoints to the neighbouring
    crossing times give the pair. Returns None, with a warning, if the
    search budget is exhausted.
    """
    datum = as_datum(base)
    n = datum.n
    subset = wall_spec(wall, n)
    rng = rng or random.Random(config.get(config.SEED))
    size = len(subset)
    normal = [n - size if i in subset else -size for i in range(1, n + 1)]
    walls = canonical_subsets(n)
    for attempt in range(config.get(config.WALL_SEARCH_BUDGET)):
        scale = 2 * n + attempt
        delta = [rng.randint(-n, n) for _ in range(n - 1)]
        delta.append(-sum(delta))
        point = [Fraction(scale * v + d) for v, d in zip(datum.x, delta)]
        side = sum(point[i - 1] for i in subset)
        if side == 0:
            continue
        direction = [-v if side > 0 else v for v in normal]
        crossings: dict[Fraction, list[Subset]] = {}
        for other in walls:
            speed = sum(direction[i - 1] for i in other)
            if speed == 0:
                continue
            time = -sum(point[i - 1] for i in other) / speed
            if time > 0:
                crossings.setdefault(time, []).append(other)
        times = sorted(crossings)
        crossing = next(t for t in times if subset in crossings[t])
        if len(crossings[crossing]) != 1:
            continue
        index = times.index(crossing)
        before = times[index - 1] if index > 0 else Fraction(0)
        after = times[index + 1] if index + 1 < len(times) else crossing + 1
        pair = []
        for time in ((before + crossing) / 2, (crossing + after) / 2):
            pair.append(
                _integral([p + time * d for p, d in zip(point, direction)])
            )
        try:
            x, y = validate(pair[0]), validate(pair[1])
        except ValidationError:
            continue
        if differing_walls(x, y) == [subset]:
            logger.debug("found %s and %s across the wall %s", x, y, subset)
            return x, y
    logger.warning(
        "no pair across the wall %s near %s within %i attempts",
        list(subset),
        datum,
        config.get(config.WALL_SEARCH_BUDGET),
    )
    return None


@dataclass
class WallCrossing:
    """The difference [M̄(x)] - [M̄(y)] with some bookkeeping."""

    x: RamificationDatum
    y: RamificationDatum
    difference: GClass
    walls: list[Subset] = field(default_factory=list)
    contributing_trees: int = 0

    @property
    def euler(self) -> int:
        """The difference evaluated at L = 1."""
        return self.difference.evaluate(1)

    def to_dict(self) -> dict[str, Any]:
        return {
            "x": list(self.x.x),
            "y": list(self.y.x),
            "difference": self.difference.to_list(),
            "walls": [list(w) for w in self.walls],
            "contributing_trees": self.contributing_trees,
            "euler": self.euler,
        }


def wallcross(x: DatumLike, y: DatumLike, cross_check: bool = True) -> WallCrossing:
    """[M̄(x)] - [M̄(y)] summed over the trees having a split along a
    differing wall; the other strata agree for x and y.

    With ``cross_check`` the result is compared against the difference of
    the full sums.
    """
    first, second = as_datum(x), as_datum(y)
    walls = differing_walls(first, second)
    difference = ZERO
    contributing = 0
    if walls:
        for tree in iter_stable_trees(first.n):
            if any(tree.has_split(wall) for wall in walls):
                contributing += 1
                difference = difference + (
                    stratum_class(tree, first) - stratum_class(tree, second)
                )
    if cross_check:
        full = total_class(first) - total_class(second)
        if full != difference:
            raise RubberError(
                f"restricted difference {difference} disagrees with {full}"
            )
    logger.debug("%i trees contribute to the wall crossing", contributing)
    return WallCrossing(first, second, difference, walls, contributing)


def split_product_check(n: int, wall: Union[str, Iterable[int]]) -> bool:
    """Σ over trees with an (S, S^c)-split of Π [M_{0,val}] equals
    [M̄_{0,|S|+1}]·[M̄_{0,|S^c|+1}]."""
    subset = wall_spec(wall, n)
    lhs = ZERO
    for tree in iter_stable_trees(n):
        if tree.has_split(subset):
            product = ONE
            for valence in tree.internal_valences():
                product = product * class_m0m(valence)
            lhs = lhs + product
    rhs = class_mbar0(len(subset) + 1) * class_mbar0(n - len(subset) + 1)
    return lhs == rhs


def ratio_trend(
    n_max: int, order: Optional[int] = None, table: Optional[EulerTable] = None
) -> list[Fraction]:
    """χ(M̄_{0,n+1}) / χ(M̄_n) for n = 2..n_max."""
    if table is None or table.max_n < n_max:
        table = chi_table(n_max, order)
    totals = table.totals()
    mbar0 = chi_mbar0_series(n_max, table.order)
    return [Fraction(mbar0[n], totals[n]) for n in range(2, n_max + 1)]
