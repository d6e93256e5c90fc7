"""
Verification suites: the structural identities and the equivalences between
the fast paths and the brute-force oracles, as executable checks.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional, Union

from rubber_system.api import chambers, oracle, recursion, series, strata, trees
from rubber_system.misc import config
from rubber_system.misc import logger
from rubber_system.misc.exceptions import ValidationError
from rubber_system.misc.utils import Timer

__all__ = ["Check", "SUITES", "run_suites"]

PUBLISHED_VALUES: dict[int, tuple[int, int]] = {
    2: (1, 1),
    3: (2, 2),
    4: (10, 7),
    5: (84, 34),
    6: (1108, 213),
    7: (20824, 1630),
    8: (530528, 14747),
    9: (17578464, 153946),
    10: (734772384, 1821473),
    11: (37814132256, 24087590),
    12: (2349344349504, 352080111),
    13: (173367352211520, 5636451794),
    14: (14989230432337536, 98081813581),
    15: (1500796146336385152, 1843315388078),
    16: (172277450643084049920, 37209072076483),
    17: (22474724472542045216256, 802906142007946),
    18: (3306538057482623252067840, 18443166021077145),
    19: (544879611875655894561850368, 449326835001457846),
}
"""Published values (χ(M̄_n), χ(M̄_{0,n+1})) used as regression data."""


class Check(NamedTuple):
    suite: str
    check: str
    passed: bool
    detail: str = ""


CheckBody = Callable[[], Union[bool, tuple[bool, str]]]


def _run(suite: str, name: str, body: CheckBody) -> Check:
    try:
        with Timer(f"{suite}/{name}"):
            outcome = body()
    except Exception as error:  # a crashing check is a failing check
        logger.debug("%s/%s raised %r", suite, name, error)
        return Check(suite, name, False, f"{type(error).__name__}: {error}")
    if isinstance(outcome, tuple):
        return Check(suite, name, bool(outcome[0]), outcome[1])
    return Check(suite, name, bool(outcome))


def _random_series(rng: random.Random, order: int) -> series.TruncatedSeries:
    return series.TruncatedSeries(
        [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(order + 1)],
        order,
    )


def _series_suite(max_n: int, rng: random.Random) -> list[Check]:
    def ring_axioms() -> bool:
        for order in range(0, 8):
            a, b, c = (_random_series(rng, order) for _ in range(3))
            if (a + b) + c != a + (b + c) or a * b != b * a:
                return False
            if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
                return False
        return True

    def stirling() -> bool:
        return all(
            series.bell_scalar(m, j, [1] * m) == oracle.set_partitions_count(m, j)
            for m in range(1, 9)
            for j in range(1, m + 1)
        )

    def compose_vs_substitution() -> bool:
        for order in range(1, 11):
            g = [rng.randint(-5, 5) for _ in range(7)]
            f = [0] + [rng.randint(-5, 5) for _ in range(6)]
            inner = series.TruncatedSeries(f, order)
            if series.compose(g, inner) != oracle.naive_compose(g, inner):
                return False
        return True

    def exp_log() -> bool:
        order = 12
        one_plus_t = series.TruncatedSeries((1, 1), order)
        return series.exp(series.log1p(order)) == one_plus_t

    def nu1_derivatives() -> bool:
        order = 12
        return all(
            recursion.nu1_derivative(j, order)
            == series.nu1_derivative_closed_form(j, order)
            for j in range(0, 6)
        )

    return [
        _run("series", "ring axioms", ring_axioms),
        _run("series", "bell at ones is stirling", stirling),
        _run("series", "compose agrees with substitution", compose_vs_substitution),
        _run("series", "exp of log1p", exp_log),
        _run("series", "closed form derivatives of nu_1", nu1_derivatives),
    ]


def _recursion_suite(max_n: int, rng: random.Random) -> list[Check]:
    n_max = max(max_n, 10)

    def table_one() -> tuple[bool, str]:
        totals = recursion.chi_table(n_max).totals()
        wrong = [
            n
            for n in range(2, n_max + 1)
            if n in PUBLISHED_VALUES and totals[n] != PUBLISHED_VALUES[n][0]
        ]
        return not wrong, f"mismatch at n = {wrong}" if wrong else ""

    def first_row() -> bool:
        table = recursion.chi_table(n_max)
        return all(
            table[(n, 1)] == (-1) ** n * math.factorial(n - 2)
            for n in range(2, n_max + 1)
        )

    def pde() -> bool:
        return all(s.is_zero() for s in recursion.pde_residual(5, 10))

    def mbar0() -> tuple[bool, str]:
        fast = recursion.chi_mbar0_series(n_max)
        upper = min(max_n, config.get(config.MAX_TREE_N) - 1)
        wrong = [n for n in range(2, upper + 1) if recursion.chi_mbar0(n) != fast[n]]
        wrong += [
            n
            for n in range(2, n_max + 1)
            if n in PUBLISHED_VALUES and fast[n] != PUBLISHED_VALUES[n][1]
        ]
        return not wrong, f"mismatch at n = {wrong}" if wrong else ""

    return [
        _run("recursion", "published table values", table_one),
        _run("recursion", "k = 1 column", first_row),
        _run("recursion", "differential equation", pde),
        _run("recursion", "trees against rooted tree series", mbar0),
    ]


_TREE_COUNTS = {3: 1, 4: 4, 5: 26, 6: 236, 7: 2752, 8: 39208}


def _trees_suite(max_n: int, rng: random.Random) -> list[Check]:
    def counts() -> tuple[bool, str]:
        wrong = []
        for n in range(3, min(max_n, 8) + 1):
            found = trees.enumerate_stable_trees(n)
            codes = {tree.code for tree in found}
            if len(found) != _TREE_COUNTS[n] or len(codes) != len(found):
                wrong.append(n)
        return not wrong, f"wrong counts for n = {wrong}" if wrong else ""

    def bruteforce() -> bool:
        return all(
            trees.count_stable_trees_bruteforce(n) == _TREE_COUNTS[n]
            for n in range(3, min(max_n, 6) + 1)
        )

    def codes() -> bool:
        return all(
            trees.MarkedTree.from_code(tree.code) == tree
            and trees.stabilize(tree.adjacency, tree.leaf_label) == tree
            for n in range(3, min(max_n, 6) + 1)
            for tree in trees.enumerate_stable_trees(n)
        )

    def reassembly() -> bool:
        return all(
            trees.assemble(trees.decomposition_type(tree)) == tree
            for m in range(2, 5)
            for tree in trees.enumerate_rrt(m, 8)
        )

    return [
        _run("trees", "enumeration counts", counts),
        _run("trees", "brute force counts", bruteforce),
        _run("trees", "canonical codes", codes),
        _run("trees", "decomposition and reassembly", reassembly),
    ]


def _central(n: int) -> strata.RamificationDatum:
    return chambers.validate([n - 1] + [-1] * (n - 1))


def _sample_data(
    n: int, rng: random.Random, count: int
) -> list[strata.RamificationDatum]:
    data = [_central(n)]
    while len(data) < count:
        data.append(chambers.random_datum(n, rng))
    return data


def _strata_suite(max_n: int, rng: random.Random) -> list[Check]:
    upper = min(max_n, 6)

    def central() -> tuple[bool, str]:
        totals = recursion.chi_table(upper).totals()
        wrong = [
            n for n in range(2, upper + 1)
            if strata.euler_char(_central(n + 1)) != totals[n]
        ]
        return not wrong, f"mismatch at n = {wrong}" if wrong else ""

    def structure() -> bool:
        for n in range(3, min(max_n, 6) + 1):
            for datum in _sample_data(n, rng, 3):
                for tree in trees.iter_stable_trees(n):
                    directed = strata.x_directing(tree, datum)
                    size = tree.internal_count
                    for partition in strata.admissible_partitions(tree, datum):
                        exponent = size - len(partition) + 2
                        if not 0 <= exponent <= size - 1:
                            return False
                        if not strata.is_admissible(tree, directed, partition):
                            return False
        return True

    def extensions() -> bool:
        for n in range(3, min(max_n, 6) + 1):
            for datum in _sample_data(n, rng, 3):
                for tree in trees.iter_stable_trees(n):
                    directed = strata.x_directing(tree, datum)
                    fast = strata.linear_extensions(directed)
                    if fast != strata.linear_extensions_bruteforce(directed):
                        return False
        return True

    def euler_paths() -> bool:
        return all(
            strata.euler_char(datum) == strata.euler_char_fast(datum)
            for n in range(3, min(max_n, 6) + 1)
            for datum in _sample_data(n, rng, 3)
        )

    return [
        _run("strata", "central chamber against the table", central),
        _run("strata", "admissible partitions", structure),
        _run("strata", "linear extensions", extensions),
        _run("strata", "both euler characteristic paths", euler_paths),
    ]


def _chambers_suite(max_n: int, rng: random.Random) -> list[Check]:
    def chamber_invariance() -> tuple[bool, str]:
        for n in range(4, min(max_n, 6) + 1):
            seen = set()
            bases = []
            for datum in _sample_data(n, rng, 40):
                key = chambers.signature(datum).signs
                if key not in seen:
                    seen.add(key)
                    bases.append(datum)
                if len(bases) == 5:
                    break
            for base in bases:
                reference = strata.total_class(base)
                for other in chambers.sample_same_chamber(base, 3, rng):
                    if strata.total_class(other) != reference:
                        return False, f"classes differ for {base} and {other}"
                    for tree in trees.iter_stable_trees(n):
                        first = strata.x_directing(tree, base)
                        if first != strata.x_directing(tree, other):
                            return False, f"directings differ for {base} and {other}"
        return True, ""

    def equivalence() -> bool:
        data = _sample_data(5, rng, 6)
        for x in data:
            if not chambers.same_chamber(x, x):
                return False
            for y in data:
                if chambers.same_chamber(x, y) != chambers.same_chamber(y, x):
                    return False
        return True

    def wall_crossing() -> tuple[bool, str]:
        pairs = nonzero = 0
        for n in range(4, min(max_n, 5) + 1):
            base = _central(n)
            for wall in chambers.canonical_subsets(n)[1:4]:
                pair = chambers.sample_across_wall(wall, base, rng)
                if pair is None:
                    continue
                pairs += 1
                crossing = chambers.wallcross(*pair)
                if crossing.walls != [wall]:
                    return False, f"{pair} are not adjacent across {wall}"
                nonzero += not crossing.difference.is_zero()
        if not pairs:
            return False, "no pair across a wall was found"
        if not nonzero:
            return False, f"all {pairs} wall crossings have a zero difference"
        return True, f"{pairs} crossings, {nonzero} with a nonzero difference"

    def split_products() -> bool:
        return all(
            chambers.split_product_check(n, wall)
            for n in range(4, min(max_n, 6) + 1)
            for wall in chambers.canonical_subsets(n)
        )

    def ratios() -> tuple[bool, str]:
        trend = chambers.ratio_trend(19)
        decreasing = all(a > b for a, b in zip(trend[1:], trend[2:]))
        small = trend[-1] < Fraction(1, 10**9)
        return decreasing and small, f"last ratio {float(trend[-1]):.3e}"

    return [
        _run("chambers", "classes constant on chambers", chamber_invariance),
        _run("chambers", "same chamber is an equivalence", equivalence),
        _run("chambers", "restricted wall crossing", wall_crossing),
        _run("chambers", "split products", split_products),
        _run("chambers", "ratio trend", ratios),
    ]


def _oracle_suite(max_n: int, rng: random.Random) -> list[Check]:
    def bijection() -> tuple[bool, str]:
        for n in range(3, min(max_n, 6) + 1):
            for datum in _sample_data(n, rng, 4):
                for tree in trees.iter_stable_trees(n):
                    types = oracle.enumerate_combinatorial_types(tree, datum)
                    partitions = strata.admissible_partitions(tree, datum)
                    if len(types) != len(partitions):
                        return False, f"{tree.code} with {datum}"
        return True, ""

    def classes() -> bool:
        return all(
            oracle.class_from_types(tree, datum) == strata.stratum_class(tree, datum)
            for n in range(3, min(max_n, 5) + 1)
            for datum in _sample_data(n, rng, 3)
            for tree in trees.iter_stable_trees(n)
        )

    def local_calculation() -> bool:
        for n in range(3, min(max_n, 5) + 1):
            for datum in _sample_data(n, rng, 3):
                for tree in trees.iter_stable_trees(n):
                    for ct in oracle.enumerate_combinatorial_types(tree, datum):
                        if not oracle.local_calc_check(ct):
                            return False
                        if trees.stabilize(ct.edges, ct.leaf_label) != tree:
                            return False
        return True

    def ribbon_sums() -> bool:
        family = recursion.NuFamily.build(4, 10)
        return all(oracle.rrt_nu(m, 10) == family.nu(m) for m in range(1, 5))

    def cake() -> bool:
        return oracle.cake_check(2, 8) and oracle.cake_check(3, 8)

    return [
        _run("oracle", "types biject with partitions", bijection),
        _run("oracle", "classes from types", classes),
        _run("oracle", "local calculation and stabilization", local_calculation),
        _run("oracle", "ribbon tree sums", ribbon_sums),
        _run("oracle", "decomposition identity", cake),
    ]


SUITES: dict[str, Callable[[int, random.Random], list[Check]]] = {
    "series": _series_suite,
    "recursion": _recursion_suite,
    "trees": _trees_suite,
    "strata": _strata_suite,
    "chambers": _chambers_suite,
    "oracle": _oracle_suite,
}


def run_suites(
    suite: Union[str, Iterable[str]] = "all",
    max_n: int = 6,
    seed: Optional[int] = None,
) -> list[Check]:
    """Run one, several or all verification suites.

    Parameters
    ----------
    suite: str | Iterable[str], default: all
        Name of a suite, a list of names or ``all``.
    max_n: int, default: 6
        Largest datum length (and tree size) the suites go up to.
    seed: int, default: None
        Seed of the sampled data, defaults to the configured seed.
    """
    if suite == "all":
        names = list(SUITES)
    else:
        names = [suite] if isinstance(suite, str) else list(suite)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise ValidationError(
            f"unknown suite(s) {', '.join(unknown)}, "
            f"choose from all, {', '.join(SUITES)}"
        )
    if max_n < 3:
        raise ValidationError("the suites need max_n >= 3")
    rng = random.Random(config.get(config.SEED) if seed is None else seed)
    results: list[Check] = []
    for name in names:
        logger.debug("running the %s suite", name)
        results.extend(SUITES[name](max_n, rng))
    return results
