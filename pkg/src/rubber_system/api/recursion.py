"""
Euler characteristics of the rubber moduli spaces from the generating
function recursion.

With ν_k(t) = Σ_n χ(M̄_n(k)) t^n / n! the family satisfies

    ν_1 = (1+t) log(1+t) - t,
    ν_m = Σ_{j=1}^{m-1} ν_1^{(j)} · B_{m-1,j}(ν_1, ..., ν_{m-j}),

and χ(M̄_n) is the sum over k of χ(M̄_n(k)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import toolz

from rubber_system.api.series import (
    TruncatedSeries,
    add,
    bell,
    compose,
    derivative,
    log1p,
    mul,
    scale,
    sub,
)
from rubber_system.api.trees import iter_stable_trees, vertex_weight
from rubber_system.misc import config
from rubber_system.misc import logger
from rubber_system.misc.exceptions import (
    BoundExceededError,
    RubberError,
    SeriesError,
    ValidationError,
)
from rubber_system.misc.utils import Timer

__all__ = [
    "EulerTable",
    "NuFamily",
    "chi_mbar0",
    "chi_mbar0_series",
    "chi_table",
    "nu1",
    "nu1_derivative",
    "nu_m",
    "pde_residual",
    "table_rows",
]


def nu1(order: int) -> TruncatedSeries:
    """The series (1+t) log(1+t) - t, built from log1p."""
    if order < 2:
        raise SeriesError("ν_1 needs a truncation order of at least 2")
    one_plus_t = TruncatedSeries((1, 1), order)
    return sub(mul(one_plus_t, log1p(order)), TruncatedSeries.variable(order))


@toolz.memoize
def nu1_derivative(j: int, order: int) -> TruncatedSeries:
    """ν_1^{(j)} to the given order; ν_1 is built j orders higher."""
    return derivative(nu1(order + j), j)


@dataclass
class NuFamily:
    """The graded family ν_1, ν_2, ... truncated at a common order.

    ``members[k - 1]`` holds ν_k.
    """

    order: int
    members: list[TruncatedSeries] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.members:
            self.members.append(nu1(self.order))

    def nu(self, k: int) -> TruncatedSeries:
        if k < 1 or k > len(self.members):
            raise SeriesError(f"ν_{k} has not been computed")
        return self.members[k - 1]

    def extend(self, max_k: int) -> "NuFamily":
        """Compute the members up to ν_{max_k}."""
        while len(self.members) < max_k:
            self.members.append(nu_m(len(self.members) + 1, self))
        return self

    @classmethod
    def build(cls, max_k: int, order: int) -> "NuFamily":
        return cls(order).extend(max_k)


def nu_m(m: int, family: NuFamily) -> TruncatedSeries:
    """ν_m from its predecessors ν_1, ..., ν_{m-1} in ``family``."""
    if m == 1:
        return family.nu(1)
    if m < 1:
        raise SeriesError("ν_m is defined for m >= 1")
    if len(family.members) < m - 1:
        raise SeriesError(
            f"ν_{m} needs ν_1, ..., ν_{m - 1}, only {len(family.members)} are known"
        )
    order = family.order
    total = TruncatedSeries.zero(order)
    for j in range(1, m):
        args = family.members[: m - j]
        total = add(total, mul(nu1_derivative(j, order), bell(m - 1, j, args)))
    logger.debug("computed ν_%i to order %i", m, order)
    return total


@dataclass
class EulerTable:
    """The numbers χ(M̄_n(k)) for 2 <= n <= max_n and 1 <= k <= n - 1."""

    max_n: int
    order: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries[key]

    def row(self, n: int) -> list[int]:
        return [self.entries[(n, k)] for k in range(1, n)]

    def row_sum(self, n: int) -> int:
        """χ(M̄_n)."""
        if n < 2 or n > self.max_n:
            raise KeyError(n)
        return sum(self.row(n))

    def totals(self) -> dict[int, int]:
        return {n: self.row_sum(n) for n in range(2, self.max_n + 1)}

    def nu(self, k: int) -> TruncatedSeries:
        """Rebuild ν_k from the tabulated coefficients."""
        coeffs = [Fraction(0)] * (self.max_n + 1)
        for n in range(max(k + 1, 2), self.max_n + 1):
            coeffs[n] = Fraction(self.entries[(n, k)], math.factorial(n))
        return TruncatedSeries(coeffs, self.max_n)

    def to_dict(self) -> dict[str, Any]:
        return {
            "max_n": self.max_n,
            "order": self.order,
            "entries": [[n, k, str(v)] for (n, k), v in sorted(self.entries.items())],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EulerTable":
        entries = {(int(n), int(k)): int(v) for n, k, v in data["entries"]}
        table = cls(int(data["max_n"]), int(data["order"]), entries)
        for n in range(2, table.max_n + 1):
            for k in range(1, n):
                if (n, k) not in entries:
                    raise KeyError(f"missing entry ({n}, {k})")
        return table


def chi_table(n_max: int, order: Optional[int] = None) -> EulerTable:
    """Tabulate χ(M̄_n(k)) for all n <= n_max.

    Parameters
    ----------
    n_max: int
        Largest n of the table, at least 2.
    order: int, default: None
        Truncation order of the series, defaults to the configured
        ``truncation_order`` (but never less than ``n_max``).

    Returns
    -------
    EulerTable: the exact table, row sums are χ(M̄_n)
    """
    if n_max < 2:
        raise ValidationError("the table starts at n = 2")
    if order is None:
        order = max(config.get(config.TRUNCATION_ORDER), n_max)
    if order < n_max:
        raise ValidationError(
            f"the truncation order {order} must be at least n_max = {n_max}"
        )
    with Timer(f"table of χ(M̄_n(k)) up to n = {n_max}"):
        family = NuFamily.build(n_max - 1, order)
        entries: dict[tuple[int, int], int] = {}
        for n in range(2, n_max + 1):
            factorial = math.factorial(n)
            for k in range(1, n):
                value = family.nu(k)[n] * factorial
                if value.denominator != 1:
                    raise RubberError(
                        f"χ(M̄_{n}({k})) = {value} is not an integer"
                    )
                entries[(n, k)] = value.numerator
    return EulerTable(n_max, order, entries)


def _graded_mul(
    a: list[TruncatedSeries], b: list[TruncatedSeries]
) -> list[TruncatedSeries]:
    """Product of polynomials in s with series coefficients, same s-degree."""
    order = a[0].order
    result = [TruncatedSeries.zero(order) for _ in a]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for k in range(len(a) - i):
            result[i + k] = add(result[i + k], mul(x, b[k]))
    return result


def pde_residual(K: int, N: int) -> list[TruncatedSeries]:
    """Difference of both sides of the differential equation for Ψ.

    Ψ(s, t) = Σ_k ν_k(t) s^k / k! satisfies

        ∂Ψ/∂s = ν_1(t + Ψ) = (1+t+Ψ) log(1+t+Ψ) - t - Ψ,

    the generating form of the recursion for ν_m. The right hand side is
    expanded as Σ_j ν_1^{(j)}(t) Ψ^j / j!. Both sides are assembled as
    polynomials in s, represented by the list of their t-series coefficients
    of s^0, ..., s^{K-1}, from the tabulated values. Every returned series
    is zero if the table is correct.
    """
    if K < 1:
        raise ValidationError("the s-degree K must be at least 1")
    if N < 2:
        raise ValidationError("the t-order N must be at least 2")
    table = chi_table(max(N, 2), N)
    # psi[k] is the coefficient of s^k, psi[0] = 0
    psi = [TruncatedSeries.zero(N)] + [
        scale(table.nu(k), Fraction(1, math.factorial(k))) for k in range(1, K + 1)
    ]
    lhs = [scale(psi[i + 1], i + 1) for i in range(K)]
    rhs = [TruncatedSeries.zero(N) for _ in range(K)]
    power = [TruncatedSeries.one(N)] + [TruncatedSeries.zero(N)] * (K - 1)
    for j in range(K):
        # power holds Ψ^j, which starts at s^j
        weight = scale(nu1_derivative(j, N), Fraction(1, math.factorial(j)))
        for i in range(j, K):
            rhs[i] = add(rhs[i], mul(weight, power[i]))
        power = _graded_mul(power, psi[:K])
    logger.debug("assembled the differential equation through s^%i t^%i", K - 1, N)
    return [sub(left, right) for left, right in zip(lhs, rhs)]


def chi_mbar0(n: int) -> int:
    """χ(M̄_{0,n+1}) as the sum over Γ_{0,n+1} of the vertex weight products."""
    if n < 2:
        raise ValidationError("χ(M̄_{0,n+1}) needs n >= 2")
    bound = config.get(config.MAX_TREE_N)
    if n + 1 > bound:
        raise BoundExceededError("number of tree leaves", n + 1, bound)
    total = 0
    count = 0
    for tree in iter_stable_trees(n + 1):
        product = 1
        for valence in tree.internal_valences():
            product *= vertex_weight(valence)
        total += product
        count += 1
    logger.debug("summed %i trees of Γ_{0,%i}", count, n + 1)
    return total


def chi_mbar0_series(n_max: int, order: Optional[int] = None) -> dict[int, int]:
    """χ(M̄_{0,n+1}) for 2 <= n <= n_max from the rooted tree series.

    The exponential generating function f = Σ χ(M̄_{0,n+1}) t^n/n! (with the
    term t for n = 1) solves f = t + ν_1(f); the fixed point is reached after
    at most n_max iterations.
    """
    if n_max < 2:
        raise ValidationError("χ(M̄_{0,n+1}) needs n >= 2")
    order = max(order or n_max, n_max)
    g = nu1(order)
    t = TruncatedSeries.variable(order)
    f = t
    for _ in range(order):
        updated = add(t, compose(g, f))
        if updated == f:
            break
        f = updated
    result: dict[int, int] = {}
    for n in range(2, n_max + 1):
        value = f[n] * math.factorial(n)
        if value.denominator != 1:
            raise RubberError(f"χ(M̄_0,{n + 1}) = {value} is not an integer")
        result[n] = value.numerator
    return result


def table_rows(
    n_max: int, order: Optional[int] = None, table: Optional[EulerTable] = None
) -> list[dict[str, int]]:
    """Rows (n, χ(M̄_n), χ(M̄_{0,n+1})) for 2 <= n <= n_max.

    An already computed ``table`` covering n_max is used instead of a new one.
    """
    if table is None or table.max_n < n_max:
        table = chi_table(n_max, order)
    mbar0 = chi_mbar0_series(n_max, table.order)
    return [
        {"n": n, "chi": chi, "chi_mbar0": mbar0[n]}
        for n, chi in table.totals().items()
        if n <= n_max
    ]
