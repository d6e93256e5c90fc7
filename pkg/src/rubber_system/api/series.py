"""
Exact truncated formal power series over the rationals.

A :py:class:`TruncatedSeries` of order N stores the coefficients of
t^0, ..., t^N as :py:class:`fractions.Fraction`. Arithmetic between series
of different orders is carried out to the smaller order. Besides the ring
operations the module offers partial exponential Bell polynomials and
composition via Faà di Bruno's formula.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

import toolz

from rubber_system.misc.exceptions import SeriesError

__all__ = [
    "TruncatedSeries",
    "add",
    "bell",
    "bell_scalar",
    "compose",
    "derivative",
    "exp",
    "log1p",
    "mul",
    "neg",
    "nu1_derivative_closed_form",
    "partitions_of_length",
    "power",
    "reciprocal",
    "scale",
    "sub",
    "truncate",
]

Scalar = Union[int, Fraction]


class TruncatedSeries:
    """Univariate formal power series truncated at a fixed order.

    Parameters
    ----------
    coeffs: Iterable[int | Fraction]
        Coefficients of t^0, t^1, ... Missing coefficients are zero, surplus
        coefficients beyond ``order`` are dropped.
    order: int, default: None
        The truncation order N. Defaults to ``len(coeffs) - 1``.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[Scalar], order: Optional[int] = None) -> None:
        values = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(values) - 1
        if order < 0:
            raise SeriesError("the order of a series must be non negative")
        values = values[: order + 1]
        values.extend([Fraction(0)] * (order + 1 - len(values)))
        self.order: int = order
        self.coeffs: tuple[Fraction, ...] = tuple(values)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((1,), order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        """The series t."""
        return cls((0, 1), order)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], order: int) -> "TruncatedSeries":
        return cls(coeffs, order)

    def __getitem__(self, index: int) -> Fraction:
        if index < 0:
            raise IndexError(index)
        if index > self.order:
            raise SeriesError(
                f"coefficient of t^{index} is beyond the order {self.order}"
            )
        return self.coeffs[index]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient, ``order + 1`` for zero."""
        for i, coeff in enumerate(self.coeffs):
            if coeff:
                return i
        return self.order + 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        coeffs = ", ".join(str(c) for c in self.coeffs)
        return f"TruncatedSeries([{coeffs}], order={self.order})"

    def __add__(self, other: Union["TruncatedSeries", Scalar]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        return add(self, TruncatedSeries((other,), self.order))

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return neg(self)

    def __sub__(self, other: Union["TruncatedSeries", Scalar]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return sub(self, other)
        return sub(self, TruncatedSeries((other,), self.order))

    def __rsub__(self, other: Scalar) -> "TruncatedSeries":
        return sub(TruncatedSeries((other,), self.order), self)

    def __mul__(self, other: Union["TruncatedSeries", Scalar]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "TruncatedSeries":
        return scale(self, Fraction(1) / Fraction(other))

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        return power(self, exponent)


def _common_order(*series: TruncatedSeries) -> int:
    return min(s.order for s in series)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise sum up to the smaller order."""
    order = _common_order(a, b)
    return TruncatedSeries((a.coeffs[i] + b.coeffs[i] for i in range(order + 1)), order)


def neg(a: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries((-c for c in a.coeffs), a.order)


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    order = _common_order(a, b)
    return TruncatedSeries((a.coeffs[i] - b.coeffs[i] for i in range(order + 1)), order)


def scale(a: TruncatedSeries, factor: Scalar) -> TruncatedSeries:
    factor = Fraction(factor)
    return TruncatedSeries((factor * c for c in a.coeffs), a.order)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order."""
    order = _common_order(a, b)
    product = [Fraction(0)] * (order + 1)
    for i in range(order + 1):
        a_i = a.coeffs[i]
        if not a_i:
            continue
        for j in range(order + 1 - i):
            b_j = b.coeffs[j]
            if b_j:
                product[i + j] += a_i * b_j
    return TruncatedSeries(product, order)


def power(a: TruncatedSeries, exponent: int) -> TruncatedSeries:
    """Non negative integer power by repeated squaring."""
    if exponent < 0:
        raise SeriesError("negative powers are only available via reciprocal")
    result, base = TruncatedSeries.one(a.order), a
    while exponent:
        if exponent & 1:
            result = mul(result, base)
        exponent >>= 1
        if exponent:
            base = mul(base, base)
    return result


def truncate(a: TruncatedSeries, order: int) -> TruncatedSeries:
    """Lower the truncation order of a series."""
    if order > a.order:
        raise SeriesError(f"cannot raise the order {a.order} of a series to {order}")
    return TruncatedSeries(a.coeffs, order)


def derivative(a: TruncatedSeries, j: int = 1) -> TruncatedSeries:
    """The j-th formal derivative, the order drops by j."""
    if j < 0 or j > a.order:
        raise SeriesError(
            f"derivative of order {j} is not available for a series of order {a.order}"
        )
    if j == 0:
        return a
    return TruncatedSeries(
        (
            a.coeffs[k + j] * math.perm(k + j, j)
            for k in range(a.order - j + 1)
        ),
        a.order - j,
    )


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with nonzero constant term."""
    if not a.coeffs[0]:
        raise SeriesError("only series with nonzero constant term are invertible")
    inverse = [Fraction(1) / a.coeffs[0]]
    for n in range(1, a.order + 1):
        total = sum(
            (a.coeffs[k] * inverse[n - k] for k in range(1, n + 1) if a.coeffs[k]),
            Fraction(0),
        )
        inverse.append(-total * inverse[0])
    return TruncatedSeries(inverse, a.order)


def log1p(order: int) -> TruncatedSeries:
    """The series of log(1 + t)."""
    return TruncatedSeries(
        [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, order + 1)],
        order,
    )


def exp(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) for a series without constant term.

    Uses the coefficient recursion n·e_n = Σ_k k·a_k·e_{n-k} that follows
    from e' = a'·e.
    """
    if a.coeffs[0]:
        raise SeriesError("exp needs a series with zero constant term")
    result = [Fraction(1)]
    for n in range(1, a.order + 1):
        total = sum(
            (k * a.coeffs[k] * result[n - k] for k in range(1, n + 1) if a.coeffs[k]),
            Fraction(0),
        )
        result.append(total / n)
    return TruncatedSeries(result, a.order)


def partitions_of_length(m: int, j: int) -> Iterator[tuple[int, ...]]:
    """Partitions of m into exactly j parts.

    Parts are listed in non increasing order, partitions in descending
    lexicographic order, e.g. ``(3, 1, 1), (2, 2, 1)`` for m = 5, j = 3.
    """
    return iter(_partitions(m, j, m))


@toolz.memoize
def _partitions(m: int, j: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if j == 0:
        return ((),) if m == 0 else ()
    result: list[tuple[int, ...]] = []
    lowest = -(-m // j)
    for first in range(min(largest, m - j + 1), lowest - 1, -1):
        for rest in _partitions(m - first, j - 1, first):
            result.append((first,) + rest)
    return tuple(result)


@toolz.memoize
def _bell_weights(
    m: int, j: int
) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
    """Pairs of multinomial weight and multiplicities (i, λ_i) of B_{m,j}."""
    weights = []
    for parts in _partitions(m, j, m):
        multiplicity = sorted(Counter(parts).items())
        denominator = 1
        for part, count in multiplicity:
            denominator *= math.factorial(part) ** count * math.factorial(count)
        weights.append((math.factorial(m) // denominator, tuple(multiplicity)))
    return tuple(weights)


def _check_bell(m: int, j: int, available: int) -> None:
    if m < 1 or j < 1 or j > m:
        raise SeriesError(f"B_{{{m},{j}}} needs 1 <= j <= m")
    if available < m - j + 1:
        raise SeriesError(
            f"B_{{{m},{j}}} needs {m - j + 1} arguments, got {available}"
        )


def bell(m: int, j: int, args: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Partial exponential Bell polynomial B_{m,j} at series arguments.

    Parameters
    ----------
    m: int
        Degree of the polynomial.
    j: int
        Number of blocks, ``1 <= j <= m``.
    args: Sequence[TruncatedSeries]
        The arguments x_1, x_2, ...; at least ``m - j + 1`` are needed.

    Returns
    -------
    TruncatedSeries: the value, truncated at the smallest order among the
    arguments that enter.
    """
    _check_bell(m, j, len(args))
    used = args[: m - j + 1]
    order = _common_order(*used)
    powers: dict[tuple[int, int], TruncatedSeries] = {}
    total = TruncatedSeries.zero(order)
    for weight, multiplicity in _bell_weights(m, j):
        term = TruncatedSeries((weight,), order)
        for part, count in multiplicity:
            key = (part, count)
            if key not in powers:
                powers[key] = power(truncate(used[part - 1], order), count)
            term = mul(term, powers[key])
        total = add(total, term)
    return total


def bell_scalar(m: int, j: int, values: Sequence[Scalar]) -> Fraction:
    """Partial exponential Bell polynomial B_{m,j} at exact scalars.

    B_{0,0} is 1 by convention.
    """
    if m == 0 and j == 0:
        return Fraction(1)
    _check_bell(m, j, len(values))
    total = Fraction(0)
    for weight, multiplicity in _bell_weights(m, j):
        term = Fraction(weight)
        for part, count in multiplicity:
            term *= Fraction(values[part - 1]) ** count
            if not term:
                break
        total += term
    return total


def compose(
    g_coeffs: Union[Sequence[Scalar], TruncatedSeries], f: TruncatedSeries
) -> TruncatedSeries:
    """Substitute the series f into g = Σ g_k t^k.

    Coefficients follow Faà di Bruno's formula: with b_k = k!·g_k and
    a_i = i!·f_i the coefficient of t^n of g(f) is
    (1/n!)·Σ_{k=1..n} b_k·B_{n,k}(a_1, ..., a_{n-k+1}).
    """
    if f.coeffs[0]:
        raise SeriesError("the inner series of a composition needs zero constant term")
    g = list(g_coeffs.coeffs if isinstance(g_coeffs, TruncatedSeries) else g_coeffs)
    order = f.order
    a = [math.factorial(i) * f.coeffs[i] for i in range(1, order + 1)]
    b = [
        math.factorial(k) * Fraction(g[k]) if k < len(g) else Fraction(0)
        for k in range(order + 1)
    ]
    result = [Fraction(g[0]) if g else Fraction(0)]
    for n in range(1, order + 1):
        total = Fraction(0)
        for k in range(1, n + 1):
            if b[k]:
                total += b[k] * bell_scalar(n, k, a[: n - k + 1])
        result.append(total / math.factorial(n))
    return TruncatedSeries(result, order)


def nu1_derivative_closed_form(j: int, order: int) -> TruncatedSeries:
    """The j-th derivative of (1+t)log(1+t) - t from its closed forms.

    j = 0 gives the series itself, j = 1 gives log(1+t) and for j >= 2 the
    derivative is (-1)^j (j-2)! (1+t)^{1-j}.
    """
    if j < 0:
        raise SeriesError("derivatives have non negative order")
    if j == 0:
        return TruncatedSeries(
            [0, 0] + [Fraction((-1) ** n, n * (n - 1)) for n in range(2, order + 1)],
            order,
        )
    if j == 1:
        return log1p(order)
    p = j - 1
    factor = (-1) ** j * math.factorial(j - 2)
    return TruncatedSeries(
        (factor * (-1) ** k * math.comb(p + k - 1, k) for k in range(order + 1)),
        order,
    )
