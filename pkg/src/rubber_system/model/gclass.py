"""Classes in the subring Z[L] of the Grothendieck ring of varieties."""

from __future__ import annotations

from itertools import zip_longest
from typing import Iterable, Iterator, Sequence, Union

__all__ = ["GClass", "L", "ONE", "ZERO"]


class GClass:
    """A polynomial in the Lefschetz symbol L with integer coefficients.

    Coefficients are stored lowest degree first without trailing zeros, the
    zero class has no coefficients at all. Instances are immutable.

    Parameters
    ----------
    coefficients: Iterable[int]
        Coefficients of 1, L, L², ... in this order.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[int] = ()) -> None:
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs: tuple[int, ...] = tuple(coeffs)

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "GClass":
        """The product of (L - r) over all roots r."""
        result = ONE
        for root in roots:
            result = result * (L - root)
        return result

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial, -1 for the zero class."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def evaluate(self, value: int = 1) -> int:
        """Evaluate at L = value; L = 1 yields the Euler characteristic."""
        result = 0
        for coeff in reversed(self._coeffs):
            result = result * value + coeff
        return result

    def to_list(self) -> list[int]:
        return list(self._coeffs)

    def to_dict(self) -> list[int]:
        """Coefficients, lowest degree first, as stored in json."""
        return self.to_list()

    def __iter__(self) -> Iterator[int]:
        return iter(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = GClass([other])
        if not isinstance(other, GClass):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: Union["GClass", int]) -> "GClass":
        other = _coerce(other)
        pairs = zip_longest(self._coeffs, other._coeffs, fillvalue=0)
        return GClass(a + b for a, b in pairs)

    __radd__ = __add__

    def __neg__(self) -> "GClass":
        return GClass(-c for c in self._coeffs)

    def __sub__(self, other: Union["GClass", int]) -> "GClass":
        return self + (-_coerce(other))

    def __rsub__(self, other: Union["GClass", int]) -> "GClass":
        return _coerce(other) - self

    def __mul__(self, other: Union["GClass", int]) -> "GClass":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return ZERO
        product = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                product[i + j] += a * b
        return GClass(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "GClass":
        if exponent < 0:
            raise ValueError("negative powers are not classes of varieties")
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __repr__(self) -> str:
        return f"GClass({list(self._coeffs)})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms: list[str] = []
        for degree in range(len(self._coeffs) - 1, -1, -1):
            coeff = self._coeffs[degree]
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            if degree == 0:
                body = str(magnitude)
            else:
                power = "L" if degree == 1 else f"L^{degree}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            terms.append(f"{sign} {body}")
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _coerce(value: Union[GClass, int, Sequence[int]]) -> GClass:
    if isinstance(value, GClass):
        return value
    if isinstance(value, int):
        return GClass([value])
    return GClass(value)


ZERO = GClass()
ONE = GClass([1])
L = GClass([0, 1])
