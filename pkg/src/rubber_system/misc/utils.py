"""Provide different utilities that does not depend on any other internal package."""

from __future__ import annotations

import time
from datetime import timedelta
from fractions import Fraction
from typing import Any, Iterable, Optional, Union

import humanize

from rubber_system.misc import logger
from rubber_system.misc.exceptions import ValidationError


def parse_vector(text: Union[str, Iterable[int]]) -> tuple[int, ...]:
    """Parse a comma separated list of signed integers.

    Parameters
    ----------
    text: str
        Representation of the vector, such as ``3,-1,-1,-1``. Whitespace and
        surrounding brackets are ignored.

    Returns
    -------
    tuple[int, ...]: the parsed integer entries
    """
    if not isinstance(text, str):
        return tuple(int(v) for v in text)
    stripped = text.strip().strip("()[]")
    if not stripped:
        raise ValidationError("empty vector")
    try:
        return tuple(int(entry) for entry in stripped.split(","))
    except ValueError as error:
        raise ValidationError(
            f"could not parse {text!r} as comma separated integers"
        ) from error


def parse_subset(
    text: Union[str, Iterable[int]], n: Optional[int] = None
) -> frozenset[int]:
    """Parse a comma separated list of 1-based indices into a set."""
    subset = frozenset(parse_vector(text))
    if n is not None and any(i < 1 or i > n for i in subset):
        raise ValidationError(f"subset {sorted(subset)} is not contained in 1..{n}")
    return subset


def fraction_to_str(value: Fraction) -> str:
    """Serialise a rational as ``p/q``, integers without denominator."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def jsonify(obj: Any) -> Any:
    """Convert results into json serialisable structures.

    Fractions become ``p/q`` strings, sets become sorted lists and objects
    that know how to serialise themselves (``to_dict``, named tuples) are
    asked to.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return fraction_to_str(obj)
    if hasattr(obj, "to_dict"):
        return jsonify(obj.to_dict())
    if hasattr(obj, "_asdict"):
        return jsonify(obj._asdict())
    if isinstance(obj, dict):
        return {str(k): jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonify(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [jsonify(v) for v in obj]
    if isinstance(obj, float):
        return obj
    return str(obj)


class Timer:
    """Context manager measuring wall clock time.

    ::

        with Timer("building table") as timer:
            ...
        timer.milliseconds
    """

    def __init__(self, what: str = "") -> None:
        self.what = what
        self.start = 0.0
        self.elapsed = 0.0

    def __enter__(self) -> "Timer":
        self.start = time.perf_counter()
        return self

    def __exit__(self, *args: Any) -> None:
        self.elapsed = time.perf_counter() - self.start
        if self.what:
            logger.debug(
                "%s took %s",
                self.what,
                humanize.precisedelta(
                    timedelta(seconds=self.elapsed), minimum_unit="milliseconds"
                ),
            )

    @property
    def milliseconds(self) -> int:
        return int(round(self.elapsed * 1000))
