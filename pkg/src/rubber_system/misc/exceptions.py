"""Definitions of custom exceptions.

Every exception carries a machine readable ``code`` and the ``exit_code``
the command line interface terminates with when the exception reaches it.
"""

from __future__ import annotations

from typing import Any, Optional, Sequence


class RubberError(Exception):
    """Base class of all exceptions raised by this package."""

    code: str = "internal"
    exit_code: int = 3

    def details(self) -> dict[str, Any]:
        """Extra, json serialisable, information about the error."""
        return {}


class ConfigurationException(RubberError):
    """Mark problems with the configuration."""

    code = "configuration"


class ValidationError(RubberError):
    """Thrown if some input contains an improper value."""

    code = "invalid_input"
    exit_code = 1


class NonZeroTotalError(ValidationError):
    """The entries of a ramification datum do not sum to zero."""

    code = "nonzero_total"

    def __init__(self, total: int) -> None:
        super().__init__(f"entries sum to {total}, expected 0")
        self.total = total

    def details(self) -> dict[str, Any]:
        return {"total": self.total}


class ZeroEntryError(ValidationError):
    """A ramification datum has a vanishing entry."""

    code = "zero_entry"

    def __init__(self, index: int) -> None:
        super().__init__(f"entry {index} is zero")
        self.index = index

    def details(self) -> dict[str, Any]:
        return {"index": self.index}


class VanishingSubsetError(ValidationError):
    """A proper subset of the entries sums to zero.

    The witness is stored with 1-based indices.
    """

    code = "vanishing_subset"

    def __init__(self, witness: Sequence[int]) -> None:
        self.witness = tuple(sorted(witness))
        subset = ",".join(map(str, self.witness))
        super().__init__(f"the entries {{{subset}}} sum to zero")

    def details(self) -> dict[str, Any]:
        return {"witness": list(self.witness)}


class DimensionMismatchError(ValidationError):
    """Two ramification data of different length were compared."""

    code = "dimension_mismatch"


class SeriesError(ValidationError):
    """Improper operands for a power series operation."""

    code = "series"


class BoundExceededError(ValidationError):
    """A feasibility bound would be exceeded."""

    code = "bound_exceeded"

    def __init__(self, what: str, value: int, bound: int) -> None:
        super().__init__(
            f"{what} = {value} exceeds the configured bound of {bound}"
        )
        self.what = what
        self.value = value
        self.bound = bound

    def details(self) -> dict[str, Any]:
        return {"what": self.what, "value": self.value, "bound": self.bound}


class UnstableTreeError(ValidationError):
    """A tree is not stable (after smoothing bivalent vertices)."""

    code = "unstable_tree"


class CacheCorruptionError(RubberError):
    """A cache file could not be read back."""

    code = "cache_corruption"

    def __init__(self, path: Any, reason: Optional[str] = None) -> None:
        super().__init__(f"corrupt cache file {path}: {reason or 'unreadable'}")
        self.path = str(path)


class VerificationFailure(RubberError):
    """At least one verification suite failed."""

    code = "verification_failure"
    exit_code = 2

    def __init__(self, failed: Sequence[str]) -> None:
        super().__init__(f"failed checks: {', '.join(failed)}")
        self.failed = list(failed)

    def details(self) -> dict[str, Any]:
        return {"failed": self.failed}
