"""Classes and Euler characteristics of rubber map spaces."""

from __future__ import annotations

from rubber_system.api import strata
from rubber_system.api.strata import DatumLike
from rubber_system.model.cache import ResultCache
from rubber_system.model.gclass import GClass

from .utils import handled_exception

__all__ = ["total_class", "euler_char"]


@handled_exception
def total_class(x: DatumLike, use_cache: bool = True) -> GClass:
    """The class [M̄(x)] as a polynomial in L.

    Parameters
    ----------
    x: str | Sequence[int]
        The ramification datum, e.g. ``"3,-1,-1,-1"``.
    use_cache: bool, default: True
        Serve the class from the cache if a datum of the same chamber was
        computed before.

    Example
    -------

    .. code-block:: python

        import rubbermaps
        print(rubbermaps.total_class("3,-1,-1,-1"))  # L + 1
    """
    if use_cache:
        return ResultCache().total_class(x)
    return strata.total_class(x)


@handled_exception
def euler_char(x: DatumLike, method: str = "strata", use_cache: bool = True) -> int:
    """χ(M̄(x)).

    ``method="strata"`` evaluates the class at L = 1, ``method="linear-extensions"``
    counts linear extensions of the x-directed trees.
    """
    if method == "strata" and use_cache:
        return ResultCache().total_class(x).evaluate(1)
    return strata.euler_char(x, method=method)
