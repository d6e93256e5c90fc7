"""Tables of Euler characteristics."""

from __future__ import annotations

from typing import Any, Optional

from rubber_system.api import chambers, recursion
from rubber_system.misc import logger
from rubber_system.model.cache import ResultCache

from .utils import handled_exception

__all__ = ["chi_table", "ratio_trend"]


def _table(max_n: int, order: Optional[int], use_cache: bool) -> recursion.EulerTable:
    if use_cache:
        return ResultCache().chi_table(max_n, order)
    return recursion.chi_table(max_n, order)


@handled_exception
def chi_table(
    max_n: int = 19,
    order: Optional[int] = None,
    use_cache: bool = True,
) -> list[dict[str, int]]:
    """Tabulate χ(M̄_n) and χ(M̄_{0,n+1}) for 2 <= n <= max_n.

    Parameters
    ----------
    max_n: int, default: 19
        Largest n of the table.
    order: int, default: None
        Truncation order of the power series, defaults to the configured
        ``truncation_order``.
    use_cache: bool, default: True
        Load the table from (and store it in) the result cache.

    Returns
    -------
    list[dict[str, int]]:
        One row ``{"n", "chi", "chi_mbar0"}`` per n.

    Example
    -------

    .. code-block:: python

        import rubbermaps
        rows = rubbermaps.chi_table(10)
        print(rows[-1]["chi"])
    """
    table = _table(max_n, order, use_cache)
    rows = recursion.table_rows(max_n, order, table=table)
    logger.debug("tabulated %i rows", len(rows))
    return rows


@handled_exception
def ratio_trend(
    max_n: int = 19,
    order: Optional[int] = None,
    use_cache: bool = True,
) -> list[dict[str, Any]]:
    """χ(M̄_{0,n+1}) / χ(M̄_n) for 2 <= n <= max_n.

    Rows carry the exact ratio and a float approximation ``approx``.
    """
    table = _table(max_n, order, use_cache)
    ratios = chambers.ratio_trend(max_n, order, table=table)
    return [
        {"n": n, "ratio": ratio, "approx": float(ratio)}
        for n, ratio in enumerate(ratios, start=2)
    ]
