"""Run the verification suites."""

from __future__ import annotations

from typing import Optional

from rich.table import Table

from rubber_system.api.verify import Check, run_suites
from rubber_system.misc import logger
from rubber_system.misc.exceptions import VerificationFailure

from .utils import handled_exception

__all__ = ["verify", "verify_report"]


@handled_exception
def verify(
    suite: str = "all",
    max_n: int = 6,
    seed: Optional[int] = None,
    strict: bool = False,
) -> list[Check]:
    """Cross check the fast paths against their oracles.

    Parameters
    ----------
    suite: str, default: all
        ``series``, ``recursion``, ``trees``, ``strata``, ``chambers``,
        ``oracle`` or ``all``.
    max_n: int, default: 6
        Largest datum length the suites go up to.
    seed: int, default: None
        Seed of the sampled data.
    strict: bool, default: False
        Raise :py:class:`VerificationFailure` if a check fails.
    """
    checks = run_suites(suite, max_n=max_n, seed=seed)
    failed = [f"{c.suite}/{c.check}" for c in checks if not c.passed]
    logger.debug("%i of %i checks passed", len(checks) - len(failed), len(checks))
    if failed and strict:
        raise VerificationFailure(failed)
    return checks


def verify_report(checks: list[Check]) -> Table:
    """Summary of verification checks as a rich table."""
    table = Table(title="rubbermaps verify")
    table.add_column("suite", style="bold")
    table.add_column("check")
    table.add_column("result")
    table.add_column("detail", overflow="fold")
    for check in checks:
        outcome = "[green]passed[/]" if check.passed else "[red]FAILED[/]"
        table.add_row(check.suite, check.check, outcome, check.detail)
    return table
