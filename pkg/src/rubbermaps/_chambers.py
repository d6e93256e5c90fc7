"""Resonance chambers and wall crossing."""

from __future__ import annotations

import random
from typing import Any, Optional

from rubber_system.api import chambers
from rubber_system.api.strata import DatumLike, RamificationDatum
from rubber_system.misc import config
from rubber_system.misc.exceptions import ValidationError

from .utils import handled_exception

__all__ = ["validate", "chamber", "wallcross"]


@handled_exception
def validate(x: DatumLike) -> RamificationDatum:
    """Check that x is a ramification datum off every resonance wall."""
    return chambers.validate(x)


@handled_exception
def chamber(x: DatumLike) -> dict[str, Any]:
    """The chamber signature of x together with the validation report.

    Returns
    -------
    dict: ``x``, ``n``, ``validation`` (the passed checks) and
    ``signature``, the sign of every wall subset containing 1.
    """
    datum = chambers.validate(x)
    signature = chambers.signature(datum)
    return {
        "x": list(datum.x),
        "n": datum.n,
        "validation": {
            "nonzero_entries": True,
            "zero_total": True,
            "off_walls": True,
            "walls_checked": len(signature.signs),
        },
        "signature": signature.to_dict(),
    }


@handled_exception
def wallcross(
    x: DatumLike,
    y: Optional[DatumLike] = None,
    wall: Optional[str] = None,
    seed: Optional[int] = None,
) -> chambers.WallCrossing:
    """The difference [M̄(x)] - [M̄(y)].

    Without ``y`` a pair of data separated by the single wall ``wall`` is
    searched near the base datum x first.
    """
    if y is None:
        if wall is None:
            raise ValidationError("wallcross needs y or a wall")
        rng = random.Random(config.get(config.SEED) if seed is None else seed)
        pair = chambers.sample_across_wall(wall, x, rng)
        if pair is None:
            raise ValidationError(f"no pair of data across the wall {wall} near {x}")
        x, y = pair
    return chambers.wallcross(x, y)
