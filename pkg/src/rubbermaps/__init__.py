"""Exact computations for genus zero rubber stable maps."""

from rubber_system import __version__
from rubber_system.misc import config, logger

from ._chambers import chamber, validate, wallcross
from ._classes import euler_char, total_class
from ._table import chi_table, ratio_trend
from ._verify import verify, verify_report
from .utils import RunConfig, run

__all__ = [
    "__version__",
    "config",
    "logger",
    "chi_table",
    "ratio_trend",
    "euler_char",
    "total_class",
    "chamber",
    "validate",
    "wallcross",
    "verify",
    "verify_report",
    "RunConfig",
    "run",
]
