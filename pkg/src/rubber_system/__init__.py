"""Core library of rubbermaps: series, recursion, trees, strata, chambers."""

__version__ = "2410.0.0"
