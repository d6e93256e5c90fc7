"""The ``rubbermaps`` command and its sub commands."""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from rubber_system import __version__

from .utils import SubCommandParser, guarded_call

PROG = "rubbermaps"


def _normalise(argv: list[str], commands: dict) -> list[str]:
    """Accept ``--table`` for ``table``; no arguments at all asks for help."""
    argv = list(argv)
    if not argv:
        return ["-h"]
    if argv[0].strip("-") in commands:
        argv[0] = argv[0].strip("-")
    return argv


def build_parser() -> SubCommandParser:
    """The main parser with one sub parser per command."""
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Exact computations for genus zero rubber stable maps",
        epilog=f"Help on a single command: {PROG} <sub-command> --help",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "-V", "--version", action="version", version=f"%(prog)s {__version__}"
    )
    return SubCommandParser(parser)


def main(argv: Optional[list[str]] = None) -> None:
    """Entry point of the ``rubbermaps`` script."""
    cli = build_parser()
    argv = _normalise(argv or sys.argv[1:], cli.sub_commands)
    args = cli.parse_args(argv)
    guarded_call(args.apply_func, argv[0], args, **cli.kwargs)


if __name__ == "__main__":  # pragma: no cover
    main()
