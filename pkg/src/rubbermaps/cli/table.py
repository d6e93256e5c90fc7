from __future__ import annotations

import argparse
from typing import Any, Optional

from rubber_system import __version__

from .utils import BaseParser, execute, standard_main


class Cli(BaseParser):
    """Class that constructs the table argument parser."""

    desc = "Tabulate χ(M̄_n) and χ(M̄_{0,n+1})."
    command = "table"

    def __init__(
        self,
        parser: Optional[argparse.ArgumentParser] = None,
    ):
        """Construct the table sub arg. parser."""
        super().__init__(parser, "rubbermaps-table")
        self.parser.add_argument(
            "--max-n",
            type=int,
            default=19,
            help="Largest n of the table.",
        )
        self.parser.add_argument(
            "--order",
            type=int,
            default=None,
            help="Truncation order of the power series.",
        )
        self.add_common_arguments()
        self.parser.set_defaults(apply_func=self.run_cmd)

    @staticmethod
    def run_cmd(args: argparse.Namespace, **kwargs: Any) -> None:
        """Compute the table and print it."""
        execute("table", **kwargs)


def main(argv: Optional[list[str]] = None) -> None:
    standard_main(Cli, __version__, argv)
