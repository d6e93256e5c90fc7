from __future__ import annotations

import argparse
from typing import Any, Optional

from rubber_system import __version__

from .utils import BaseParser, execute, standard_main


class Cli(BaseParser):
    """Class that constructs the ratio argument parser."""

    desc = "Print the ratios χ(M̄_{0,n+1}) / χ(M̄_n)."
    command = "ratio"

    def __init__(
        self,
        parser: Optional[argparse.ArgumentParser] = None,
    ):
        """Construct the ratio sub arg. parser."""
        super().__init__(parser, "rubbermaps-ratio")
        self.parser.add_argument(
            "--max-n",
            type=int,
            default=19,
            help="Largest n of the sequence.",
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
        """Compute the ratios and print them."""
        execute("ratio", **kwargs)


def main(argv: Optional[list[str]] = None) -> None:
    standard_main(Cli, __version__, argv)
