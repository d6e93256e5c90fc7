from __future__ import annotations

import argparse
from typing import Any, Optional

from rubber_system import __version__

from .utils import BaseParser, execute, standard_main

SUITES = ("all", "series", "recursion", "trees", "strata", "chambers", "oracle")


class Cli(BaseParser):
    """Class that constructs the verify argument parser."""

    desc = "Cross check the computations against independent oracles."
    command = "verify"

    def __init__(
        self,
        parser: Optional[argparse.ArgumentParser] = None,
    ):
        """Construct the verify sub arg. parser."""
        super().__init__(parser, "rubbermaps-verify")
        self.parser.add_argument(
            "--suite",
            choices=SUITES,
            default="all",
            help="The verification suite to run.",
        )
        self.parser.add_argument(
            "--max-n",
            type=int,
            default=6,
            help="Largest datum length the suites go up to.",
        )
        self.add_common_arguments(cache=False)
        self.parser.set_defaults(apply_func=self.run_cmd)

    @staticmethod
    def run_cmd(args: argparse.Namespace, **kwargs: Any) -> None:
        """Run the suites, exit with 2 if a check fails."""
        execute("verify", **kwargs)


def main(argv: Optional[list[str]] = None) -> None:
    standard_main(Cli, __version__, argv)
