from __future__ import annotations

import argparse
from typing import Any, Optional

from rubber_system import __version__

from .utils import BaseParser, execute, standard_main


class Cli(BaseParser):
    """Class that constructs the euler argument parser."""

    desc = "Compute the Euler characteristic χ(M̄(x))."
    command = "euler"

    def __init__(
        self,
        parser: Optional[argparse.ArgumentParser] = None,
    ):
        """Construct the euler sub arg. parser."""
        super().__init__(parser, "rubbermaps-euler")
        self.parser.add_argument(
            "--x",
            type=str,
            required=True,
            help="Ramification datum, comma separated, e.g. 3,-1,-1,-1.",
        )
        self.parser.add_argument(
            "--method",
            choices=("strata", "linear-extensions"),
            default="strata",
            help=(
                "Evaluate the class at L = 1 (strata) or count linear "
                "extensions of the directed trees (linear-extensions)."
            ),
        )
        self.add_common_arguments()
        self.parser.set_defaults(apply_func=self.run_cmd)

    @staticmethod
    def run_cmd(args: argparse.Namespace, **kwargs: Any) -> None:
        """Compute χ(M̄(x)) and print it."""
        execute("euler", **kwargs)


def main(argv: Optional[list[str]] = None) -> None:
    standard_main(Cli, __version__, argv)
