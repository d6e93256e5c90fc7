from __future__ import annotations

import argparse
from typing import Any, Optional

from rubber_system import __version__

from .utils import BaseParser, execute, standard_main


class Cli(BaseParser):
    """Class that constructs the class argument parser."""

    desc = "Compute the class [M̄(x)] as polynomial in L."
    command = "class"

    def __init__(
        self,
        parser: Optional[argparse.ArgumentParser] = None,
    ):
        """Construct the class sub arg. parser."""
        super().__init__(parser, "rubbermaps-class")
        self.parser.add_argument(
            "--x",
            type=str,
            required=True,
            help="Ramification datum, comma separated, e.g. 3,-1,-1,-1.",
        )
        self.add_common_arguments()
        self.parser.set_defaults(apply_func=self.run_cmd)

    @staticmethod
    def run_cmd(args: argparse.Namespace, **kwargs: Any) -> None:
        """Compute [M̄(x)] and print its coefficients."""
        execute("class", **kwargs)


def main(argv: Optional[list[str]] = None) -> None:
    standard_main(Cli, __version__, argv)
