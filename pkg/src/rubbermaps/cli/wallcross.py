from __future__ import annotations

import argparse
from typing import Any, Optional

from rubber_system import __version__

from .utils import BaseParser, execute, standard_main


class Cli(BaseParser):
    """Class that constructs the wallcross argument parser."""

    desc = "Compute the wall crossing difference [M̄(x)] - [M̄(y)]."
    command = "wallcross"

    def __init__(
        self,
        parser: Optional[argparse.ArgumentParser] = None,
    ):
        """Construct the wallcross sub arg. parser."""
        super().__init__(parser, "rubbermaps-wallcross")
        self.parser.add_argument(
            "--x",
            type=str,
            required=True,
            help="First ramification datum, or the base datum with --wall.",
        )
        self.parser.add_argument(
            "--y",
            type=str,
            default=None,
            help="Second ramification datum of the same length.",
        )
        self.parser.add_argument(
            "--wall",
            type=str,
            default=None,
            help=(
                "Comma separated subset S; instead of --y, search two data "
                "near x separated by the wall W_S only."
            ),
        )
        self.add_common_arguments(cache=False)
        self.parser.set_defaults(apply_func=self.run_cmd)

    @staticmethod
    def run_cmd(args: argparse.Namespace, **kwargs: Any) -> None:
        """Compute the difference class and print it."""
        execute("wallcross", **kwargs)


def main(argv: Optional[list[str]] = None) -> None:
    standard_main(Cli, __version__, argv)
