from __future__ import annotations

import argparse
from typing import Any, Optional

from rubber_system import __version__

from .utils import BaseParser, execute, standard_main


class Cli(BaseParser):
    """Class that constructs the chamber argument parser."""

    desc = "Validate a datum and print its chamber signature."
    command = "chamber"

    def __init__(
        self,
        parser: Optional[argparse.ArgumentParser] = None,
    ):
        """Construct the chamber sub arg. parser."""
        super().__init__(parser, "rubbermaps-chamber")
        self.parser.add_argument(
            "--x",
            type=str,
            required=True,
            help="Ramification datum, comma separated, e.g. 3,-1,-1,-1.",
        )
        self.add_common_arguments(cache=False)
        self.parser.set_defaults(apply_func=self.run_cmd)

    @staticmethod
    def run_cmd(args: argparse.Namespace, **kwargs: Any) -> None:
        """Print the signature of the chamber of x."""
        execute("chamber", **kwargs)


def main(argv: Optional[list[str]] = None) -> None:
    standard_main(Cli, __version__, argv)
