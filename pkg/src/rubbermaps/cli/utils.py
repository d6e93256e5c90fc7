"""Parser machinery shared by the rubbermaps command line tools."""

from __future__ import annotations

import abc
import argparse
import importlib
import logging
import sys
from typing import Any, Callable, NoReturn, Optional, Type

import lazy_import

from rubber_system.misc import RubberLogger, logger

rubbermaps = lazy_import.lazy_module("rubbermaps")
utils = lazy_import.lazy_module("rubbermaps.utils")

COMMAND_MODULES: dict[str, str] = {
    "table": "table",
    "euler": "euler",
    "class": "class_",
    "chamber": "chamber",
    "wallcross": "wallcross",
    "verify": "verify",
    "ratio": "ratio",
}
"""Sub command name and the module under rubbermaps.cli defining its Cli."""

COMMANDS = tuple(COMMAND_MODULES)


def get_cli_class(name: str) -> Optional[Type[BaseParser]]:
    """The ``Cli`` class of a sub command, None for unknown names."""
    module_name = COMMAND_MODULES.get(name.replace("-", "_"))
    if module_name is None:
        return None
    module = importlib.import_module(f"rubbermaps.cli.{module_name}")
    cli_class = getattr(module, "Cli", None)
    if cli_class is None or not getattr(cli_class, "desc", ""):
        return None
    return cli_class


def interrupted() -> NoReturn:
    print("KeyboardInterrupt, exiting", file=sys.stderr, flush=True)
    sys.exit(130)


def guarded_call(
    func: Callable[..., Any], command: Optional[str], *args: Any, **kwargs: Any
) -> None:
    """Call a command function, turning every failure into an error record."""
    try:
        func(*args, **kwargs)
    except KeyboardInterrupt:
        interrupted()
    except Exception as error:
        utils.exception_handler(error, True, command=command)


class BaseParser(metaclass=abc.ABCMeta):
    """Argument parser of one rubbermaps command.

    Subclasses set ``desc`` and ``command``, add their own arguments in
    ``__init__`` followed by :py:meth:`add_common_arguments` and register
    ``run_cmd`` as ``apply_func``.

    Parameters
    ----------
    parser: argparse.ArgumentParser, default: None
        Parser to populate, a sub parser of the ``rubbermaps`` command. A new
        stand alone parser is created if None.
    prog: str, default: rubbermaps
        Program name of a stand alone parser.
    """

    desc: str = ""
    """One line summary shown in the help of ``rubbermaps``."""

    command: str = ""
    """Name of the sub command, also recorded in the output."""

    kwargs: dict[str, Any]

    def __init__(
        self,
        parser: Optional[argparse.ArgumentParser] = None,
        prog: str = "rubbermaps",
    ):
        self.logger.is_cli = True
        self.kwargs = {}
        self.parser = parser or argparse.ArgumentParser(
            prog=prog,
            description=self.desc,
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        )

    @property
    def logger(self) -> RubberLogger:
        return logger

    def set_debug(self, debug: bool) -> None:
        if debug:
            self.logger.setLevel(logging.DEBUG)

    def add_common_arguments(self, cache: bool = True) -> None:
        """Output format, workers, seed, cache and verbosity flags.

        Commands that never touch the result cache pass ``cache=False``.
        """
        self.parser.add_argument(
            "--format",
            dest="output_format",
            choices=("json", "csv"),
            default="json",
            help="Output format written to stdout.",
        )
        self.parser.add_argument(
            "--workers",
            type=int,
            default=None,
            help="Number of worker threads, defaults to the configured number.",
        )
        self.parser.add_argument(
            "--seed",
            type=int,
            default=None,
            help="Seed of randomised searches, defaults to the configured seed.",
        )
        if cache:
            self.parser.add_argument(
                "--cache-dir",
                type=str,
                default=None,
                help=(
                    "Result cache directory, overrides RUBBER_SYSTEM_CACHE_DIR "
                    "and the configuration."
                ),
            )
            self.parser.add_argument(
                "--no-cache",
                dest="use_cache",
                action="store_false",
                default=True,
                help="Neither read nor write the result cache.",
            )
        self.parser.add_argument(
            "--debug",
            "-v",
            "--verbose",
            action="store_true",
            default=False,
            help="Log progress at debug level to stderr.",
        )

    @staticmethod
    def run_cmd(args: argparse.Namespace, **kwargs: Any) -> None:
        raise NotImplementedError

    def parse_args(self, argv: Optional[list[str]] = None) -> argparse.Namespace:
        """Parse ``argv`` and keep the command options in ``kwargs``.

        Unknown options end the program with exit status 2.
        """
        args, unknown = self.parser.parse_known_args(argv)
        options = [arg for arg in unknown if arg.startswith("-")]
        if options:
            self.parser.error(f"Unknown option: {options[0]}")
        if unknown:
            self.parser.error(f"Unexpected arguments: {' '.join(unknown)}")
        self.kwargs = {
            key: value for key, value in vars(args).items() if key != "apply_func"
        }
        self.set_debug(self.kwargs.pop("debug", False))
        return args


class SubCommandParser(BaseParser):
    """Parser with one sub parser per rubbermaps command."""

    def __init__(
        self,
        parser: Optional[argparse.ArgumentParser] = None,
        sub_parsers: Optional[dict[str, Type[BaseParser]]] = None,
        prog: str = "rubbermaps",
    ) -> None:
        super().__init__(parser, prog)
        self.subparsers = self.parser.add_subparsers(help="Available sub-commands:")
        self.sub_commands = sub_parsers or self.get_subcommand_parsers()
        for name, cli_class in self.sub_commands.items():
            cli_class(
                self.subparsers.add_parser(
                    name,
                    description=cli_class.desc,
                    help=cli_class.desc,
                    formatter_class=argparse.ArgumentDefaultsHelpFormatter,
                )
            )
        self.parser.set_defaults(apply_func=self._missing_command)

    def _missing_command(self, *args: Any, **kwargs: Any) -> None:
        self.parser.error(
            "the following sub-commands are required: "
            f"{', '.join(self.sub_commands)}"
        )

    @staticmethod
    def get_subcommand_parsers() -> dict[str, Type[BaseParser]]:
        parsers = {}
        for name in COMMANDS:
            cli_class = get_cli_class(name)
            if cli_class is not None:
                parsers[name] = cli_class
        return parsers

    @classmethod
    def get_subcommand_help(
        cls, parsers: Optional[dict[str, Type[BaseParser]]] = None
    ) -> dict[str, str]:
        """Sub command name and its one line description."""
        parsers = parsers or cls.get_subcommand_parsers()
        return {name: cli_class.desc for name, cli_class in parsers.items()}


def execute(command: str, **kwargs: Any) -> Any:
    """Run a command, write its record to stdout and exit with its status."""
    run_config = utils.RunConfig(command, **kwargs)
    status, output = rubbermaps.run(run_config)
    print(output, end="" if output.endswith("\n") else "\n", flush=True)
    if status:
        raise SystemExit(status)
    return run_config


def standard_main(
    cli_class: Type[BaseParser], version: str, argv: Optional[list[str]] = None
) -> None:
    """Entry point of a stand alone ``rubbermaps-<command>`` script.

    Parameters
    ----------
    cli_class:
        The ``Cli`` class of the command.
    version:
        Version reported by ``--version``.
    argv:
        Command line arguments, ``sys.argv[1:]`` if None.
    """
    cli = cli_class()
    cli.parser.add_argument(
        "-V", "--version", action="version", version=f"%(prog)s {version}"
    )
    args = cli.parse_args(argv or sys.argv[1:])
    guarded_call(cli.run_cmd, cli_class.command, args, **cli.kwargs)
