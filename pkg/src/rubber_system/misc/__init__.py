"""Package logger and the lookup of the configuration file."""

import logging
import os
from typing import Union, cast

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "rubbermaps"
CONFIG_FILE_ENV = "RUBBER_SYSTEM_CONFIG_FILE"


def _stderr_handler(level: int = logging.INFO) -> RichHandler:
    """Rich handler writing to stderr, stdout is reserved for results."""
    handler = RichHandler(
        rich_tracebacks=True,
        show_path=False,
        log_time_format="[%X]",
        console=Console(soft_wrap=False, stderr=True),
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    handler.setLevel(level)
    return handler


class RubberLogger(logging.Logger):
    """Logger whose level change reaches all of its handlers.

    ``is_cli`` is set by the command line parsers; errors are then reported
    as records on stdout instead of being raised.
    """

    is_cli: bool = False

    def setLevel(self, level: Union[int, str]) -> None:
        super().setLevel(level)
        for handler in self.handlers:
            handler.setLevel(level)

    def set_level(self, level: Union[int, str]) -> None:
        self.setLevel(level)


def _package_logger() -> RubberLogger:
    previous = logging.getLoggerClass()
    logging.setLoggerClass(RubberLogger)
    try:
        package_logger = cast(RubberLogger, logging.getLogger(LOGGER_NAME))
    finally:
        logging.setLoggerClass(previous)
    if not package_logger.handlers:
        package_logger.addHandler(_stderr_handler())
    package_logger.setLevel(logging.INFO)
    package_logger.propagate = False
    return package_logger


logger = _package_logger()


class _ConfigWrapper:
    """Path of the config file, resolved from the environment on every use."""

    _env: str = CONFIG_FILE_ENV

    def __init__(self, default_file: str):
        self.default_file = default_file

    def __fspath__(self) -> str:
        return os.environ.get(self._env, self.default_file)

    def __repr__(self) -> str:
        return self.__fspath__()
