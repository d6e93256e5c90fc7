"""Additional utilities."""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import asdict, dataclass
from functools import wraps
from types import TracebackType
from typing import Any, Callable, Optional

import lazy_import
import pandas as pd
from rich.console import Console

from rubber_system.misc import logger
from rubber_system.misc.exceptions import (
    ConfigurationException,
    RubberError,
    ValidationError,
)
from rubber_system.misc.utils import Timer, jsonify

import rubbermaps

cfg = lazy_import.lazy_module("rubber_system.misc.config")

COMMANDS = ("table", "euler", "class", "chamber", "wallcross", "verify", "ratio")
"""The commands a :py:class:`RunConfig` can describe."""

FORMATS = ("json", "csv")


def handled_exception(func: Callable[..., Any]) -> Callable[..., Any]:
    """Wrap the exception handler around a function."""

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        """Wrapper function that handles the exception."""
        wrong_config_msg = {
            False: (
                "consult `rubbermaps.config` to see how to pass a "
                "valid configuration."
            ),
            True: (
                "export the RUBBER_SYSTEM_CONFIG_FILE "
                "environment variable to set a valid configuration file."
            ),
        }
        try:
            return func(*args, **kwargs)
        except ConfigurationException as error:
            error.args = (f"{error} - {wrong_config_msg[logger.is_cli]}",)
            exception_handler(error)
        except BaseException as error:
            exception_handler(error)

    return wrapper


def error_record(
    exception: BaseException,
    command: Optional[str] = None,
    input_: Optional[dict[str, Any]] = None,
) -> dict[str, Any]:
    """The machine readable description of a failed command."""
    error: dict[str, Any] = {
        "type": type(exception).__name__,
        "code": getattr(exception, "code", "internal"),
        "message": str(exception),
    }
    if isinstance(exception, RubberError):
        error.update(jsonify(exception.details()))
    return {"command": command, "input": input_ or {}, "error": error}


def exit_code(exception: BaseException) -> int:
    if isinstance(exception, KeyboardInterrupt):
        return 130
    return getattr(exception, "exit_code", 3)


def exception_handler(
    exception: BaseException,
    cli: bool = False,
    command: Optional[str] = None,
    input_: Optional[dict[str, Any]] = None,
) -> None:
    """Handle raising exceptions appropriately.

    On the command line the error record is written to stdout and the
    process exits with the exit code of the exception.
    """

    trace_back = exception.__traceback__
    appendix = {
        False: " - decrease log level via `rubbermaps.logger.setLevel(10)`",
        True: " - increase verbosity flags (-v)",
    }[cli]
    append_msg = ""
    # Set only the last traceback of the exception
    if logger.level > logging.DEBUG and trace_back is not None:
        last_trace_back = trace_back
        while last_trace_back.tb_next:
            last_trace_back = last_trace_back.tb_next
        exception.__traceback__ = TracebackType(
            tb_next=None,
            tb_frame=last_trace_back.tb_frame,
            tb_lineno=last_trace_back.tb_lineno,
            tb_lasti=last_trace_back.tb_lasti,
        )
        if not isinstance(exception, ValidationError):
            append_msg = f"{appendix} for more information"
    msg = str(exception) + append_msg
    if cli:
        if logger.level <= logging.DEBUG:
            logger.exception(msg, exc_info=exception)
        else:
            logger.error(msg)
        record = error_record(exception, command, input_)
        print(json.dumps(record, indent=2), flush=True)
        raise SystemExit(exit_code(exception))
    if logger.is_cli is False:
        logger.error(msg)
    if logger.level > logging.DEBUG:
        raise exception from None
    raise exception


@dataclass
class RunConfig:
    """Everything one invocation of a command needs.

    Parameters
    ----------
    command: str
        One of ``table``, ``euler``, ``class``, ``chamber``, ``wallcross``,
        ``verify`` and ``ratio``.
    max_n: int, default: None
        Largest n of ``table``, ``ratio`` and ``verify``.
    x: str, default: None
        Comma separated ramification datum.
    y: str, default: None
        Second datum of ``wallcross``.
    wall: str, default: None
        Comma separated subset; ``wallcross --wall S --x base`` searches a
        pair of data across W_S near base.
    order: int, default: None
        Truncation order, defaults to the configured one.
    output_format: str, default: json
        ``json`` or ``csv``.
    cache_dir: str, default: None
        Cache directory overriding the configured one.
    workers: int, default: None
        Number of worker threads.
    suite: str, default: all
        The ``verify`` suite.
    method: str, default: strata
        How ``euler`` evaluates: ``strata`` or ``linear-extensions``.
    use_cache: bool, default: True
        Read and write the result cache.
    seed: int, default: None
        Seed of all randomised searches.
    """

    command: str
    max_n: Optional[int] = None
    x: Optional[str] = None
    y: Optional[str] = None
    wall: Optional[str] = None
    order: Optional[int] = None
    output_format: str = "json"
    cache_dir: Optional[str] = None
    workers: Optional[int] = None
    suite: str = "all"
    method: str = "strata"
    use_cache: bool = True
    seed: Optional[int] = None
    debug: bool = False

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(
                f"unknown command {self.command!r}, choose from {', '.join(COMMANDS)}"
            )
        if self.output_format not in FORMATS:
            raise ValidationError(
                f"unknown format {self.output_format!r}, "
                f"choose from {', '.join(FORMATS)}"
            )
        needs_x = {"euler", "class", "chamber", "wallcross"}
        if self.command in needs_x and not self.x:
            raise ValidationError(f"the {self.command} command needs --x")
        if self.command == "wallcross" and not (self.y or self.wall):
            raise ValidationError("the wallcross command needs --y or --wall")

    def to_input(self) -> dict[str, Any]:
        """The command input as it appears in the output record."""
        keys = {
            "table": ("max_n", "order"),
            "ratio": ("max_n", "order"),
            "euler": ("x", "method"),
            "class": ("x",),
            "chamber": ("x",),
            "wallcross": ("x", "y", "wall", "seed"),
            "verify": ("suite", "max_n", "seed"),
        }[self.command]
        values = asdict(self)
        return {k: values[k] for k in keys if values[k] is not None}


def _rows(command: str, result: Any) -> list[dict[str, Any]]:
    """Flat csv rows of a command result."""
    if command in ("table", "ratio"):
        return [jsonify(row) for row in result]
    if command == "class":
        return [
            {"degree": d, "coefficient": c} for d, c in enumerate(result.to_list())
        ]
    if command == "wallcross":
        return [
            {"degree": d, "coefficient": c}
            for d, c in enumerate(result.difference.to_list())
        ]
    if command == "euler":
        return [{"x": result["x"], "chi": result["chi"]}]
    if command == "chamber":
        return [
            {"subset": ",".join(map(str, entry["subset"])), "sign": entry["sign"]}
            for entry in result["signature"]
        ]
    return [check._asdict() for check in result]


def _dispatch(config: RunConfig) -> Any:
    if config.command == "table":
        return rubbermaps.chi_table(
            config.max_n or 19, order=config.order, use_cache=config.use_cache
        )
    if config.command == "ratio":
        return rubbermaps.ratio_trend(
            config.max_n or 19, order=config.order, use_cache=config.use_cache
        )
    if config.command == "euler":
        return {
            "x": config.x,
            "chi": rubbermaps.euler_char(
                config.x, method=config.method, use_cache=config.use_cache
            ),
        }
    if config.command == "class":
        return rubbermaps.total_class(config.x, use_cache=config.use_cache)
    if config.command == "chamber":
        return rubbermaps.chamber(config.x)
    if config.command == "wallcross":
        return rubbermaps.wallcross(
            config.x, y=config.y, wall=config.wall, seed=config.seed
        )
    return rubbermaps.verify(
        suite=config.suite, max_n=config.max_n or 6, seed=config.seed
    )


def serialize(config: RunConfig, result: Any, timing_ms: int) -> str:
    """Render a result as json record or as csv table."""
    if config.output_format == "csv":
        return pd.DataFrame(_rows(config.command, result)).to_csv(index=False)
    record = {
        "command": config.command,
        "input": config.to_input(),
        "result": jsonify(result),
        "timing_ms": timing_ms,
    }
    return json.dumps(record, indent=2)


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command.

    Returns
    -------
    tuple[int, str]: the exit status and the serialized output; errors are
    turned into an error record and the exit code of the exception.
    """
    if config.debug:
        logger.setLevel(logging.DEBUG)
    try:
        cfg.override(
            cache_dir=config.cache_dir, workers=config.workers, seed=config.seed
        )
        if config.x:
            rubbermaps.validate(config.x)
        if config.y:
            rubbermaps.validate(config.y)
        with Timer(config.command) as timer:
            result = _dispatch(config)
    except KeyboardInterrupt:
        raise
    except Exception as error:
        logger.error("%s", error)
        logger.debug("%s failed", config.command, exc_info=error)
        record = error_record(error, config.command, config.to_input())
        return exit_code(error), json.dumps(record, indent=2)
    status = 0
    if config.command == "verify":
        if logger.is_cli:
            Console(stderr=True).print(rubbermaps.verify_report(result))
        if not all(check.passed for check in result):
            status = 2
    return status, serialize(config, result, timer.milliseconds)
