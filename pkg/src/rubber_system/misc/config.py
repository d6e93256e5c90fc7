"""
This module manages the central configuration of the system.

The configuration is a toml file with a ``[rubber_system]`` section, every
key is optional::

    [rubber_system]
    truncation_order = 20
    max_tree_n = 9
    max_signature_n = 16
    max_linear_extension_size = 20
    workers = 1
    wall_search_budget = 200
    seed = 0
    cache_dir = "~/.cache/rubbermaps"
"""

from __future__ import annotations

import os
import os.path as osp
from pathlib import Path
from typing import Any, Optional, Union

import appdirs
import toml

from rubber_system.misc import _ConfigWrapper
from rubber_system.misc import logger as log
from rubber_system.misc.exceptions import ConfigurationException

CONFIG_FILE = _ConfigWrapper(
    osp.join(appdirs.user_config_dir(), "rubbermaps", "rubber_system.toml")
)

CONFIG_SECTION_NAME = "rubber_system"
"""This is the name of the section in the configuration file where
the central configuration is being stored"""

#: config options
TRUNCATION_ORDER = "truncation_order"
"""Default truncation order N of all power series computations."""

MAX_TREE_N = "max_tree_n"
"""Largest number of leaves for which Γ_{0,n} may be enumerated."""

MAX_SIGNATURE_N = "max_signature_n"
"""Largest length of a ramification datum whose chamber signature is built."""

MAX_LINEAR_EXTENSION_SIZE = "max_linear_extension_size"
"""Largest poset handled by the down-set dynamic program."""

WORKERS = "workers"
"""Number of worker threads used for sums over trees."""

WALL_SEARCH_BUDGET = "wall_search_budget"
"""Number of attempts of the randomised search for data across a wall."""

SEED = "seed"
"""Seed of all randomised searches."""

CACHE_DIR = "cache_dir"
"""Directory holding the json result cache."""

CACHE_DIR_ENV = "RUBBER_SYSTEM_CACHE_DIR"

DEFAULTS: dict[str, Any] = {
    TRUNCATION_ORDER: 20,
    MAX_TREE_N: 9,
    MAX_SIGNATURE_N: 16,
    MAX_LINEAR_EXTENSION_SIZE: 20,
    WORKERS: 1,
    WALL_SEARCH_BUDGET: 200,
    SEED: 0,
    CACHE_DIR: osp.join(appdirs.user_cache_dir(), "rubbermaps"),
}

_MINIMA = {
    TRUNCATION_ORDER: 2,
    MAX_TREE_N: 3,
    MAX_SIGNATURE_N: 3,
    MAX_LINEAR_EXTENSION_SIZE: 1,
    WORKERS: 1,
    WALL_SEARCH_BUDGET: 1,
    SEED: 0,
}

_config: dict[str, Any] = {}


def _check(config: dict[str, Any]) -> None:
    for key, minimum in _MINIMA.items():
        value = config[key]
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigurationException(
                f"value ({value!r}) of {key} is not valid. Should be an integer"
            )
        if value < minimum:
            raise ConfigurationException(
                f"value ({value}) of {key} is not valid. Should be >= {minimum}"
            )
    if not isinstance(config[CACHE_DIR], (str, Path)):
        raise ConfigurationException(f"value of {CACHE_DIR} must be a path")
    config[CACHE_DIR] = osp.expanduser(str(config[CACHE_DIR]))


def reloadConfiguration(config_file: Union[str, Path, None] = None) -> None:
    """Reloads the configuration.

    This can be used for reloading a new configuration from disk, at the
    present time mainly for setting different configurations for testing."""
    global _config
    config = dict(DEFAULTS)
    config_file = config_file or os.environ.get(
        "RUBBER_SYSTEM_CONFIG_FILE", str(CONFIG_FILE)
    )
    log.debug("Loading configuration file from: %s", config_file)
    if config_file and osp.isfile(config_file):
        try:
            content = toml.load(config_file)
        except toml.TomlDecodeError as error:
            raise ConfigurationException(
                f"Could not parse {config_file}: {error}"
            ) from error
        if CONFIG_SECTION_NAME not in content:
            raise ConfigurationException(
                (
                    "Configuration file is missing section %s.\n"
                    + "For Example:\n[%s]\nprop=value\n..."
                )
                % (CONFIG_SECTION_NAME, CONFIG_SECTION_NAME)
            )
        unknown = set(content[CONFIG_SECTION_NAME]) - set(DEFAULTS)
        if unknown:
            raise ConfigurationException(
                f"Unknown configuration keys: {', '.join(sorted(unknown))}"
            )
        config.update(content[CONFIG_SECTION_NAME])
        log.debug("Configuration loaded from %s", config_file)
    else:
        log.debug("No configuration file found in %s, using defaults.", config_file)
    _check(config)
    if os.environ.get(CACHE_DIR_ENV):
        config[CACHE_DIR] = osp.expanduser(os.environ[CACHE_DIR_ENV])
    _config = config


_nothing = object()


def get(config_prop: str, default: Any = _nothing) -> Any:
    """Returns the value stored for the given config_prop.
    If the config_prop is not found and no default value is provided an exception
    will be thrown. If not the default value is returned.

    :param config_prop: property for which it's value is looked for.
    :param default: If the property is not found this value is returned.
    :return: the value associated with the given property, the default one
    if not found or an exception is thrown if no default is provided."""
    if not _config:
        reloadConfiguration()
    if config_prop in _config:
        return _config[config_prop]
    elif default is not _nothing:
        return default
    else:
        raise ConfigurationException("No configuration for %s" % config_prop)


def keys() -> list[str]:
    """Returns all the keys from the current configuration."""
    if not _config:
        reloadConfiguration()
    return list(_config.keys())


def override(values: Optional[dict[str, Any]] = None, **kwargs: Any) -> None:
    """Overwrite configuration values for the running process, e.g. from
    command line flags. ``None`` values are ignored."""
    if not _config:
        reloadConfiguration()
    updates = {k: v for k, v in {**(values or {}), **kwargs}.items() if v is not None}
    unknown = set(updates) - set(DEFAULTS)
    if unknown:
        raise ConfigurationException(
            f"Unknown configuration keys: {', '.join(sorted(unknown))}"
        )
    config = {**_config, **updates}
    _check(config)
    _config.update(config)
