import logging
import os
import random
from pathlib import Path

import mock
import pytest


@pytest.fixture(scope="function", autouse=True)
def test_config(tmp_path):
    """Fresh configuration and a private cache directory for every test."""
    from rubber_system.misc import config, logger

    env = dict(RUBBER_SYSTEM_CACHE_DIR=str(tmp_path / "cache"))
    with mock.patch.dict(os.environ, env):
        config.reloadConfiguration()
        yield config
    logger.is_cli = False
    logger.setLevel(logging.INFO)
    config.reloadConfiguration()


@pytest.fixture(scope="function")
def cache_dir(test_config) -> Path:
    return Path(test_config.get(test_config.CACHE_DIR))


@pytest.fixture(scope="function")
def rng() -> random.Random:
    return random.Random(42)


@pytest.fixture(scope="session")
def small_trees():
    from rubber_system.api.trees import enumerate_stable_trees

    return {n: enumerate_stable_trees(n) for n in range(3, 6)}


@pytest.fixture(scope="function")
def config_file(tmp_path) -> Path:
    return tmp_path / "rubber_system.toml"
