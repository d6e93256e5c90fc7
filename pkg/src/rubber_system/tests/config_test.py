import os

import pytest


def test_defaults_from_mock_file(test_config):
    from rubber_system.misc.exceptions import ConfigurationException

    assert test_config.get(test_config.TRUNCATION_ORDER) == 20
    assert test_config.get(test_config.MAX_TREE_N) == 9
    assert test_config.get(test_config.SEED) == 42
    assert test_config.get("nonsense", "fallback") == "fallback"
    assert set(test_config.keys()) == set(test_config.DEFAULTS)
    with pytest.raises(ConfigurationException):
        test_config.get("nonsense")


def test_cache_dir_from_env(test_config, tmp_path):
    assert test_config.get(test_config.CACHE_DIR) == str(tmp_path / "cache")


def test_reload_from_file(test_config, config_file):
    config_file.write_text(
        "[rubber_system]\ntruncation_order = 25\ncache_dir = '~/rubber'\n"
    )
    test_config.reloadConfiguration(config_file)
    assert test_config.get(test_config.TRUNCATION_ORDER) == 25
    assert test_config.get(test_config.WORKERS) == 1
    # the environment wins over the file
    assert test_config.get(test_config.CACHE_DIR) != "~/rubber"


def test_cache_dir_is_expanded(test_config, config_file):
    import mock

    config_file.write_text("[rubber_system]\ncache_dir = '~/rubber'\n")
    env = {k: v for k, v in os.environ.items() if k != test_config.CACHE_DIR_ENV}
    with mock.patch.dict(os.environ, env, clear=True):
        test_config.reloadConfiguration(config_file)
    assert test_config.get(test_config.CACHE_DIR) == os.path.expanduser("~/rubber")


@pytest.mark.parametrize(
    "content",
    [
        "[rubber_system\ntruncation_order = 20\n",
        "[other]\ntruncation_order = 20\n",
        "[rubber_system]\ntruncation_orders = 20\n",
        "[rubber_system]\ntruncation_order = 1\n",
        "[rubber_system]\nworkers = 'many'\n",
        "[rubber_system]\nworkers = true\n",
        "[rubber_system]\ncache_dir = 3\n",
    ],
)
def test_invalid_files(test_config, config_file, content):
    from rubber_system.misc.exceptions import ConfigurationException

    config_file.write_text(content)
    with pytest.raises(ConfigurationException):
        test_config.reloadConfiguration(config_file)


def test_cache_dir_env_does_not_hide_invalid_file(test_config, config_file):
    import mock

    from rubber_system.misc.exceptions import ConfigurationException

    config_file.write_text("[rubber_system]\ncache_dir = 3\n")
    env = {test_config.CACHE_DIR_ENV: "/tmp/rubber-cache"}
    with mock.patch.dict(os.environ, env):
        with pytest.raises(ConfigurationException):
            test_config.reloadConfiguration(config_file)
        config_file.write_text("[rubber_system]\ncache_dir = \"~/rubber\"\n")
        test_config.reloadConfiguration(config_file)
    assert test_config.get(test_config.CACHE_DIR) == "/tmp/rubber-cache"


def test_override(test_config):
    from rubber_system.misc.exceptions import ConfigurationException

    test_config.override(workers=4, seed=None)
    assert test_config.get(test_config.WORKERS) == 4
    assert test_config.get(test_config.SEED) == 42
    test_config.override({"max_tree_n": 8})
    assert test_config.get(test_config.MAX_TREE_N) == 8
    with pytest.raises(ConfigurationException):
        test_config.override(workers=0)
    assert test_config.get(test_config.WORKERS) == 4
    with pytest.raises(ConfigurationException):
        test_config.override(colour="blue")


def test_bounds_are_honoured(test_config):
    from rubber_system.api.trees import enumerate_stable_trees
    from rubber_system.misc.exceptions import BoundExceededError

    test_config.override(max_tree_n=5)
    assert len(enumerate_stable_trees(5)) == 26
    with pytest.raises(BoundExceededError) as error:
        enumerate_stable_trees(6)
    assert error.value.details() == {
        "what": "number of tree leaves",
        "value": 6,
        "bound": 5,
    }


def test_config_wrapper(config_file):
    import mock

    from rubber_system.misc import _ConfigWrapper

    wrapper = _ConfigWrapper("/nowhere/rubber_system.toml")
    with mock.patch.dict(os.environ, {"RUBBER_SYSTEM_CONFIG_FILE": str(config_file)}):
        assert os.fspath(wrapper) == str(config_file)
    with mock.patch.dict(os.environ, {}, clear=True):
        assert repr(wrapper) == "/nowhere/rubber_system.toml"
