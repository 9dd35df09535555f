import pytest
from pathlib import Path

from app.exceptions import ConfigurationError
from app.ore_config import OreConfig, get_config, get_project_root, set_config

ENV_VARS = {
    'OREMUL_KARATSUBA_THRESHOLD': '16',
    'OREMUL_NTT_THRESHOLD': '256',
    'OREMUL_STRASSEN_THRESHOLD': '8',
    'OREMUL_DEFAULT_PRIME': '7',
    'OREMUL_TIMEOUT': '2.5',
    'OREMUL_AUTO_SAVE': 'false',
    'OREMUL_DEFAULT_ENCODING': 'utf-16',
    'OREMUL_LOG_DIR': './test_logs',
    'OREMUL_RESULTS_DIR': './test_results',
    'OREMUL_RESULTS_FILE': './test_results/test_results.csv',
    'OREMUL_LOG_FILE': './test_logs/test_log.log',
}


@pytest.fixture
def env(monkeypatch):
    # Set up temporary environment variables for testing
    for name, value in ENV_VARS.items():
        monkeypatch.setenv(name, value)
    return monkeypatch


@pytest.fixture
def clean_env(monkeypatch):
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_environment_configuration(env):
    config = OreConfig()
    assert config.karatsuba_threshold == 16
    assert config.ntt_threshold == 256
    assert config.strassen_threshold == 8
    assert config.default_prime == 7
    assert config.timeout == 2.5
    assert config.auto_save is False
    assert config.default_encoding == 'utf-16'
    assert config.log_dir == Path('./test_logs').resolve()
    assert config.results_dir == Path('./test_results').resolve()
    assert config.results_file == Path('./test_results/test_results.csv').resolve()
    assert config.log_file == Path('./test_logs/test_log.log').resolve()


def test_custom_configuration(env):
    config = OreConfig(
        karatsuba_threshold=4,
        ntt_threshold=64,
        strassen_threshold=2,
        default_prime=0,
        timeout=1.0,
        auto_save=True,
        default_encoding="ascii"
    )
    assert config.karatsuba_threshold == 4
    assert config.ntt_threshold == 64
    assert config.strassen_threshold == 2
    assert config.default_prime == 0
    assert config.timeout == 1.0
    assert config.auto_save is True
    assert config.default_encoding == "ascii"


def test_default_fallbacks(clean_env):
    config = OreConfig()
    assert config.karatsuba_threshold == 32
    assert config.ntt_threshold == 512
    assert config.strassen_threshold == 64
    assert config.default_prime == 65521
    assert config.timeout == 60.0
    assert config.auto_save is True
    assert config.default_encoding == 'utf-8'


def test_directory_properties(clean_env):
    config = OreConfig(base_dir=Path('/custom_base_dir'))
    assert config.log_dir == Path('/custom_base_dir/logs').resolve()
    assert config.results_dir == Path('/custom_base_dir/results').resolve()


def test_file_properties(clean_env):
    config = OreConfig(base_dir=Path('/custom_base_dir'))
    assert config.results_file == Path('/custom_base_dir/results/bench_results.csv').resolve()
    assert config.log_file == Path('/custom_base_dir/logs/oremul.log').resolve()


@pytest.mark.parametrize("value, expected", [('true', True), ('1', True), ('false', False), ('0', False)])
def test_auto_save_env_var(clean_env, value, expected):
    clean_env.setenv('OREMUL_AUTO_SAVE', value)
    config = OreConfig(auto_save=None)
    assert config.auto_save is expected


@pytest.mark.parametrize("kwargs, message", [
    ({"karatsuba_threshold": 1}, "karatsuba_threshold must be at least 2"),
    ({"ntt_threshold": -1}, "ntt_threshold must be positive"),
    ({"strassen_threshold": -1}, "strassen_threshold must be positive"),
    ({"timeout": -1.0}, "timeout must be positive"),
    ({"default_prime": -7}, "default_prime must be 0 or a prime"),
    ({"default_prime": 15}, "not prime"),
])
def test_invalid_configuration(clean_env, kwargs, message):
    with pytest.raises(ConfigurationError, match=message):
        config = OreConfig(**kwargs)
        config.validate()


def test_get_project_root():
    assert (get_project_root() / "app").exists()


def test_get_config_is_cached(clean_env):
    first = get_config()
    assert get_config() is first
    set_config(None)
    assert get_config() is not first


def test_set_config_validates(clean_env):
    with pytest.raises(ConfigurationError):
        set_config(OreConfig(timeout=-1.0))
    custom = OreConfig(karatsuba_threshold=8)
    set_config(custom)
    assert get_config() is custom
