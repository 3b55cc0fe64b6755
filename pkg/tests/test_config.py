import logging

import pytest
import yaml

import superfourier.config as config
from superfourier.config import DEFAULT_CONFIG, load_config, save_default_config, tolerance
from superfourier.utils import max_abs, resolve_threads, setup_logging

pytestmark = pytest.mark.usefixtures("isolated_home")


def test_defaults_without_file():
    assert load_config() == DEFAULT_CONFIG
    assert set(DEFAULT_CONFIG) == {
        "tolerance", "support_threshold", "seed", "random_functions",
        "parallel", "closure_cap", "gl_cap", "vector_cap",
    }


def test_file_overrides_defaults():
    config.CONFIG_DIR.mkdir(parents=True)
    config.CONFIG_FILE.write_text(yaml.dump({"seed": 7, "tolerance": 1e-8}))
    loaded = load_config()
    assert loaded["seed"] == 7
    assert loaded["tolerance"] == 1e-8
    assert loaded["parallel"] == DEFAULT_CONFIG["parallel"]


def test_malformed_file_falls_back(caplog):
    config.CONFIG_DIR.mkdir(parents=True)
    config.CONFIG_FILE.write_text("seed: [unclosed")
    with caplog.at_level(logging.WARNING):
        assert load_config() == DEFAULT_CONFIG
    assert "Failed to load config" in caplog.text


def test_threads_env(monkeypatch):
    monkeypatch.setenv("SUPERFOURIER_THREADS", "3")
    assert load_config()["parallel"] == 3
    assert resolve_threads(8) == 3
    monkeypatch.setenv("SUPERFOURIER_THREADS", "many")
    assert load_config()["parallel"] == DEFAULT_CONFIG["parallel"]
    assert resolve_threads(8) == 8


def test_save_default_config():
    path = save_default_config()
    assert path == config.CONFIG_FILE
    assert yaml.safe_load(path.read_text()) == DEFAULT_CONFIG
    path.write_text(yaml.dump({"seed": 1}))
    save_default_config()
    assert yaml.safe_load(path.read_text()) == {"seed": 1}


def test_tolerance_scales_with_class_count():
    assert tolerance(0) == pytest.approx(1e-9)
    assert tolerance(50) == pytest.approx(5e-8)
    assert tolerance(10, scale=1e-6) == pytest.approx(1e-5)


def test_setup_logging_writes_the_log_file(isolated_home):
    setup_logging(verbose=True)
    logging.getLogger("superfourier.test").debug("hello")
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert "hello" in (isolated_home / "superfourier.log").read_text()
    setup_logging(log_file=None)


def test_max_abs():
    assert max_abs([]) == 0.0
    assert max_abs([1, -3j, 2]) == 3.0
