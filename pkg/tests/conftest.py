import pytest

from superfourier.catalog import build_named
from superfourier.table import build_U, build_table


@pytest.fixture
def isolated_home(tmp_path, monkeypatch):
    """Keep config files and the log file out of the real home and cwd."""
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("SUPERFOURIER_THREADS", raising=False)
    import superfourier.config as config

    monkeypatch.setattr(config, "CONFIG_DIR", tmp_path / ".config" / "superfourier")
    monkeypatch.setattr(config, "CONFIG_FILE", tmp_path / ".config" / "superfourier" / "config.yaml")
    return tmp_path


@pytest.fixture(scope="session")
def theory_factory():
    cache = {}

    def make(name, **params):
        key = (name, tuple(sorted(params.items())))
        if key not in cache:
            cache[key] = build_named(name, **params)
        return cache[key]

    return make


@pytest.fixture(scope="session")
def table_factory(theory_factory):
    cache = {}

    def make(name, **params):
        key = (name, tuple(sorted(params.items())))
        if key not in cache:
            cache[key] = build_table(theory_factory(name, **params))
        return cache[key]

    return make


@pytest.fixture(scope="session")
def unitary_factory(table_factory):
    def make(name, **params):
        return build_U(table_factory(name, **params))

    return make
