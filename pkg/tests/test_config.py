import pytest

from models.config import DEFAULT_SEED, OutputFormat, WorkbenchConfig, load_config
from services.errors import InputError

ENV = ("WORKBENCH_FIELD", "WORKBENCH_SEED", "WORKBENCH_CAP_DIM", "WORKBENCH_FORMAT", "WORKBENCH_LOG_LEVEL")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ENV:
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    config = load_config()
    assert config == WorkbenchConfig()
    assert config.field == "Q"
    assert config.seed == DEFAULT_SEED
    assert config.cap_dim is None
    assert config.output_format == OutputFormat.TEXT


def test_environment(monkeypatch):
    monkeypatch.setenv("WORKBENCH_FIELD", "gf(7)")
    monkeypatch.setenv("WORKBENCH_SEED", "11")
    monkeypatch.setenv("WORKBENCH_CAP_DIM", "30")
    monkeypatch.setenv("WORKBENCH_FORMAT", "json")
    monkeypatch.setenv("WORKBENCH_LOG_LEVEL", "debug")
    config = load_config()
    assert config.field == "GF(7)"
    assert config.seed == 11
    assert config.cap_dim == 30
    assert config.output_format == OutputFormat.JSON
    assert config.log_level == "DEBUG"
    assert config.make_field().characteristic() == 7


def test_overrides_beat_environment(monkeypatch):
    monkeypatch.setenv("WORKBENCH_FIELD", "GF(3)")
    assert load_config(field="Q", seed=None).field == "Q"


@pytest.mark.parametrize("overrides", [{"field": "GF(9)"}, {"cap_dim": 0}, {"output_format": "yaml"}])
def test_invalid_configuration(overrides):
    with pytest.raises(InputError):
        load_config(**overrides)
