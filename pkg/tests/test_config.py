import pytest
from pydantic import ValidationError

from app.config import Settings, get_settings
from app.search import SearchBudget
from app.stickbreak import SimulationConfig


def test_defaults(monkeypatch):
    for key in ("SEARCH_MAX_NODES", "SEARCH_THREADS", "SIMULATE_STRIDE", "FLOAT_GUARD_EPS"):
        monkeypatch.delenv(key, raising=False)
    settings = Settings(_env_file=None)
    assert settings.SEARCH_MAX_NODES == 50_000_000
    assert settings.SEARCH_THREADS == 1
    assert settings.FLOAT_GUARD_EPS == 1e-12
    assert settings.DBE_DEFAULT_VARIANT == "odd_from_three"


@pytest.mark.parametrize(
    "key,value",
    [
        ("SEARCH_THREADS", "0"),
        ("SIMULATE_WINDOW_FRACTION", "0"),
        ("SIMULATE_WINDOW_FRACTION", "1.5"),
        ("FLOAT_GUARD_EPS", "0.01"),
        ("DBE_DEFAULT_VARIANT", "odd_from_five"),
    ],
)
def test_rejects_inconsistent_values(monkeypatch, key, value):
    monkeypatch.setenv(key, value)
    with pytest.raises(ValidationError):
        Settings(_env_file=None)


def test_component_configs_follow_env(monkeypatch):
    monkeypatch.setenv("SEARCH_MAX_NODES", "123")
    monkeypatch.setenv("SIMULATE_STRIDE", "7")
    get_settings.cache_clear()
    assert SearchBudget.from_settings().max_nodes == 123
    assert SimulationConfig.from_settings().stride == 7
