import pytest

from kovacic_aim.config import get_settings


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test sees the defaults unless it sets KOVACIC_* itself."""
    for var in ("KOVACIC_DMAX", "KOVACIC_UNIVERSAL_CAP", "KOVACIC_WORKERS", "KOVACIC_OUTPUT"):
        monkeypatch.delenv(var, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
