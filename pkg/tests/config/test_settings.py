import logging

from config.logging import configure_logging
from config.settings import Settings


def test_defaults():
    settings = Settings(_env_file=None)
    assert settings.units.hbar == 1.0
    assert settings.gaussian.gamma_convention == "printed"
    assert settings.ghz.max_dense_qubits == 12
    assert settings.oracle.quadrature_order >= 20


def test_nested_environment_overrides(monkeypatch):
    monkeypatch.setenv("SPEED_STEERING_GAUSSIAN__GAMMA_CONVENTION", "physical")
    monkeypatch.setenv("SPEED_STEERING_GHZ__MAX_DENSE_QUBITS", "8")
    monkeypatch.setenv("SPEED_STEERING_LOG_LEVEL", "debug")
    settings = Settings(_env_file=None)
    assert settings.gaussian.gamma_convention == "physical"
    assert settings.ghz.max_dense_qubits == 8
    assert settings.log_level == "DEBUG"


def test_configure_logging_sets_root_level():
    configure_logging("info")
    assert logging.getLogger().level == logging.INFO
    configure_logging("warning")
    assert logging.getLogger().level == logging.WARNING
