"""Numerical configuration and the TinyDB run ledger."""

from dataclasses import FrozenInstanceError

import pytest

from hadamard_inverse.config import DEFAULT_CONFIG, NumericsConfig, RunLedger


def test_config_is_frozen():
    with pytest.raises(FrozenInstanceError):
        DEFAULT_CONFIG.zero_threshold = 1.0


def test_with_overrides_copies():
    config = DEFAULT_CONFIG.with_overrides(quadrature_nodes=64)
    assert config.quadrature_nodes == 64
    assert DEFAULT_CONFIG.quadrature_nodes == 256
    assert isinstance(config, NumericsConfig)


def test_ledger_save_load_update(tmp_path):
    db_path = tmp_path / "runs.json"
    with RunLedger(db_path) as ledger:
        ledger.save("inverse:example1:64", {"value": 1})
        ledger.save("inverse:example1:64", {"value": 2})
        ledger.save("scan:log:64", {"value": 3})
        assert ledger.load("inverse:example1:64") == {"value": 2}
        assert set(ledger.list_all()) == {"inverse:example1:64", "scan:log:64"}

    # reopened ledger sees the same records
    with RunLedger(db_path) as ledger:
        assert ledger.load("scan:log:64") == {"value": 3}
        assert ledger.delete("scan:log:64")
        assert not ledger.delete("scan:log:64")
        assert ledger.load("scan:log:64") is None


def test_ledger_close_is_idempotent(tmp_path):
    ledger = RunLedger(tmp_path / "runs.json")
    ledger.close()
    ledger.close()
