"""YAML and environment configuration, and the enumeration bound."""

from fractions import Fraction

import pytest

from matmor import config
from matmor.config import Config
from matmor.errors import EnumerationBoundExceeded
from matmor.utils import check_bound


def test_defaults(tmp_path):
    cfg = Config.load(tmp_path / "absent.yaml")
    assert cfg.max_n == config.DEFAULT_MAX_N
    assert cfg.probe.grid_fractions()[0] == Fraction(1, 8)
    assert cfg.probe.grid_fractions()[-1] == 1


def test_yaml_file_is_read(tmp_path):
    path = tmp_path / "matmor.yaml"
    path.write_text("max_n: 12\nseed: 5\nenumeration:\n  circuit_max_n: 9\n", encoding="utf-8")
    cfg = Config.load(path)
    assert (cfg.max_n, cfg.seed) == (12, 5)
    assert cfg.enumeration.circuit_max_n == 9
    assert cfg.enumeration.exhaustive_pairs_max_n == 10


def test_environment_beats_yaml(tmp_path, monkeypatch):
    path = tmp_path / "matmor.yaml"
    path.write_text("max_n: 12\n", encoding="utf-8")
    monkeypatch.setenv("MATMOR_MAX_N", "7")
    assert Config.load(path).max_n == 7


def test_nested_environment_keys(tmp_path, monkeypatch):
    monkeypatch.setenv("MATMOR_PROBE__SAMPLES", "17")
    cfg = Config.load(tmp_path / "absent.yaml")
    assert cfg.probe.samples == 17
    assert cfg.probe.tolerance == 1e-8


def test_check_bound(monkeypatch):
    monkeypatch.setattr(config.settings, "max_n", 3)
    check_bound(3)
    with pytest.raises(EnumerationBoundExceeded) as exc:
        check_bound(4)
    assert exc.value.witness == {"n": 4, "bound": 3, "setting": "max_n"}
    with pytest.raises(EnumerationBoundExceeded) as exc:
        check_bound(3, 2, "enumeration.circuit_max_n")
    assert exc.value.bound == 2
