# tests/core/test_config.py
"""Test suite for etech configuration."""

import json
import os
from pathlib import Path

import pytest

from etech.core.config import (
    Config,
    build_profile,
    build_sim_config,
    get_config,
    load_config_file,
    load_document,
    load_sim_config,
)
from etech.core.exceptions import ConfigurationError
from etech.core.harvest import (
    CompoundPoissonSinHarvest,
    PiecewiseConstantHarvest,
    WindowedAbsSinHarvest,
    ZeroHarvest,
)
from etech.core.models import ESTIMATION_MODIFIED, ROBUST


def run_document(**overrides) -> dict:
    """Minimal valid run document."""
    data = {
        "e0": 1.0,
        "q0": 1.0,
        "p_max": 3.0,
        "epsilon": 0.05,
        "profile": {"kind": "zero"},
    }
    data.update(overrides)
    return data


def test_config_file_exists() -> None:
    """Test that the default config file ships with the package."""
    config_path = os.path.join(
        os.path.dirname(os.path.dirname(os.path.dirname(__file__))),
        "etech",
        "core",
        "config.yaml",
    )
    assert os.path.exists(config_path), "Config file should exist"


def test_load_config_file() -> None:
    """Test the shipped defaults."""
    config = load_config_file()
    assert isinstance(config, Config)
    assert config.dt == 1e-4
    assert config.t_cutoff == 50.0
    assert config.trajectory_stride == 100
    assert config.workers == 1
    assert config.log_file is None
    assert config.csv_precision == 10


def test_load_config_file_overrides(tmp_path: Path) -> None:
    """Test reading a custom defaults file."""
    custom = tmp_path / "config.yaml"
    custom.write_text(
        "simulation:\n  dt: 0.001\n  t_cutoff: 20\nsweep:\n  workers: 4\n"
    )
    config = load_config_file(str(custom))
    assert config.dt == 0.001
    assert config.t_cutoff == 20.0
    assert config.workers == 4
    assert config.trajectory_stride == 100


def test_invalid_config_file(tmp_path: Path) -> None:
    """Test handling of invalid config file."""
    test_config = tmp_path / "invalid_config.yaml"
    test_config.write_text("invalid: yaml: content}]")

    with pytest.raises(ValueError):
        load_config_file(str(test_config))


def test_missing_config_file(tmp_path: Path) -> None:
    """Test handling of a missing config file."""
    with pytest.raises(ConfigurationError):
        load_config_file(str(tmp_path / "absent.yaml"))


def test_workers_environment_override(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test that ETECH_WORKERS bounds the worker pool."""
    monkeypatch.setenv("ETECH_WORKERS", "3")
    assert get_config().workers == 3


@pytest.mark.parametrize("value", ["zero", "0", "-2"])
def test_workers_environment_invalid(
    monkeypatch: pytest.MonkeyPatch, value: str
) -> None:
    """Test that bad ETECH_WORKERS values are configuration errors."""
    monkeypatch.setenv("ETECH_WORKERS", value)
    with pytest.raises(ConfigurationError):
        get_config()


def test_load_document_json_reads_exponents(tmp_path: Path) -> None:
    """Test that exponent notation survives in JSON documents."""
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"dt": 1e-4}))
    assert load_document(str(path)) == {"dt": 1e-4}


def test_load_document_yaml(tmp_path: Path) -> None:
    """Test YAML documents."""
    path = tmp_path / "run.yaml"
    path.write_text("e0: 1.0\nprofile:\n  kind: zero\n")
    assert load_document(str(path)) == {"e0": 1.0, "profile": {"kind": "zero"}}


@pytest.mark.parametrize("content", ["[1, 2]", "{not json"])
def test_load_document_rejects_bad_content(tmp_path: Path, content: str) -> None:
    """Test malformed or non-mapping documents."""
    path = tmp_path / "bad.json"
    path.write_text(content)
    with pytest.raises(ConfigurationError):
        load_document(str(path))


def test_build_profile_kinds() -> None:
    """Test each profile kind."""
    assert isinstance(build_profile({"kind": "zero"}), ZeroHarvest)
    steps = build_profile(
        {"kind": "piecewise_constant", "breakpoints": [[0, 0.5], [0.2, 0.05]]}
    )
    assert isinstance(steps, PiecewiseConstantHarvest)
    assert steps.rate_at(0.3) == 0.05
    window = build_profile(
        {"kind": "windowed_abs_sin", "amplitude": 2, "window_end": 1}
    )
    assert isinstance(window, WindowedAbsSinHarvest)
    stochastic = build_profile(
        {"kind": "compound_poisson_sin", "amplitude": 1.5, "seed": 7}, t0=2.0
    )
    assert isinstance(stochastic, CompoundPoissonSinHarvest)
    assert stochastic.poisson_rate == 2.0
    assert stochastic.mark_variance == 1.0
    assert stochastic.t0 == 2.0


@pytest.mark.parametrize(
    "block",
    [
        {"kind": "sunshine"},
        {"kind": "zero", "amplitude": 1.0},
        {"kind": "piecewise_constant", "breakpoints": [0, 1]},
        {"kind": "piecewise_constant", "breakpoints": [[0, -1]]},
        {"kind": "windowed_abs_sin", "amplitude": "big", "window_end": 1},
        {"kind": "windowed_abs_sin", "amplitude": 1},
        {"kind": "compound_poisson_sin", "amplitude": 1.0},
        {"kind": "compound_poisson_sin", "amplitude": 1.0, "seed": 1.5},
        {"kind": "compound_poisson_sin", "amplitude": 1.0, "seed": True},
        {"kind": "piecewise_constant", "breakpoints": [["a", 1]]},
        "zero",
    ],
)
def test_build_profile_rejects_invalid(block) -> None:
    """Test that invalid profile blocks are configuration errors."""
    with pytest.raises(ConfigurationError):
        build_profile(block)


def test_build_sim_config_defaults() -> None:
    """Test that omitted fields fall back to package defaults."""
    config = build_sim_config(run_document(), Config(dt=1e-3, t_cutoff=10.0))
    assert config.policy == ROBUST
    assert config.dt == 1e-3
    assert config.t_cutoff == 10.0
    assert config.budget.p_max == 3.0
    assert config.t0 == 0.0
    assert not config.record_trajectory


def test_build_sim_config_record_trajectory() -> None:
    """Test that the trajectory flag takes a real boolean."""
    config = build_sim_config(run_document(record_trajectory=True), Config())
    assert config.record_trajectory is True


def test_build_sim_config_policy_names() -> None:
    """Test policy selection by name."""
    config = build_sim_config(run_document(policy="estimation-modified"), Config())
    assert config.policy == ESTIMATION_MODIFIED


@pytest.mark.parametrize(
    "overrides",
    [
        {"colour": "blue"},
        {"policy": "psychic"},
        {"p_max": 0.0},
        {"q0": 0.0},
        {"epsilon": -1.0},
        {"e0": "1"},
        {"trajectory_stride": 2.5},
        {"record_trajectory": "false"},
        {"record_trajectory": 1},
        {"profile": {"kind": "nope"}},
    ],
)
def test_build_sim_config_rejects_invalid(overrides) -> None:
    """Test invalid run documents."""
    with pytest.raises(ConfigurationError):
        build_sim_config(run_document(**overrides), Config())


def test_build_sim_config_requires_profile() -> None:
    """Test that the profile block is mandatory."""
    data = run_document()
    del data["profile"]
    with pytest.raises(ConfigurationError, match="profile"):
        build_sim_config(data, Config())


def test_load_sim_config(tmp_path: Path) -> None:
    """Test loading a run document from disk."""
    path = tmp_path / "run.json"
    path.write_text(json.dumps(run_document(dt=1e-3, t0=1.0)))
    config = load_sim_config(str(path))
    assert config.dt == 1e-3
    assert config.t0 == 1.0
