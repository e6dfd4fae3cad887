# etech/core/config.py
"""Configuration management for etech.

Package defaults live in ``config.yaml`` next to this module.  Run and sweep
documents are single JSON (or YAML) mappings whose keys mirror the dataclass
field names; unknown keys are rejected.
"""

import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Optional

import yaml

from .exceptions import ConfigurationError, DomainError
from .harvest import (
    CompoundPoissonSinHarvest,
    HarvestProfile,
    PiecewiseConstantHarvest,
    WindowedAbsSinHarvest,
    ZeroHarvest,
)
from .models import PolicyKind, PowerBudget, SimConfig

logger = logging.getLogger(__name__)

WORKERS_ENV = "ETECH_WORKERS"

RUN_KEYS = frozenset(
    {
        "e0",
        "q0",
        "p_max",
        "epsilon",
        "dt",
        "t_cutoff",
        "t0",
        "policy",
        "profile",
        "record_trajectory",
        "trajectory_stride",
    }
)

PROFILE_KEYS = {
    "zero": frozenset(),
    "piecewise_constant": frozenset({"breakpoints"}),
    "windowed_abs_sin": frozenset({"amplitude", "window_end"}),
    "compound_poisson_sin": frozenset(
        {"amplitude", "poisson_rate", "mark_variance", "seed"}
    ),
}


@dataclass
class Config:
    """Configuration container for etech."""

    dt: float = 1e-4
    t_cutoff: float = 50.0
    trajectory_stride: int = 100
    workers: int = 1
    log_file: Optional[str] = None
    csv_precision: int = 10


def load_config_file(config_path: Optional[str] = None) -> Config:
    """Load package defaults from a YAML file.

    Args:
        config_path: Optional path to config file

    Returns:
        Config: Loaded configuration

    Raises:
        ValueError: If config file is invalid
        ConfigurationError: If config file cannot be loaded
    """
    if config_path is None:
        config_path = os.path.join(os.path.dirname(__file__), "config.yaml")

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            try:
                config_data = yaml.safe_load(f)
            except yaml.YAMLError as e:
                raise ValueError(f"Invalid YAML format in config file: {e}") from e
    except OSError as e:
        logger.error("Failed to load config file: %s", e)
        raise ConfigurationError(f"Could not load config file: {e}") from e

    if not isinstance(config_data, dict):
        raise ValueError("Config file must contain a YAML dictionary")

    config = Config()
    config_dict: Dict[str, Any] = config_data

    simulation = config_dict.get("simulation")
    if isinstance(simulation, dict):
        config.dt = float(simulation.get("dt", config.dt))
        config.t_cutoff = float(simulation.get("t_cutoff", config.t_cutoff))
        config.trajectory_stride = int(
            simulation.get("trajectory_stride", config.trajectory_stride)
        )

    sweep = config_dict.get("sweep")
    if isinstance(sweep, dict):
        config.workers = int(sweep.get("workers", config.workers))

    logging_config = config_dict.get("logging")
    if isinstance(logging_config, dict):
        config.log_file = logging_config.get("default_log_file", config.log_file)

    output = config_dict.get("output")
    if isinstance(output, dict):
        config.csv_precision = int(output.get("csv_precision", config.csv_precision))

    return config


def get_config() -> Config:
    """Get package defaults with environment overrides applied.

    Returns:
        Config: Combined configuration

    Raises:
        ConfigurationError: If ETECH_WORKERS is not a positive integer
    """
    config = load_config_file()
    workers = os.environ.get(WORKERS_ENV)
    if workers:
        try:
            config.workers = int(workers)
        except ValueError as e:
            raise ConfigurationError(
                f"{WORKERS_ENV} must be an integer, got '{workers}'"
            ) from e
        if config.workers < 1:
            raise ConfigurationError(f"{WORKERS_ENV} must be at least 1")
    return config


def load_document(path: str) -> Dict[str, Any]:
    """Read a JSON or YAML mapping from disk.

    ``.json`` files go through the JSON parser, which reads exponent floats
    such as ``1e-4`` as numbers; everything else is parsed as YAML.

    Raises:
        ConfigurationError: If the file is missing, malformed or not a mapping
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            if path.lower().endswith(".json"):
                data = json.load(f)
            else:
                data = yaml.safe_load(f)
    except OSError as e:
        logger.error("Failed to read config document %s: %s", path, e)
        raise ConfigurationError(f"Could not read config document {path}: {e}") from e
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"Invalid config document {path}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigurationError(f"Config document {path} must contain a mapping")
    return data


def reject_unknown(
    section: str, data: Mapping[str, Any], allowed: Iterable[str]
) -> None:
    """Raise if the mapping carries keys outside the allowed set."""
    if not isinstance(data, Mapping):
        raise ConfigurationError(f"{section} must be a mapping")
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigurationError(f"Unknown keys in {section}: {', '.join(unknown)}")


def number(data: Mapping[str, Any], key: str, default: Optional[float] = None) -> float:
    """Fetch a numeric field, falling back to a default when absent."""
    if key not in data:
        if default is None:
            raise ConfigurationError(f"Missing required field '{key}'")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigurationError(f"Field '{key}' must be a number, got {value!r}")
    return float(value)


def integer(data: Mapping[str, Any], key: str, default: Optional[int] = None) -> int:
    """Fetch an integer field, falling back to a default when absent."""
    if key not in data:
        if default is None:
            raise ConfigurationError(f"Missing required field '{key}'")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigurationError(f"Field '{key}' must be an integer, got {value!r}")
    return value


def flag(data: Mapping[str, Any], key: str, default: bool = False) -> bool:
    """Fetch a boolean field; strings and numbers are rejected."""
    value = data.get(key, default)
    if not isinstance(value, bool):
        raise ConfigurationError(f"Field '{key}' must be true or false, got {value!r}")
    return value


def number_list(data: Mapping[str, Any], key: str) -> List[float]:
    """Fetch a list of numbers."""
    values = data[key]
    if not isinstance(values, list):
        raise ConfigurationError(f"Field '{key}' must be a list of numbers")
    return [number({key: v}, key) for v in values]


def build_profile(block: Mapping[str, Any], t0: float = 0.0) -> HarvestProfile:
    """Construct a harvesting profile from its configuration block.

    Args:
        block: Mapping with a ``kind`` and the parameters of that kind
        t0: Start of the time axis, used by the stochastic kind

    Returns:
        HarvestProfile: The profile

    Raises:
        ConfigurationError: If the kind or its parameters are invalid
    """
    if not isinstance(block, Mapping):
        raise ConfigurationError("profile must be a mapping")
    kind = block.get("kind")
    if kind not in PROFILE_KEYS:
        raise ConfigurationError(
            f"Unknown profile kind {kind!r}, expected one of: {', '.join(PROFILE_KEYS)}"
        )
    params = {k: v for k, v in block.items() if k != "kind"}
    reject_unknown(f"profile '{kind}'", params, PROFILE_KEYS[kind])

    try:
        if kind == "zero":
            return ZeroHarvest()
        if kind == "piecewise_constant":
            breakpoints = params.get("breakpoints")
            if not isinstance(breakpoints, list) or not all(
                isinstance(bp, (list, tuple))
                and len(bp) == 2
                and all(
                    isinstance(x, (int, float)) and not isinstance(x, bool) for x in bp
                )
                for bp in breakpoints
            ):
                raise ConfigurationError(
                    "breakpoints must be a list of [t_start, rate] pairs"
                )
            return PiecewiseConstantHarvest(
                [(float(t), float(r)) for t, r in breakpoints]
            )
        if kind == "windowed_abs_sin":
            return WindowedAbsSinHarvest(
                number(params, "amplitude"), number(params, "window_end")
            )
        if not isinstance(params.get("seed"), int) or isinstance(params["seed"], bool):
            raise ConfigurationError("compound_poisson_sin needs an integer seed")
        return CompoundPoissonSinHarvest(
            amplitude=number(params, "amplitude"),
            poisson_rate=number(params, "poisson_rate", 2.0),
            mark_variance=number(params, "mark_variance", 1.0),
            seed=params["seed"],
            t0=t0,
        )
    except DomainError as e:
        raise ConfigurationError(f"Invalid profile '{kind}': {e}") from e


def build_sim_config(
    data: Mapping[str, Any], defaults: Optional[Config] = None
) -> SimConfig:
    """Turn a run document into a validated SimConfig.

    Raises:
        ConfigurationError: If the document is invalid
    """
    defaults = defaults or get_config()
    reject_unknown("run config", data, RUN_KEYS)
    if "profile" not in data:
        raise ConfigurationError("Missing required field 'profile'")

    t0 = number(data, "t0", 0.0)
    try:
        budget = PowerBudget(number(data, "p_max"))
    except DomainError as e:
        raise ConfigurationError(str(e)) from e

    config = SimConfig(
        e0=number(data, "e0"),
        q0=number(data, "q0"),
        budget=budget,
        epsilon=number(data, "epsilon"),
        profile=build_profile(data["profile"], t0),
        policy=PolicyKind.from_name(str(data.get("policy", "robust"))),
        dt=number(data, "dt", defaults.dt),
        t_cutoff=number(data, "t_cutoff", defaults.t_cutoff),
        t0=t0,
        record_trajectory=flag(data, "record_trajectory"),
        trajectory_stride=integer(data, "trajectory_stride", defaults.trajectory_stride),
    )
    config.validate()
    return config


def load_sim_config(path: str) -> SimConfig:
    """Load and validate a run document."""
    logger.debug("Loading run config from %s", path)
    return build_sim_config(load_document(path))
