# etech/bench/scenarios.py
"""Sweep specifications, scenario presets and profile factories."""

from __future__ import annotations

import copy
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional

import numpy as np

from ..core.config import (
    Config,
    build_profile,
    get_config,
    integer,
    load_document,
    number,
    number_list,
    reject_unknown,
)
from ..core.exceptions import ConfigurationError
from ..core.harvest import (
    CompoundPoissonSinHarvest,
    HarvestProfile,
    PiecewiseConstantHarvest,
    WindowedAbsSinHarvest,
)
from ..core.models import (
    ESTIMATION,
    ESTIMATION_MODIFIED,
    GREEDY,
    ROBUST,
    PolicyKind,
)

logger = logging.getLogger(__name__)

SWEEP_KEYS = frozenset(
    {
        "scenario",
        "param_grid",
        "grid",
        "policies",
        "epsilons",
        "base",
        "replications",
        "master_seed",
        "profile",
        "sweep_field",
    }
)
BASE_KEYS = frozenset({"e0", "q0", "p_max", "dt", "t_cutoff", "t0"})

# Scenario 1 drops to a tenth of the initial rate at this instant
S1_DROP_TIME = 0.2
S2_WINDOW_END = 1.0
S3_POISSON_RATE = 2.0
S3_MARK_VARIANCE = 1.0


class Scenario(Enum):
    """Harvesting-profile families the sweep knows how to build."""

    S1 = "s1"
    S2 = "s2"
    S3 = "s3"
    CUSTOM = "custom"

    @classmethod
    def parse(cls, value: str) -> "Scenario":
        """Look a scenario up by its configuration name.

        Raises:
            ConfigurationError: If the name is unknown
        """
        try:
            return cls(value.strip().lower())
        except ValueError as e:
            names = ", ".join(s.value for s in cls)
            raise ConfigurationError(
                f"Unknown scenario '{value}', expected one of: {names}"
            ) from e


@dataclass(frozen=True)
class BaseParams:
    """SimConfig fields shared by every cell of a sweep."""

    e0: float
    q0: float
    p_max: float
    dt: float = 1e-4
    t_cutoff: float = 50.0
    t0: float = 0.0


@dataclass
class SweepSpec:
    """What to sweep and over which policies and thresholds."""

    scenario: Scenario
    param_grid: List[float]
    policies: List[PolicyKind]
    epsilons: List[float]
    base: BaseParams
    replications: int = 1
    master_seed: Optional[int] = None
    profile_template: Optional[Dict[str, Any]] = None
    sweep_field: Optional[str] = None

    def validate(self) -> None:
        """Check the sweep invariants.

        Raises:
            ConfigurationError: If the sweep is inconsistent
        """
        if not self.param_grid:
            raise ConfigurationError("param_grid must not be empty")
        if any(b <= a for a, b in zip(self.param_grid, self.param_grid[1:])):
            raise ConfigurationError("param_grid must be strictly ascending")
        if not self.policies:
            raise ConfigurationError("policies must not be empty")
        if not self.epsilons or any(not eps > 0 for eps in self.epsilons):
            raise ConfigurationError("epsilons must be a non-empty list of positives")
        if self.replications < 1:
            raise ConfigurationError("replications must be at least 1")
        if self.stochastic and self.master_seed is None:
            raise ConfigurationError("Stochastic sweeps need a master_seed")
        if self.master_seed is not None and self.master_seed < 0:
            raise ConfigurationError("master_seed must be nonnegative")
        if self.scenario is Scenario.CUSTOM and (
            self.profile_template is None or not self.sweep_field
        ):
            raise ConfigurationError("Custom sweeps need a profile and a sweep_field")

    @property
    def stochastic(self) -> bool:
        """Whether profiles are random and need seeds."""
        if self.scenario is Scenario.S3:
            return True
        return bool(
            self.profile_template
            and self.profile_template.get("kind") == "compound_poisson_sin"
        )


def parse_grid(text: str) -> List[float]:
    """Expand ``lo:step:hi`` into an inclusive ascending grid.

    Values are rounded to 12 decimals so that points such as 0.5 on a 0.05
    grid compare equal to their literal.

    Raises:
        ConfigurationError: If the text is malformed or the grid is empty
    """
    try:
        lo, step, hi = (float(part) for part in text.split(":"))
    except ValueError as e:
        raise ConfigurationError(f"Grid must look like lo:step:hi, got '{text}'") from e
    if not step > 0 or hi < lo:
        raise ConfigurationError(f"Grid '{text}' needs step > 0 and hi >= lo")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return np.round(lo + step * np.arange(count), 12).tolist()


def preset(scenario: Scenario, defaults: Optional[Config] = None) -> SweepSpec:
    """Build the default sweep of a named scenario.

    Raises:
        ConfigurationError: For the custom scenario, which has no preset
    """
    defaults = defaults or get_config()
    dt, cutoff = defaults.dt, defaults.t_cutoff
    if scenario is Scenario.S1:
        return SweepSpec(
            scenario=scenario,
            param_grid=parse_grid("0:0.05:2"),
            policies=[ROBUST, ESTIMATION, ESTIMATION_MODIFIED, GREEDY],
            epsilons=[0.05],
            base=BaseParams(e0=1.0, q0=1.0, p_max=3.0, dt=dt, t_cutoff=cutoff),
        )
    if scenario is Scenario.S2:
        return SweepSpec(
            scenario=scenario,
            param_grid=parse_grid("0:0.1:5"),
            policies=[ROBUST, ESTIMATION, ESTIMATION_MODIFIED, GREEDY],
            epsilons=[0.01, 0.2],
            base=BaseParams(e0=0.2, q0=1.0, p_max=3.0, dt=dt, t_cutoff=cutoff),
        )
    if scenario is Scenario.S3:
        return SweepSpec(
            scenario=scenario,
            param_grid=parse_grid("0:0.25:5"),
            policies=[ROBUST, ESTIMATION, ESTIMATION_MODIFIED],
            epsilons=[0.01, 0.05],
            base=BaseParams(e0=1.0, q0=1.0, p_max=3.0, dt=dt, t_cutoff=cutoff),
            replications=200,
            master_seed=0,
        )
    raise ConfigurationError("The custom scenario has no preset")


def cell_seed(master_seed: int, param_index: int, replication: int) -> int:
    """Seed of one (param, replication) sample path.

    Shared by every policy and epsilon of the sweep.
    """
    sequence = np.random.SeedSequence(
        entropy=master_seed, spawn_key=(param_index, replication)
    )
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def profile_for(spec: SweepSpec, param: float, seed: Optional[int]) -> HarvestProfile:
    """Build a fresh harvesting profile for one grid value.

    Raises:
        ConfigurationError: If a stochastic profile is requested without a seed
    """
    if spec.scenario is Scenario.S1:
        return PiecewiseConstantHarvest(
            [(spec.base.t0, param), (spec.base.t0 + S1_DROP_TIME, param / 10.0)]
        )
    if spec.scenario is Scenario.S2:
        return WindowedAbsSinHarvest(param, S2_WINDOW_END)
    if spec.stochastic and seed is None:
        raise ConfigurationError("Stochastic profiles need a seed")
    if spec.scenario is Scenario.S3:
        assert seed is not None
        return CompoundPoissonSinHarvest(
            amplitude=param,
            poisson_rate=S3_POISSON_RATE,
            mark_variance=S3_MARK_VARIANCE,
            seed=seed,
            t0=spec.base.t0,
        )

    assert spec.profile_template is not None and spec.sweep_field
    block = copy.deepcopy(spec.profile_template)
    block[spec.sweep_field] = param
    if seed is not None:
        block["seed"] = seed
    return build_profile(block, spec.base.t0)


def _base_params(data: Mapping[str, Any], fallback: Optional[BaseParams]) -> BaseParams:
    reject_unknown("base", data, BASE_KEYS)
    if fallback is None:
        defaults = get_config()
        fallback = BaseParams(
            e0=number(data, "e0"),
            q0=number(data, "q0"),
            p_max=number(data, "p_max"),
            dt=defaults.dt,
            t_cutoff=defaults.t_cutoff,
        )
    params = BaseParams(
        e0=number(data, "e0", fallback.e0),
        q0=number(data, "q0", fallback.q0),
        p_max=number(data, "p_max", fallback.p_max),
        dt=number(data, "dt", fallback.dt),
        t_cutoff=number(data, "t_cutoff", fallback.t_cutoff),
        t0=number(data, "t0", fallback.t0),
    )
    if params.e0 < 0 or not params.q0 > 0 or not params.p_max > 0:
        raise ConfigurationError("base needs e0 >= 0, q0 > 0 and p_max > 0")
    if not params.dt > 0 or not params.t_cutoff > 0:
        raise ConfigurationError("base needs dt > 0 and t_cutoff > 0")
    return params


def build_sweep_spec(data: Mapping[str, Any]) -> SweepSpec:
    """Turn a sweep document into a validated SweepSpec.

    Named scenarios start from their preset; any field present in the document
    overrides it.

    Raises:
        ConfigurationError: If the document is invalid
    """
    reject_unknown("sweep config", data, SWEEP_KEYS)
    scenario = Scenario.parse(str(data.get("scenario", "")))

    if scenario is Scenario.CUSTOM:
        if "base" not in data:
            raise ConfigurationError("Custom sweeps need a base block")
        spec = SweepSpec(
            scenario=scenario,
            param_grid=[],
            policies=[ROBUST],
            epsilons=[],
            base=_base_params(data["base"], None),
        )
    else:
        spec = preset(scenario)
        if "base" in data:
            spec = replace(spec, base=_base_params(data["base"], spec.base))

    if "param_grid" in data and "grid" in data:
        raise ConfigurationError("Give either param_grid or grid, not both")
    if "param_grid" in data:
        spec.param_grid = number_list(data, "param_grid")
    elif "grid" in data:
        if not isinstance(data["grid"], str):
            raise ConfigurationError("grid must be a 'start:step:stop' string")
        spec.param_grid = parse_grid(data["grid"])

    if "policies" in data:
        names = data["policies"]
        if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
            raise ConfigurationError("policies must be a list of policy names")
        spec.policies = [PolicyKind.from_name(n) for n in names]
    if "epsilons" in data:
        spec.epsilons = number_list(data, "epsilons")
    if "replications" in data:
        spec.replications = integer(data, "replications")
    if data.get("master_seed") is not None:
        spec.master_seed = integer(data, "master_seed")
    if "profile" in data:
        if scenario is not Scenario.CUSTOM:
            raise ConfigurationError("profile is only allowed for custom sweeps")
        if not isinstance(data["profile"], Mapping):
            raise ConfigurationError("profile must be a mapping")
        template = dict(data["profile"])
        sweep_field = data.get("sweep_field")
        if not isinstance(sweep_field, str) or not sweep_field or sweep_field == "kind":
            raise ConfigurationError("Custom sweeps need a sweep_field")
        # validates the template once with a placeholder value
        sample = dict(template, **{sweep_field: 1.0})
        if sample.get("kind") == "compound_poisson_sin":
            sample["seed"] = 0
        build_profile(sample)
        spec.profile_template = template
        spec.sweep_field = sweep_field

    spec.validate()
    return spec


def load_sweep_spec(path: str) -> SweepSpec:
    """Load and validate a sweep document."""
    logger.debug("Loading sweep config from %s", path)
    return build_sweep_spec(load_document(path))
