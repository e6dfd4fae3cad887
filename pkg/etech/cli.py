"""Command line interface for etech."""

import logging
import sys
from typing import Optional, Tuple

import click
from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    TextColumn,
    TimeElapsedColumn,
)

from . import __version__
from .bench.report import create_sweep_table
from .bench.scenarios import Scenario, load_sweep_spec, parse_grid, preset
from .bench.sweep import SweepResult, run_sweep
from .bench.writer import emit_csv, emit_trajectory_csv
from .core.banner import get_banner
from .core.config import get_config, load_sim_config
from .core.console import (
    create_outcome_panel,
    print_banner,
    print_error,
    print_success,
    print_warning,
)
from .core.engine import simulate
from .core.exceptions import ConfigurationError, EtechError, OutputError
from .core.logging import setup_logging

logger = logging.getLogger(__name__)

EXIT_IO_ERROR = 1
EXIT_CONFIG_ERROR = 2


def _fail(error: Exception, verbose: bool) -> None:
    """Print the error and exit with the matching status code."""
    if isinstance(error, ConfigurationError):
        print_error(f"Configuration error: {error}")
        sys.exit(EXIT_CONFIG_ERROR)
    if isinstance(error, (OutputError, OSError)):
        print_error(f"I/O error: {error}")
        sys.exit(EXIT_IO_ERROR)
    print_error(f"Unexpected error: {error}")
    if verbose:
        logger.exception("Detailed error information:")
    sys.exit(EXIT_IO_ERROR)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("-v", "--verbose", is_flag=True, help="Enable verbose output")
@click.option("--style/--no-style", default=True, help="Enable/disable rich styling")
@click.option(
    "--log-file",
    type=click.Path(dir_okay=False),
    default=None,
    help="Also write a detailed log to this file",
)
@click.version_option(version=__version__, prog_name="etech")
@click.pass_context
def main(
    ctx: click.Context, verbose: bool, style: bool, log_file: Optional[str]
) -> None:
    """Simulate an energy-harvesting transmitter under event-triggered control."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["style"] = style
    try:
        defaults = get_config()
    except EtechError as e:
        _fail(e, verbose)
    if style:
        print_banner(get_banner())
    setup_logging(log_file or defaults.log_file, verbose, style)
    ctx.obj["defaults"] = defaults


@main.command()
@click.option(
    "-c",
    "--config",
    "config_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Run configuration (JSON)",
)
@click.option(
    "-t",
    "--trajectory",
    type=click.Path(dir_okay=False),
    default=None,
    help="Write the sampled trajectory to this CSV file",
)
@click.pass_context
def run(ctx: click.Context, config_path: str, trajectory: Optional[str]) -> None:
    """Simulate one configuration and report its transmission time."""
    verbose = ctx.obj["verbose"]
    try:
        config = load_sim_config(config_path)
        if trajectory:
            config.record_trajectory = True
        outcome = simulate(config)

        if ctx.obj["style"]:
            Console().print(create_outcome_panel(config, outcome))
        else:
            click.echo(f"policy: {config.policy.name}")
            click.echo(f"transmission_time: {outcome.time_or_inf}")
            click.echo(f"events: {outcome.event_count}")

        if trajectory and outcome.trajectory is not None:
            emit_trajectory_csv(outcome.trajectory, trajectory)
            print_success(f"Trajectory written to {trajectory}")
        if not outcome.finished:
            print_warning(f"Queue not cleared within t_cutoff={config.t_cutoff:g}")
    except (EtechError, OSError) as e:
        _fail(e, verbose)


@main.command()
@click.option(
    "-s",
    "--scenario",
    type=click.Choice([s.value for s in Scenario if s is not Scenario.CUSTOM]),
    default=None,
    help="Scenario preset to sweep",
)
@click.option(
    "-c",
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Sweep configuration (JSON)",
)
@click.option(
    "-e",
    "--epsilon",
    "epsilons",
    multiple=True,
    type=float,
    help="Triggering threshold (can be used multiple times)",
)
@click.option("--grid", default=None, help="Parameter grid as lo:step:hi")
@click.option("--seed", type=int, default=None, help="Master seed for stochastic runs")
@click.option("--replications", type=int, default=None, help="Replications per value")
@click.option(
    "-w", "--workers", type=int, default=None, help="Worker processes (ETECH_WORKERS)"
)
@click.option(
    "-o", "--out", required=True, type=click.Path(dir_okay=False), help="Output CSV"
)
@click.pass_context
def sweep(
    ctx: click.Context,
    scenario: Optional[str],
    config_path: Optional[str],
    epsilons: Tuple[float, ...],
    grid: Optional[str],
    seed: Optional[int],
    replications: Optional[int],
    workers: Optional[int],
    out: str,
) -> None:
    """Sweep a scenario and write per-cell transmission times to CSV."""
    verbose = ctx.obj["verbose"]
    style = ctx.obj["style"]
    defaults = ctx.obj["defaults"]
    try:
        if (scenario is None) == (config_path is None):
            raise ConfigurationError("Give exactly one of --scenario or --config")
        if config_path is not None:
            spec = load_sweep_spec(config_path)
        else:
            assert scenario is not None
            spec = preset(Scenario.parse(scenario), defaults)
        if epsilons:
            spec.epsilons = list(epsilons)
        if grid:
            spec.param_grid = parse_grid(grid)
        if seed is not None:
            spec.master_seed = seed
        if replications is not None:
            spec.replications = replications

        with Progress(
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            disable=not style or not sys.stdout.isatty(),
        ) as progress:
            task = progress.add_task(f"Sweeping {spec.scenario.value}...", total=None)

            def advance(done: int, total: int) -> None:
                progress.update(task, completed=done, total=total)

            result: SweepResult = run_sweep(
                spec, workers=workers or defaults.workers, progress=advance
            )

        emit_csv(result, out, defaults.csv_precision)
        if style:
            Console().print(create_sweep_table(result))
        print_success(f"Sweep written to {out}")
    except (EtechError, OSError) as e:
        _fail(e, verbose)


# For backward compatibility and entry point
cli = main

if __name__ == "__main__":  # pragma: no cover
    main()
