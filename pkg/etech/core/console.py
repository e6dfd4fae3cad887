# etech/core/console.py
"""Rich console output for etech."""

from __future__ import annotations

import math

from rich.console import Console
from rich.panel import Panel
from rich.style import Style
from rich.text import Text

from .models import SimConfig, SimOutcome

console = Console()
error_console = Console(stderr=True)


def print_banner(text: str) -> None:
    """Print the banner inside a panel when attached to a terminal."""
    if not console.is_terminal:
        console.print(text)
        return

    styled_text = Text(text)
    styled_text.stylize(Style(color="cyan", bold=True))
    console.print(Panel(styled_text, border_style="cyan"))


def print_success(message: str) -> None:
    """Print a success message."""
    console.print(Text("✓ " + message, style="green"))


def print_error(message: str) -> None:
    """Print an error message to stderr."""
    error_console.print(Text("✗ " + message, style="red"))


def print_warning(message: str) -> None:
    """Print a warning message."""
    console.print(Text("⚠ " + message, style="yellow"))


def format_time(value: float) -> str:
    """Render a transmission time, with the cutoff shown as ∞."""
    return "∞ (cutoff)" if math.isinf(value) else f"{value:.6f}"


def create_outcome_panel(config: SimConfig, outcome: SimOutcome) -> Panel:
    """Create a panel summarizing one simulation run.

    Args:
        config: Configuration that was simulated
        outcome: Result of the run

    Returns:
        Rich Panel with policy, profile, transmission time and energy totals
    """
    time_style = "green" if outcome.finished else "red"
    content = [
        Text("Policy: ", style="bold"),
        Text(config.policy.name + "\n"),
        Text("Harvest profile: ", style="bold"),
        Text(config.profile.describe() + "\n"),
        Text("Threshold ε: ", style="bold"),
        Text(f"{config.epsilon:g}\n"),
        Text("\nTransmission time: ", style="bold"),
        Text(format_time(outcome.time_or_inf) + "\n", style=time_style),
        Text("Events: ", style="bold"),
        Text(f"{outcome.event_count}\n", style="blue"),
        Text("Energy harvested: ", style="bold"),
        Text(f"{outcome.harvested_total:.6f}\n", style="magenta"),
        Text("Energy consumed: ", style="bold"),
        Text(f"{outcome.consumed_total:.6f}\n", style="magenta"),
        Text("Final battery: ", style="bold"),
        Text(f"{outcome.final_state.e:.6f}", style="yellow"),
    ]
    return Panel(
        Text().join(content),
        title="Simulation",
        border_style="cyan",
        padding=(1, 2),
    )
