# tests/test_version.py
"""Test suite for version management."""

import re

from click.testing import CliRunner

import etech
from etech import __version__
from etech.cli import main


def test_version_format() -> None:
    """Test that the version starts with major.minor.patch."""
    # setuptools_scm may append .devN or .postN
    assert re.match(r"^\d+\.\d+\.\d+", __version__), __version__


def test_version_matches_cli() -> None:
    """Test that the CLI reports the package version."""
    result = CliRunner().invoke(main, ["--version"])
    assert result.exit_code == 0
    assert result.output.strip() == f"etech, version {__version__}"


def test_public_api() -> None:
    """Test the names exported at package level."""
    assert set(etech.__all__) == {
        "EtechError",
        "PlannedTransmission",
        "PolicyKind",
        "PowerBudget",
        "SimConfig",
        "simulate",
    }
    assert callable(etech.simulate)
