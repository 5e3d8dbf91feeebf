"""Tests for help functionality."""

import subprocess
import sys


def run_cli(*args: str) -> subprocess.CompletedProcess[str]:
    return subprocess.run(  # noqa: S603
        [sys.executable, "-m", "certann.main", *args],
        check=False,
        capture_output=True,
        text=True,
        timeout=30,
    )


class TestHelpFunctionality:
    """Test help output of the top-level parser and the subcommands."""

    def test_help_long_form(self) -> None:
        """Test that --help lists the subcommands and exits with code 0."""
        result = run_cli("--help")

        assert result.returncode == 0
        assert result.stdout.startswith("usage: ")
        for name in ("build", "query", "bench", "validate", "version"):
            assert name in result.stdout
        assert "show this help message and exit" in result.stdout
        assert result.stderr == ""

    def test_help_short_form(self) -> None:
        """Test that -h behaves like --help."""
        assert run_cli("-h").stdout == run_cli("--help").stdout

    def test_build_help(self) -> None:
        """Test that build documents its parameter flags."""
        result = run_cli("build", "--help")

        assert result.returncode == 0
        for flag in ("--p", "--radius", "--c", "--dist", "--mode", "--k", "--seed"):
            assert flag in result.stdout
        assert "--c-over-tau" in result.stdout
        assert "positional arguments:" in result.stdout

    def test_validate_help_lists_suites(self) -> None:
        """Test that the validate suites appear as choices."""
        result = run_cli("validate", "--help")

        assert result.returncode == 0
        assert "tightness" in result.stdout
        assert "false-positives" in result.stdout
