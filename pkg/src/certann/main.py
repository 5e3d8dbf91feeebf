"""certann CLI entry point."""

import sys
from collections.abc import Callable
from importlib.metadata import version
from pathlib import Path

from dotenv import load_dotenv

from certann.args import (
    BenchArgs,
    BuildArgs,
    CommonArgs,
    QueryArgs,
    ValidateArgs,
    VersionArgs,
    bind_and_run,
)
from certann.commands.base_command import Command
from certann.commands.definitions import (
    BenchCommand,
    BuildCommand,
    QueryCommand,
    ValidateCommand,
)
from certann.errors import CertannError, InvariantViolationError
from certann.log import get_logger, init_logging
from certann.ui.console_ui import ConsoleUI

logger = get_logger(__name__)


def show_version() -> None:
    """Display the application version and exit."""
    try:
        app_version = version("certann")
        print(f"certann {app_version}")  # noqa: T201
    except Exception:  # noqa: BLE001
        print("certann (version unknown)")  # noqa: T201
    sys.exit(0)


def _prepare(args: CommonArgs) -> None:
    cwd = Path.cwd()
    # .env may set CERTANN_LOG, so it is read before logging starts
    load_dotenv(dotenv_path=cwd / ".env", override=False)
    init_logging(verbose=args.verbose)


def run_command[A: CommonArgs](
    command_factory: Callable[[A, ConsoleUI], Command],
    args: A,
) -> None:
    """Run a command, exiting with the code of its error family on failure."""
    _prepare(args)
    ui = ConsoleUI()
    name = getattr(command_factory, "__name__", "command")
    try:
        command_factory(args, ui).execute()
    except CertannError as err:
        logger.debug("%s failed", name, exc_info=True)
        ui.display_error(str(err))
        sys.exit(err.exit_code)
    except Exception as err:
        logger.exception("Unexpected error in %s", name)
        ui.display_error(f"internal error: {err}")
        sys.exit(InvariantViolationError.exit_code)


def run_build(args: BuildArgs) -> None:
    """Handle certann build."""
    run_command(BuildCommand, args)


def run_query(args: QueryArgs) -> None:
    """Handle certann query."""
    run_command(QueryCommand, args)


def run_bench(args: BenchArgs) -> None:
    """Handle certann bench."""
    run_command(BenchCommand, args)


def run_validate(args: ValidateArgs) -> None:
    """Handle certann validate."""
    run_command(ValidateCommand, args)


def run_version(_: VersionArgs) -> None:
    """Handle certann version."""
    show_version()


def main(argv: list[str] | None = None) -> None:
    """Entry point for the CLI."""
    bind_and_run(run_build, run_query, run_bench, run_validate, run_version, argv)


if __name__ == "__main__":
    main()
