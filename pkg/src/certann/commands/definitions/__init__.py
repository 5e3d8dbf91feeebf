"""Command implementations, one per subcommand."""

from certann.commands.definitions.bench_command import BenchCommand
from certann.commands.definitions.build_command import BuildCommand
from certann.commands.definitions.query_command import QueryCommand
from certann.commands.definitions.validate_command import ValidateCommand

__all__ = [
    "BenchCommand",
    "BuildCommand",
    "QueryCommand",
    "ValidateCommand",
]
