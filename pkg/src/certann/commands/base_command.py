"""Define the base class for all certann commands.

A command is created from its parsed arguments and the console UI, and its
execute() does the work and displays the result. Errors propagate to the entry
point, which maps them to exit codes.
"""

from abc import ABC, abstractmethod

from certann.log import get_logger
from certann.ui.console_ui import ConsoleUI

logger = get_logger(__name__)


class Command(ABC):
    """Abstract Base Class for all certann commands."""

    def __init__(self, ui: ConsoleUI) -> None:
        """Initialize with the UI used for all output."""
        self.ui = ui

    @abstractmethod
    def execute(self) -> None:
        """Execute the command's action."""
