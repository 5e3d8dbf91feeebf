"""Console UI."""

import math

from rich.console import Console

from certann.ui import ui_events
from certann.ui.render_protocol import render_using_registered_renderer

SIGNIFICANT_DIGITS = 6


def format_number(value: float | int) -> str:
    """Six significant digits for floats; integers unchanged."""
    if isinstance(value, int):
        return str(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


class ConsoleUI:
    """Writes command output to stdout and errors to stderr.

    Anything with a registered renderer can be displayed.
    """

    def __init__(
        self,
        console: Console | None = None,
        err_console: Console | None = None,
    ) -> None:
        """Initialize with optional consoles, e.g. recording ones in tests."""
        self.console = console or Console(highlight=False, soft_wrap=True)
        self.err_console = err_console or Console(stderr=True, highlight=False)

    def display(self, obj: object) -> None:
        """Render obj on stdout."""
        render_using_registered_renderer(obj, self.console)

    def display_info(self, message: str) -> None:
        """Show an informational line."""
        self.display(ui_events.Info(message))

    def display_warning(self, message: str) -> None:
        """Show a warning on stderr."""
        render_using_registered_renderer(ui_events.Warn(message), self.err_console)

    def display_error(self, message: str) -> None:
        """Show an error on stderr."""
        render_using_registered_renderer(ui_events.Error(message), self.err_console)
