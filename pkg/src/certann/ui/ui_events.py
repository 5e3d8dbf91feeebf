"""Plain messages commands send to the console, with their renderers."""

from rich.console import Console
from rich.text import Text

from certann.ui.colors import Styles
from certann.ui.render_protocol import register_renderer

# ruff: noqa: D101, D103


class _Str(str):
    __slots__ = ()


class Error(_Str):
    pass


@register_renderer
def render_error(obj: Error, console: Console) -> None:
    console.print(Text(f"error: {obj}"), style=Styles.RICH_ERROR)


class Warn(_Str):
    pass


@register_renderer
def render_warn(obj: Warn, console: Console) -> None:
    console.print(Text(f"warning: {obj}"), style=Styles.RICH_WARNING)


class Info(_Str):
    pass


@register_renderer
def render_info(obj: Info, console: Console) -> None:
    console.print(Text(obj), style=Styles.RICH_INFO)
