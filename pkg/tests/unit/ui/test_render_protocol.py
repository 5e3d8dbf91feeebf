"""Tests for the renderer registry."""

import io

import pytest
from rich.console import Console

from certann.ui.render_protocol import (
    register_renderer,
    render_using_registered_renderer,
)


class Shape:
    pass


class Square(Shape):
    pass


class Unregistered:
    pass


@register_renderer
def render_shape(obj: Shape, console: Console) -> None:
    console.print(f"shape {type(obj).__name__}")


@pytest.fixture
def console() -> Console:
    return Console(file=io.StringIO(), record=True)


class TestRegistry:
    def test_renders_registered_type(self, console):
        render_using_registered_renderer(Shape(), console)

        assert console.export_text() == "shape Shape\n"

    def test_falls_back_to_base_class(self, console):
        render_using_registered_renderer(Square(), console)

        assert console.export_text() == "shape Square\n"

    def test_unregistered_type(self, console):
        with pytest.raises(ValueError, match="no renderer registered for Unregistered"):
            render_using_registered_renderer(Unregistered(), console)

    def test_rejects_string_annotation(self):
        def render(obj: "Shape", console: Console) -> None:
            del obj, console

        with pytest.raises(TypeError, match="must annotate the rendered class"):
            register_renderer(render)

    def test_rejects_non_callables(self):
        with pytest.raises(TypeError, match="is not a renderer function"):
            register_renderer(42)  # type: ignore[arg-type]
