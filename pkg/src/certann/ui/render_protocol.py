"""Registry mapping report types to functions that draw them on a rich Console."""

from typing import Any, Protocol, TypeVar, runtime_checkable

from rich.console import Console

T_Rendered_contra = TypeVar("T_Rendered_contra", contravariant=True)


@runtime_checkable
class RendererFn(Protocol[T_Rendered_contra]):
    """Draws one object on a console."""

    def __call__(self, obj: T_Rendered_contra, console: Console) -> None:
        """Render obj."""
        ...


_renderers: dict[type, RendererFn[Any]] = {}


def register_renderer[T_Rendered_contra](
    renderer: RendererFn[T_Rendered_contra],
) -> RendererFn[T_Rendered_contra]:
    """Register renderer for the type annotated on its first parameter.

    The annotation must be a class object, not a string.
    """
    if not isinstance(renderer, RendererFn):
        msg = f"{renderer!r} is not a renderer function"
        raise TypeError(msg)
    rendered = next(iter(renderer.__annotations__.values()), None)
    if not isinstance(rendered, type):
        msg = f"renderer {renderer.__name__} must annotate the rendered class"
        raise TypeError(msg)
    _renderers[rendered] = renderer
    return renderer


def render_using_registered_renderer(obj: object, console: Console) -> None:
    """Render obj with the renderer of its type or its nearest registered base."""
    for klass in type(obj).__mro__:
        renderer = _renderers.get(klass)
        if renderer:
            renderer(obj, console)
            return
    msg = f"no renderer registered for {type(obj).__name__}"
    raise ValueError(msg)
