"""Deterministic HTML and JSON projections of a layout snapshot.

The page is a fixed 1560 x 2080 px canvas with one absolutely positioned
child per placed bracket, in ascending id order (later ids paint on top).
Geometry comes straight from span_to_px, so every coordinate is a multiple
of the 130 px cell.  All styling is inlined and placeholder media are
inline vector graphics: rendering the same snapshot twice yields identical
bytes, and the document needs no network access.
"""

from __future__ import annotations

import json

from .decode import BracketType
from .geometry import BOARD, span_to_px
from .tracker import LayoutSnapshot

_PLACEHOLDERS = {
    BracketType.TEXT: (
        "#fdfdfd",
        '<svg viewBox="0 0 120 120" width="100%" height="100%" '
        'preserveAspectRatio="none" role="img" aria-label="Text placeholder">'
        '<rect x="12" y="16" width="96" height="9" fill="#9a9a9a"/>'
        '<rect x="12" y="37" width="96" height="9" fill="#c0c0c0"/>'
        '<rect x="12" y="58" width="96" height="9" fill="#c0c0c0"/>'
        '<rect x="12" y="79" width="72" height="9" fill="#c0c0c0"/>'
        "</svg>"
    ),
    BracketType.IMAGE: (
        "#eef3f6",
        '<svg viewBox="0 0 120 120" width="100%" height="100%" '
        'preserveAspectRatio="none" role="img" aria-label="Image placeholder">'
        '<rect x="8" y="8" width="104" height="104" fill="#dce6ec" stroke="#9db4c0" stroke-width="3"/>'
        '<circle cx="44" cy="44" r="12" fill="#9db4c0"/>'
        '<path d="M20 96 L52 60 L72 82 L88 66 L100 96 Z" fill="#9db4c0"/>'
        "</svg>"
    ),
    BracketType.VIDEO: (
        "#20242a",
        '<svg viewBox="0 0 120 120" width="100%" height="100%" '
        'preserveAspectRatio="none" role="img" aria-label="Video placeholder">'
        '<rect x="0" y="0" width="120" height="120" fill="#20242a"/>'
        '<circle cx="60" cy="60" r="26" fill="#3a424d"/>'
        '<path d="M52 44 L82 60 L52 76 Z" fill="#f2f2f2"/>'
        "</svg>"
    ),
}

_PAGE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>Board layout</title>
</head>
<body style="margin:0;background:#6f6f6f;">
<div id="canvas" style="position:relative;width:{w}px;height:{h}px;margin:0 auto;background:#ffffff;overflow:hidden;">
{children}</div>
</body>
</html>
"""

_CHILD = (
    '<div id="bracket-{id}" data-type="{type}" data-span="{top},{left},{bottom},{right}" '
    'style="position:absolute;left:{x}px;top:{y}px;width:{width}px;height:{height}px;'
    'box-sizing:border-box;border:4px solid #4a4a4a;background:{bg};">{media}</div>\n'
)


def render(snapshot: LayoutSnapshot) -> bytes:
    """Standalone UTF-8 HTML document for a snapshot, trailing newline included."""
    children = []
    for b in sorted(snapshot.brackets, key=lambda b: b.id):
        px = span_to_px(b.span)
        bg, media = _PLACEHOLDERS[b.type]
        children.append(
            _CHILD.format(
                id=b.id,
                type=b.type.value,
                top=b.span.top,
                left=b.span.left,
                bottom=b.span.bottom,
                right=b.span.right,
                x=px.x,
                y=px.y,
                width=px.width,
                height=px.height,
                bg=bg,
                media=media,
            )
        )
    page = _PAGE.format(w=BOARD.canvas_px[0], h=BOARD.canvas_px[1], children="".join(children))
    return page.encode("utf-8")


def layout_dict(snapshot: LayoutSnapshot) -> dict:
    """Layout as a plain dict with a fixed key order, brackets sorted by id."""
    brackets = []
    for b in sorted(snapshot.brackets, key=lambda b: b.id):
        px = span_to_px(b.span)
        brackets.append(
            {
                "id": b.id,
                "type": b.type.value,
                "top": b.span.top,
                "left": b.span.left,
                "bottom": b.span.bottom,
                "right": b.span.right,
                "px": {"x": px.x, "y": px.y, "width": px.width, "height": px.height},
            }
        )
    return {
        "canvas": {"width": BOARD.canvas_px[0], "height": BOARD.canvas_px[1]},
        "brackets": brackets,
    }


def layout_json(snapshot: LayoutSnapshot) -> str:
    """Canonical JSON text: fixed key order, no insignificant whitespace."""
    return json.dumps(layout_dict(snapshot), separators=(",", ":"))
