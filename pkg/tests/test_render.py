"""HTML and JSON rendering: geometry, ordering, byte determinism."""

from __future__ import annotations

import json

from bracketboard import (
    BracketType,
    LayoutSnapshot,
    PlacedBracket,
    RectSpan,
    layout_dict,
    layout_json,
    render,
)


def snap(*specs, tick=7):
    brackets = tuple(
        PlacedBracket(bid, btype, RectSpan(t, l, b, r), tick)
        for bid, btype, t, l, b, r in specs
    )
    return LayoutSnapshot(tick=tick, brackets=brackets)


SAMPLE = snap(
    (1, BracketType.IMAGE, 2, 3, 4, 6),
    (2, BracketType.TEXT, 7, 0, 10, 5),
    (3, BracketType.VIDEO, 12, 8, 15, 11),
)


def test_rendering_is_byte_deterministic():
    first = render(SAMPLE)
    assert render(SAMPLE) == first
    shuffled = LayoutSnapshot(tick=7, brackets=tuple(reversed(SAMPLE.brackets)))
    assert render(shuffled) == first


def test_document_shape():
    doc = render(SAMPLE)
    text = doc.decode("utf-8")
    assert text.startswith("<!DOCTYPE html>")
    assert text.endswith("\n")
    assert 'id="canvas"' in text
    assert "width:1560px;height:2080px" in text


def test_child_geometry_is_cell_aligned():
    text = render(SAMPLE).decode("utf-8")
    assert (
        'id="bracket-1" data-type="image" data-span="2,3,4,6" '
        'style="position:absolute;left:390px;top:260px;width:520px;height:390px;'
    ) in text
    assert "left:1040px;top:1560px;width:520px;height:520px" in text  # bracket 3


def test_children_stack_in_id_order():
    text = render(SAMPLE).decode("utf-8")
    assert text.index('id="bracket-1"') < text.index('id="bracket-2"') < text.index(
        'id="bracket-3"'
    )


def test_each_type_gets_distinct_placeholder():
    text = render(SAMPLE).decode("utf-8")
    assert text.count("<svg") == 3
    assert 'aria-label="Text placeholder"' in text
    assert 'aria-label="Image placeholder"' in text
    assert 'aria-label="Video placeholder"' in text


def test_empty_board_renders_bare_canvas():
    text = render(LayoutSnapshot(tick=0)).decode("utf-8")
    assert 'id="canvas"' in text
    assert "bracket-" not in text


def test_layout_dict_golden():
    assert layout_dict(snap((1, BracketType.IMAGE, 2, 3, 4, 6))) == {
        "canvas": {"width": 1560, "height": 2080},
        "brackets": [
            {
                "id": 1,
                "type": "image",
                "top": 2,
                "left": 3,
                "bottom": 4,
                "right": 6,
                "px": {"x": 390, "y": 260, "width": 520, "height": 390},
            }
        ],
    }


def test_layout_json_is_canonical():
    text = layout_json(SAMPLE)
    assert " " not in text
    assert json.loads(text) == layout_dict(SAMPLE)
    # serializing the parsed form the same way reproduces the bytes
    assert json.dumps(json.loads(text), separators=(",", ":")) == text
    assert [b["id"] for b in json.loads(text)["brackets"]] == [1, 2, 3]


def test_layout_json_orders_brackets_by_id():
    shuffled = LayoutSnapshot(tick=7, brackets=tuple(reversed(SAMPLE.brackets)))
    assert layout_json(shuffled) == layout_json(SAMPLE)
