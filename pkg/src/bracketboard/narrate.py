"""Narration: layout events and button presses as screen-reader text.

Every utterance follows the order type, then location, then size, and uses
1-indexed columns and rows.  Durations assume the comfortable listening
rate of 170 words per minute; a word is a whitespace-separated token.  The
engine only emits text plus timing metadata; speech synthesis, if any,
belongs to the client.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .decode import BracketType
from .geometry import CellCoord, RectSpan
from .tracker import LayoutEvent, LayoutEventKind, LayoutSnapshot, PlacedBracket

WORDS_PER_MINUTE = 170


@dataclass(frozen=True)
class Utterance:
    text: str
    trigger: str

    @property
    def word_count(self) -> int:
        return len(self.text.split())

    @property
    def est_duration_s(self) -> float:
        return self.word_count / WORDS_PER_MINUTE * 60.0


class ButtonKind(Enum):
    REPEAT_LAST = "repeat_last"
    READ_ALL = "read_all"


def _span_phrase(span: RectSpan) -> str:
    return (
        f"Location: columns {span.left + 1} to {span.right + 1}, "
        f"rows {span.top + 1} to {span.bottom + 1}. "
        f"Size: {span.width_cells} columns by {span.height_cells} rows."
    )


def describe_bracket(bracket: PlacedBracket, verb: str) -> Utterance:
    """'<Type> bracket <verb>.' plus location and size, except for removals."""
    name = bracket.type.display_name
    if verb == "removed":
        text = f"{name} bracket removed."
    else:
        text = f"{name} bracket {verb}. {_span_phrase(bracket.span)}"
    return Utterance(text=text, trigger=f"bracket_{verb}")


def misalignment_utterance(cells: tuple[CellCoord, ...], btype: BracketType) -> Utterance:
    """Warn about an unrecognizable bracket, naming the latest-arrived corner."""
    if not cells:
        raise ValueError("a misalignment warning needs at least one cell")
    c = cells[-1]
    text = (
        f"Warning: {btype.display_name} bracket not recognized. "
        f"Check corner at column {c.col + 1}, row {c.row + 1}."
    )
    return Utterance(text=text, trigger="misalignment_warning")


def partial_placement_utterance(cells: tuple[CellCoord, ...], btype: BracketType) -> Utterance:
    n = len(cells)
    noun = "corner" if n == 1 else "corners"
    text = f"Warning: {btype.display_name} bracket incomplete. {n} {noun} left on the board."
    return Utterance(text=text, trigger="partial_placement")


def narrate_event(event: LayoutEvent) -> Utterance:
    """The utterance announced for one layout event."""
    if event.kind is LayoutEventKind.MISALIGNMENT_WARNING:
        assert event.bracket_type is not None
        return misalignment_utterance(event.cells, event.bracket_type)
    if event.kind is LayoutEventKind.PARTIAL_PLACEMENT:
        assert event.bracket_type is not None
        return partial_placement_utterance(event.cells, event.bracket_type)
    assert event.bracket_id is not None and event.bracket_type is not None
    assert event.span is not None
    bracket = PlacedBracket(event.bracket_id, event.bracket_type, event.span, event.tick)
    verb = {
        LayoutEventKind.BRACKET_PLACED: "placed",
        LayoutEventKind.BRACKET_RESIZED: "resized",
        LayoutEventKind.BRACKET_MOVED: "moved",
        LayoutEventKind.BRACKET_REMOVED: "removed",
    }[event.kind]
    return describe_bracket(bracket, verb)


def handle_button(
    kind: ButtonKind,
    snapshot: LayoutSnapshot,
    last_described: Utterance | None,
) -> Utterance:
    """Respond to the repeat-last or read-all hardware button."""
    if kind is ButtonKind.REPEAT_LAST:
        if last_described is None:
            return Utterance("No bracket information yet.", trigger="repeat_last")
        return Utterance(last_described.text, trigger="repeat_last")
    parts = [f"{len(snapshot.brackets)} brackets on the board."]
    reading_order = sorted(snapshot.brackets, key=lambda b: (b.span.top, b.span.left))
    parts.extend(describe_bracket(b, "placed").text for b in reading_order)
    return Utterance(" ".join(parts), trigger="read_all")
