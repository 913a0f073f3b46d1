"""Wire protocol: canonical JSON-lines for client events and notifications.

Design notes:

- One JSON object per line, compact separators, keys in schema order.
  Serializing the same payload twice yields identical bytes, which is what
  makes traces and notification histories byte-comparable.
- Client events are validated strictly: unknown event types and unknown or
  missing fields are rejected, so a trace can never contain a line the
  replayer would interpret differently.
- Notifications are built engine-side only and never parsed back here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Union

from .errors import ProtocolError
from .geometry import CellCoord, RectSpan
from .matrix import DiodeMode
from .narrate import ButtonKind, Utterance
from .tracker import LayoutEvent


def dumps(obj: Any) -> str:
    """Canonical JSON text for one wire object (no trailing newline)."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


# ------------------------------------------------------------------ events


@dataclass(frozen=True)
class CornerDown:
    cell: CellCoord
    resistance_ohms: float
    ts: float


@dataclass(frozen=True)
class CornerUp:
    cell: CellCoord
    ts: float


@dataclass(frozen=True)
class ButtonPress:
    kind: ButtonKind
    ts: float


@dataclass(frozen=True)
class SetDiodeMode:
    mode: DiodeMode
    ts: float


@dataclass(frozen=True)
class SetSeed:
    seed: int
    ts: float


WireEvent = Union[CornerDown, CornerUp, ButtonPress, SetDiodeMode, SetSeed]

_EVENT_FIELDS = {
    "corner_down": {"type", "ts", "cell", "resistance_ohms"},
    "corner_up": {"type", "ts", "cell"},
    "button": {"type", "ts", "kind"},
    "set_diode_mode": {"type", "ts", "mode"},
    "set_seed": {"type", "ts", "seed"},
}


def _number(obj: dict, key: str) -> float:
    v = obj.get(key)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ProtocolError(f"field '{key}' must be a number")
    return float(v)


def _cell(obj: dict) -> CellCoord:
    v = obj.get("cell")
    if (
        not isinstance(v, list)
        or len(v) != 2
        or any(isinstance(x, bool) or not isinstance(x, int) for x in v)
    ):
        raise ProtocolError("field 'cell' must be [row, col] integers")
    try:
        return CellCoord(row=v[0], col=v[1])
    except ValueError as exc:
        raise ProtocolError(str(exc)) from exc


def parse_event_dict(obj: Any) -> WireEvent:
    if not isinstance(obj, dict):
        raise ProtocolError("event must be a JSON object")
    etype = obj.get("type")
    if etype not in _EVENT_FIELDS:
        raise ProtocolError(f"unknown event type {etype!r}")
    if set(obj) != _EVENT_FIELDS[etype]:
        extra = set(obj) - _EVENT_FIELDS[etype]
        missing = _EVENT_FIELDS[etype] - set(obj)
        raise ProtocolError(
            f"bad fields for {etype}: unexpected {sorted(extra)}, missing {sorted(missing)}"
        )
    ts = _number(obj, "ts")
    if etype == "corner_down":
        return CornerDown(cell=_cell(obj), resistance_ohms=_number(obj, "resistance_ohms"), ts=ts)
    if etype == "corner_up":
        return CornerUp(cell=_cell(obj), ts=ts)
    if etype == "button":
        try:
            kind = ButtonKind(obj["kind"])
        except ValueError as exc:
            raise ProtocolError(f"unknown button kind {obj['kind']!r}") from exc
        return ButtonPress(kind=kind, ts=ts)
    if etype == "set_diode_mode":
        try:
            mode = DiodeMode(obj["mode"])
        except ValueError as exc:
            raise ProtocolError(f"unknown diode mode {obj['mode']!r}") from exc
        return SetDiodeMode(mode=mode, ts=ts)
    seed = obj["seed"]
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise ProtocolError("field 'seed' must be a 64-bit unsigned integer")
    return SetSeed(seed=seed, ts=ts)


def parse_event_line(line: str) -> WireEvent:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"not valid JSON: {exc.msg}") from exc
    return parse_event_dict(obj)


def event_to_dict(event: WireEvent) -> dict:
    """Schema-ordered dict for an event; inverse of parse_event_dict."""
    if isinstance(event, CornerDown):
        return {
            "type": "corner_down",
            "ts": event.ts,
            "cell": [event.cell.row, event.cell.col],
            "resistance_ohms": event.resistance_ohms,
        }
    if isinstance(event, CornerUp):
        return {"type": "corner_up", "ts": event.ts, "cell": [event.cell.row, event.cell.col]}
    if isinstance(event, ButtonPress):
        return {"type": "button", "ts": event.ts, "kind": event.kind.value}
    if isinstance(event, SetDiodeMode):
        return {"type": "set_diode_mode", "ts": event.ts, "mode": event.mode.value}
    return {"type": "set_seed", "ts": event.ts, "seed": event.seed}


# ------------------------------------------------------------- notifications


def _span_list(span: RectSpan) -> list[int]:
    return [span.top, span.left, span.bottom, span.right]


def layout_event_payload(event: LayoutEvent) -> dict:
    payload: dict[str, Any] = {"kind": event.kind.value}
    if event.bracket_id is not None:
        payload["id"] = event.bracket_id
    if event.bracket_type is not None:
        payload["bracket_type"] = event.bracket_type.value
    if event.span is not None:
        payload["span"] = _span_list(event.span)
    if event.old_span is not None:
        payload["old_span"] = _span_list(event.old_span)
    if event.cells:
        payload["cells"] = [[c.row, c.col] for c in event.cells]
    return payload


def layout_event_notification(tick: int, event: LayoutEvent) -> dict:
    return {"tick": tick, "kind": "layout_event", "event": layout_event_payload(event)}


def utterance_notification(tick: int, utterance: Utterance) -> dict:
    return {
        "tick": tick,
        "kind": "utterance",
        "text": utterance.text,
        "est_duration_s": utterance.est_duration_s,
        "trigger": utterance.trigger,
    }


def snapshot_notification(tick: int, layout: dict) -> dict:
    return {"tick": tick, "kind": "snapshot", "layout": layout}


def html_notification(tick: int, document: str) -> dict:
    return {"tick": tick, "kind": "html", "document": document}


def anomaly_notification(
    tick: int,
    source: str,
    reason: str,
    detail: str,
    cell: CellCoord | None = None,
) -> dict:
    return {
        "tick": tick,
        "kind": "anomaly",
        "anomaly": {
            "source": source,
            "reason": reason,
            "detail": detail,
            "cell": None if cell is None else [cell.row, cell.col],
        },
    }


__all__ = [
    "ButtonPress",
    "CornerDown",
    "CornerUp",
    "SetDiodeMode",
    "SetSeed",
    "WireEvent",
    "anomaly_notification",
    "dumps",
    "event_to_dict",
    "html_notification",
    "layout_event_notification",
    "layout_event_payload",
    "parse_event_dict",
    "parse_event_line",
    "snapshot_notification",
    "utterance_notification",
]
