"""Session traces: a header line plus one timestamped wire event per line.

The header pins everything replay needs to rebuild the engine: the noise
seed, the diode mode, and the constants version in force when the session
ran.  Each event line carries the engine tick the service assigned on
receipt (the index of the next scan), so replay is independent of wall
clock and client timestamps.

Crash safety: the writer flushes after every event, and the reader ignores
a final line with no newline terminator, so a trace cut off mid-write still
replays up to the last complete line.  A *complete* line that fails to
parse aborts with its line number.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass

from .errors import ProtocolError, TraceError
from .matrix import CONSTANTS_VERSION, DiodeMode
from .wire import WireEvent, dumps, event_to_dict, parse_event_dict


@dataclass(frozen=True)
class TraceHeader:
    seed: int
    diode_mode: DiodeMode
    constants_version: str = CONSTANTS_VERSION


def header_line(header: TraceHeader) -> str:
    return dumps(
        {
            "seed": header.seed,
            "diode_mode": header.diode_mode.value,
            "constants_version": header.constants_version,
        }
    )


def parse_header(line: str) -> TraceHeader:
    import json

    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TraceError(1, f"header is not valid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict) or set(obj) != {"seed", "diode_mode", "constants_version"}:
        raise TraceError(1, "header must have exactly seed, diode_mode, constants_version")
    if not isinstance(obj["seed"], int) or isinstance(obj["seed"], bool):
        raise TraceError(1, "header seed must be an integer")
    try:
        mode = DiodeMode(obj["diode_mode"])
    except ValueError:
        raise TraceError(1, f"unknown diode mode {obj['diode_mode']!r}")
    if obj["constants_version"] != CONSTANTS_VERSION:
        raise TraceError(
            1,
            f"constants version {obj['constants_version']!r} not supported "
            f"(expected {CONSTANTS_VERSION!r})",
        )
    return TraceHeader(seed=obj["seed"], diode_mode=mode, constants_version=obj["constants_version"])


def event_line(tick: int, event: WireEvent) -> str:
    record = {"tick": tick}
    record.update(event_to_dict(event))
    return dumps(record)


def parse_event_entry(line_no: int, line: str) -> tuple[int, WireEvent]:
    import json

    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TraceError(line_no, f"not valid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict) or "tick" not in obj:
        raise TraceError(line_no, "event line must be an object with a 'tick' field")
    tick = obj.pop("tick")
    if isinstance(tick, bool) or not isinstance(tick, int) or tick < 1:
        raise TraceError(line_no, "'tick' must be a positive integer")
    try:
        event = parse_event_dict(obj)
    except ProtocolError as exc:
        raise TraceError(line_no, str(exc)) from exc
    return tick, event


def read_trace(text: str) -> tuple[TraceHeader, list[tuple[int, int, WireEvent]]]:
    """Parse trace text into (header, [(line_no, tick, event), ...]).

    A trailing unterminated fragment is treated as a truncated write and
    dropped; everything else must parse.
    """
    if not text:
        raise TraceError(1, "empty trace")
    complete = text.split("\n")
    if text.endswith("\n"):
        complete = complete[:-1]
    else:
        complete = complete[:-1]  # unterminated tail: truncated write
    if not complete:
        raise TraceError(1, "no complete lines in trace")
    header = parse_header(complete[0])
    entries: list[tuple[int, int, WireEvent]] = []
    last_tick = 0
    for i, line in enumerate(complete[1:], start=2):
        if not line.strip():
            raise TraceError(i, "blank line")
        tick, event = parse_event_entry(i, line)
        if tick < last_tick:
            raise TraceError(i, f"tick {tick} goes backwards (previous {last_tick})")
        last_tick = tick
        entries.append((i, tick, event))
    return header, entries


def read_trace_file(path: str | os.PathLike) -> tuple[TraceHeader, list[tuple[int, int, WireEvent]]]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return read_trace(f.read())


class TraceWriter:
    """Append-only trace writer; one flush per event for crash safety."""

    def __init__(self, stream: io.TextIOBase, header: TraceHeader):
        self._stream = stream
        self._stream.write(header_line(header) + "\n")
        self._stream.flush()

    @classmethod
    def open(cls, path: str | os.PathLike, header: TraceHeader) -> "TraceWriter":
        stream = open(path, "w", encoding="utf-8", newline="")
        return cls(stream, header)

    def append(self, tick: int, event: WireEvent) -> None:
        self._stream.write(event_line(tick, event) + "\n")
        self._stream.flush()

    def close(self) -> None:
        self._stream.close()
