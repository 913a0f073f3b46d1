"""Deterministic replay of session traces.

Replay rebuilds the engine from the trace header, runs scan ticks up to
each event's recorded tick, applies the event, and after the last event
keeps scanning until the engine has been silent for a settle window long
enough to flush every pending debounce, grace, and misalignment timer.
The same trace therefore always yields the same notification sequence,
transcript, layout JSON, and HTML bytes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from . import wire
from .engine import Engine
from .errors import TraceError
from .render import layout_json, render
from .tracefile import TraceHeader, read_trace, read_trace_file
from .tracker import TrackerConfig


def settle_scans(config: TrackerConfig = TrackerConfig()) -> int:
    # Longest quiet gap before a timer can still fire: a grace expiry may
    # restart a misalignment window, so allow both in sequence plus debounce.
    return config.debounce_scans + config.grace_scans + config.misalign_scans + 2


@dataclass
class ReplayResult:
    header: TraceHeader
    notifications: list[dict] = field(default_factory=list)
    final_tick: int = 0
    layout_json: str = ""
    html: bytes = b""

    @property
    def notification_lines(self) -> list[str]:
        return [wire.dumps(n) for n in self.notifications]

    @property
    def transcript(self) -> str:
        texts = [n["text"] for n in self.notifications if n["kind"] == "utterance"]
        return "".join(t + "\n" for t in texts)


def replay_entries(
    header: TraceHeader,
    entries: list[tuple[int, int, wire.WireEvent]],
    tracker_config: TrackerConfig = TrackerConfig(),
) -> ReplayResult:
    engine = Engine(
        seed=header.seed, diode_mode=header.diode_mode, tracker_config=tracker_config
    )
    result = ReplayResult(header=header)
    for line_no, tick, event in entries:
        if tick < engine.next_tick:
            raise TraceError(line_no, f"tick {tick} already passed (engine at {engine.next_tick})")
        while engine.next_tick < tick:
            result.notifications.extend(engine.run_scan())
        result.notifications.extend(engine.apply_event(event))
    quiet = 0
    window = settle_scans(tracker_config)
    while quiet < window:
        notifications = engine.run_scan()
        if notifications:
            result.notifications.extend(notifications)
            quiet = 0
        else:
            quiet += 1
    result.final_tick = engine.sim.tick
    snapshot = engine.tracker.snapshot()
    result.layout_json = layout_json(snapshot)
    result.html = render(snapshot)
    return result


def replay_text(text: str, tracker_config: TrackerConfig = TrackerConfig()) -> ReplayResult:
    header, entries = read_trace(text)
    return replay_entries(header, entries, tracker_config)


def replay_file(path: str | os.PathLike, tracker_config: TrackerConfig = TrackerConfig()) -> ReplayResult:
    header, entries = read_trace_file(path)
    return replay_entries(header, entries, tracker_config)
