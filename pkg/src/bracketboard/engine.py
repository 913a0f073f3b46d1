"""Deterministic session engine: scan, decode, track, narrate, render.

The engine is tick-driven and knows nothing about sockets or wall clock.
Each scan tick runs the full pipeline and emits notifications in a fixed
order: decode anomalies, then for each layout event the event followed by
its utterance, then tracker anomalies, then (only when the set of placed
brackets changed) a snapshot and the re-rendered HTML document.

Wire events apply between ticks, stamped with the index of the next scan.
Button presses answer immediately from the current snapshot; switch events
mutate the matrix and take effect at the next scan.  A well-formed but
rejected event (resistance out of range) produces an anomaly notification
and leaves every component untouched.
"""

from __future__ import annotations

from . import wire
from .decode import decode_frame
from .errors import OutOfRange
from .matrix import DiodeMode, MatrixSimulator
from .narrate import Utterance, handle_button, narrate_event
from .render import layout_dict, layout_json, render
from .tracker import BracketTracker, LayoutEventKind, TrackerConfig
from .tracefile import TraceHeader

_REPEATABLE = {
    LayoutEventKind.BRACKET_PLACED,
    LayoutEventKind.BRACKET_RESIZED,
    LayoutEventKind.BRACKET_MOVED,
}


class Engine:
    def __init__(
        self,
        seed: int = 0,
        diode_mode: DiodeMode = DiodeMode.WITH_DIODES,
        tracker_config: TrackerConfig = TrackerConfig(),
    ):
        self.header = TraceHeader(seed=seed, diode_mode=diode_mode)
        self.sim = MatrixSimulator(seed=seed, mode=diode_mode)
        self.tracker = BracketTracker(tracker_config)
        self._last_described: Utterance | None = None
        self._last_layout = layout_json(self.tracker.snapshot())

    @property
    def next_tick(self) -> int:
        """Tick of the next scan; events applied now are stamped with it."""
        return self.sim.tick + 1

    def apply_event(self, event: wire.WireEvent) -> list[dict]:
        """Apply one wire event; returns the notifications it produced."""
        tick = self.next_tick
        if isinstance(event, wire.CornerDown):
            try:
                self.sim.set_switch(event.cell, event.resistance_ohms, closed=True)
            except OutOfRange as exc:
                return [
                    wire.anomaly_notification(
                        tick, "event", "out_of_range", str(exc), cell=event.cell
                    )
                ]
            return []
        if isinstance(event, wire.CornerUp):
            self.sim.set_switch(event.cell, 0.0, closed=False)
            return []
        if isinstance(event, wire.ButtonPress):
            utterance = handle_button(event.kind, self.tracker.snapshot(), self._last_described)
            return [wire.utterance_notification(tick, utterance)]
        if isinstance(event, wire.SetDiodeMode):
            self.sim.set_mode(event.mode)
            return []
        if isinstance(event, wire.SetSeed):
            self.sim.set_seed(event.seed)
            return []
        raise TypeError(f"unknown event {event!r}")

    def run_scan(self) -> list[dict]:
        """Run one scan tick through the whole pipeline."""
        frame = self.sim.scan_frame()
        tick = frame.tick
        contact_set = decode_frame(frame)
        out: list[dict] = []
        for anomaly in contact_set.anomalies:
            out.append(
                wire.anomaly_notification(
                    tick,
                    "decode",
                    anomaly.reason,
                    f"adc {anomaly.adc} at ({anomaly.cell.row}, {anomaly.cell.col})",
                    cell=anomaly.cell,
                )
            )
        events = self.tracker.ingest(contact_set)
        for event in events:
            out.append(wire.layout_event_notification(tick, event))
            utterance = narrate_event(event)
            out.append(wire.utterance_notification(tick, utterance))
            if event.kind in _REPEATABLE:
                self._last_described = utterance
        for anomaly in self.tracker.take_anomalies():
            out.append(
                wire.anomaly_notification(tick, "tracker", anomaly.reason, anomaly.detail, anomaly.cell)
            )
        snapshot = self.tracker.snapshot()
        current = layout_json(snapshot)
        if current != self._last_layout:
            self._last_layout = current
            out.append(wire.snapshot_notification(tick, layout_dict(snapshot)))
            out.append(wire.html_notification(tick, render(snapshot).decode("utf-8")))
        return out

    def join_notifications(self) -> list[dict]:
        """Current state for a client that just connected."""
        tick = self.sim.tick
        snapshot = self.tracker.snapshot()
        return [
            wire.snapshot_notification(tick, layout_dict(snapshot)),
            wire.html_notification(tick, render(snapshot).decode("utf-8")),
        ]
