"""Engine pipeline: wire events in, ordered notifications out."""

from __future__ import annotations

from bracketboard import CellCoord, Engine
from bracketboard.matrix import DiodeMode
from bracketboard.narrate import ButtonKind
from bracketboard.wire import ButtonPress, CornerDown, CornerUp, SetDiodeMode, SetSeed

CORNERS = [(2, 3), (2, 6), (4, 3), (4, 6)]


def press_corners(engine, cells=CORNERS, ohms=330.0, ts=0.0):
    for r, c in cells:
        out = engine.apply_event(CornerDown(cell=CellCoord(r, c), resistance_ohms=ohms, ts=ts))
        assert out == []


def test_placement_notification_sequence():
    engine = Engine(seed=0)
    press_corners(engine)
    assert engine.run_scan() == []  # debounce: first sighting is not enough
    out = engine.run_scan()
    assert [n["kind"] for n in out] == ["layout_event", "utterance", "snapshot", "html"]
    assert all(n["tick"] == 2 for n in out)
    event, utterance, snapshot, html = out
    assert event["event"]["kind"] == "bracket_placed"
    assert event["event"]["span"] == [2, 3, 4, 6]
    assert utterance["trigger"] == "bracket_placed"
    assert utterance["text"].startswith("Text bracket placed.")
    assert utterance["est_duration_s"] == 18 / 170 * 60
    assert snapshot["layout"]["brackets"][0]["id"] == 1
    assert 'id="bracket-1"' in html["document"]


def test_quiet_scan_emits_nothing():
    engine = Engine(seed=0)
    press_corners(engine)
    engine.run_scan()
    engine.run_scan()
    assert engine.run_scan() == []
    assert engine.run_scan() == []


def test_buttons_answer_immediately():
    engine = Engine(seed=0)
    out = engine.apply_event(ButtonPress(kind=ButtonKind.REPEAT_LAST, ts=0.0))
    assert [n["kind"] for n in out] == ["utterance"]
    assert out[0]["text"] == "No bracket information yet."
    assert out[0]["tick"] == 1  # stamped with the upcoming scan index

    press_corners(engine)
    engine.run_scan()
    placed_text = engine.run_scan()[1]["text"]

    out = engine.apply_event(ButtonPress(kind=ButtonKind.READ_ALL, ts=1.0))
    assert out[0]["text"].startswith("1 brackets on the board. Text bracket placed.")
    out = engine.apply_event(ButtonPress(kind=ButtonKind.REPEAT_LAST, ts=2.0))
    assert out[0]["text"] == placed_text


def test_repeat_last_survives_removal():
    engine = Engine(seed=0)
    press_corners(engine)
    engine.run_scan()
    placed_text = engine.run_scan()[1]["text"]
    for r, c in CORNERS:
        engine.apply_event(CornerUp(cell=CellCoord(r, c), ts=3.0))
    engine.run_scan()
    out = engine.run_scan()  # removal settles here
    assert any(n["kind"] == "layout_event" and n["event"]["kind"] == "bracket_removed" for n in out)
    out = engine.apply_event(ButtonPress(kind=ButtonKind.REPEAT_LAST, ts=4.0))
    assert out[0]["text"] == placed_text  # removals are not repeatable descriptions


def test_out_of_range_resistance_is_rejected():
    engine = Engine(seed=0)
    out = engine.apply_event(CornerDown(cell=CellCoord(0, 0), resistance_ohms=100000.0, ts=0.0))
    assert [n["kind"] for n in out] == ["anomaly"]
    anomaly = out[0]["anomaly"]
    assert anomaly["source"] == "event"
    assert anomaly["reason"] == "out_of_range"
    assert anomaly["cell"] == [0, 0]
    assert engine.sim.switches() == {}
    assert engine.run_scan() == []


def test_unclassifiable_resistance_reports_each_scan():
    engine = Engine(seed=0)
    engine.apply_event(CornerDown(cell=CellCoord(0, 0), resistance_ohms=600.0, ts=0.0))
    for _ in range(2):
        out = engine.run_scan()
        assert [n["kind"] for n in out] == ["anomaly"]
        assert out[0]["anomaly"]["source"] == "decode"
        assert out[0]["anomaly"]["reason"] == "unclassified"
        assert "at (0, 0)" in out[0]["anomaly"]["detail"]


def test_corner_up_on_open_cell_is_noop():
    engine = Engine(seed=0)
    assert engine.apply_event(CornerUp(cell=CellCoord(5, 5), ts=0.0)) == []
    assert engine.run_scan() == []


def test_diode_mode_changes_apparent_contacts():
    engine = Engine(seed=0, diode_mode=DiodeMode.WITHOUT_DIODES)
    # three corners of a rectangle ghost the fourth when diodes are absent
    press_corners(engine, cells=[(2, 3), (2, 6), (4, 3)])
    engine.run_scan()
    out = engine.run_scan()
    assert any(
        n["kind"] == "layout_event" and n["event"]["span"] == [2, 3, 4, 6] for n in out
    )
    # restoring diodes reveals only three real contacts: bracket leaves the page
    engine.apply_event(SetDiodeMode(mode=DiodeMode.WITH_DIODES, ts=1.0))
    out = engine.run_scan() + engine.run_scan()
    kinds = [n["kind"] for n in out]
    assert "snapshot" in kinds and "layout_event" not in kinds
    snapshot = next(n for n in out if n["kind"] == "snapshot")
    assert snapshot["layout"]["brackets"] == []


def test_set_seed_is_silent_and_scans_stay_valid():
    engine = Engine(seed=0)
    assert engine.apply_event(SetSeed(seed=99, ts=0.0)) == []
    press_corners(engine)
    engine.run_scan()
    out = engine.run_scan()
    assert out[0]["event"]["kind"] == "bracket_placed"


def test_join_notifications_reflect_current_state():
    engine = Engine(seed=0)
    out = engine.join_notifications()
    assert [n["kind"] for n in out] == ["snapshot", "html"]
    assert out[0]["tick"] == 0
    assert out[0]["layout"]["brackets"] == []
    press_corners(engine)
    engine.run_scan()
    engine.run_scan()
    out = engine.join_notifications()
    assert out[0]["tick"] == 2
    assert out[0]["layout"]["brackets"][0]["type"] == "text"
    assert 'data-type="text"' in out[1]["document"]
