"""Command line behavior: replay outputs, demo traces, error codes."""

from __future__ import annotations

import json

import pytest

from bracketboard import replay_text
from bracketboard.cli import main
from bracketboard.tracefile import read_trace

TRACE = (
    '{"seed":0,"diode_mode":"with_diodes","constants_version":"1"}\n'
    '{"tick":1,"type":"corner_down","ts":0.05,"cell":[2,3],"resistance_ohms":330.0}\n'
    '{"tick":1,"type":"corner_down","ts":0.05,"cell":[2,6],"resistance_ohms":330.0}\n'
    '{"tick":1,"type":"corner_down","ts":0.05,"cell":[4,3],"resistance_ohms":330.0}\n'
    '{"tick":1,"type":"corner_down","ts":0.05,"cell":[4,6],"resistance_ohms":330.0}\n'
)


def test_replay_writes_requested_outputs(tmp_path, capsys):
    trace = tmp_path / "t.jsonl"
    trace.write_text(TRACE, encoding="utf-8")
    html, layout, transcript = (tmp_path / n for n in ("o.html", "o.json", "o.txt"))
    code = main(
        [
            "replay",
            str(trace),
            "--html",
            str(html),
            "--json",
            str(layout),
            "--transcript",
            str(transcript),
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "replayed to tick 86" in out
    assert html.read_bytes().startswith(b"<!DOCTYPE html>")
    assert json.loads(layout.read_text())["brackets"][0]["type"] == "text"
    assert transcript.read_text().startswith("Text bracket placed.")


def test_replay_without_outputs_just_summarizes(tmp_path, capsys):
    trace = tmp_path / "t.jsonl"
    trace.write_text(TRACE, encoding="utf-8")
    assert main(["replay", str(trace)]) == 0
    assert "1 utterances" in capsys.readouterr().out


def test_replay_missing_file_exits_2(tmp_path, capsys):
    assert main(["replay", str(tmp_path / "absent.jsonl")]) == 2
    assert "replay failed" in capsys.readouterr().err


def test_replay_malformed_trace_exits_2(tmp_path, capsys):
    trace = tmp_path / "bad.jsonl"
    trace.write_text(TRACE + '{"tick":2,"type":"corner_down"}\n', encoding="utf-8")
    assert main(["replay", str(trace)]) == 2
    err = capsys.readouterr().err
    assert "line 6" in err


@pytest.mark.parametrize("task", [1, 2])
def test_demo_emits_replayable_trace(task, tmp_path, capsys):
    out = tmp_path / "demo.jsonl"
    assert main(["demo", "--task", str(task), "--out", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    header, entries = read_trace(text)
    assert header.seed == 0
    assert len(entries) >= 16
    result = replay_text(text)
    assert len(json.loads(result.layout_json)["brackets"]) == 4


def test_demo_writes_stdout_by_default(capsys):
    assert main(["demo", "--task", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith('{"seed":0,')
    assert out.count("\n") == 17  # header plus 16 events


def test_unknown_command_is_an_error(capsys):
    with pytest.raises(SystemExit):
        main(["frobnicate"])
