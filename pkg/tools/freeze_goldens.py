"""Regenerate the bundled demo traces and the frozen replay goldens.

Run from the repository root:

    python3 tools/freeze_goldens.py

Writes:
    src/bracketboard/traces/task1.jsonl   two images, text, video
    src/bracketboard/traces/task2.jsonl   article page plus read-all press
    tests/golden/misalign.jsonl           warning-then-recovery session
    tests/golden/task2.html               byte-frozen replay outputs
    tests/golden/task2.json
    tests/golden/task2_transcript.txt

The goldens pin replay output byte for byte; regenerate them only when an
intentional output change makes the old bytes wrong, and review the diff.
"""

from __future__ import annotations

import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from bracketboard import BracketType, replay_text  # noqa: E402
from bracketboard.wire import dumps  # noqa: E402

HEADER = '{"seed":0,"diode_mode":"with_diodes","constants_version":"1"}'


def corner_cells(top, left, bottom, right):
    return [(top, left), (top, right), (bottom, left), (bottom, right)]


def down(tick, cell, ohms):
    return dumps(
        {
            "tick": tick,
            "type": "corner_down",
            "ts": round(tick * 0.05, 2),
            "cell": list(cell),
            "resistance_ohms": ohms,
        }
    )


def up(tick, cell):
    return dumps(
        {"tick": tick, "type": "corner_up", "ts": round(tick * 0.05, 2), "cell": list(cell)}
    )


def button(tick, kind):
    return dumps({"tick": tick, "type": "button", "ts": round(tick * 0.05, 2), "kind": kind})


def bracket(tick, btype, span):
    return [down(tick, cell, btype.nominal_ohms) for cell in corner_cells(*span)]


def write_trace(path: pathlib.Path, lines: list[str]) -> str:
    text = HEADER + "\n" + "".join(line + "\n" for line in lines)
    path.write_text(text, encoding="utf-8", newline="")
    print(f"wrote {path.relative_to(ROOT)} ({len(lines)} events)")
    return text


def main() -> None:
    traces = ROOT / "src" / "bracketboard" / "traces"
    golden = ROOT / "tests" / "golden"
    traces.mkdir(parents=True, exist_ok=True)
    golden.mkdir(parents=True, exist_ok=True)

    task1 = (
        bracket(1, BracketType.IMAGE, (1, 1, 4, 4))
        + bracket(11, BracketType.IMAGE, (1, 7, 3, 10))
        + bracket(21, BracketType.TEXT, (7, 2, 10, 9))
        + bracket(31, BracketType.VIDEO, (12, 8, 15, 11))
    )
    write_trace(traces / "task1.jsonl", task1)

    task2 = (
        bracket(1, BracketType.IMAGE, (0, 0, 1, 11))  # banner
        + bracket(11, BracketType.TEXT, (2, 0, 7, 5))
        + bracket(21, BracketType.IMAGE, (9, 0, 10, 9))
        + bracket(31, BracketType.VIDEO, (14, 0, 15, 1))
        + [button(41, "read_all")]
    )
    task2_text = write_trace(traces / "task2.jsonl", task2)

    # a placed text bracket whose corner lands one row off, waits through the
    # warning, then gets corrected: warning then re-placement, never removed
    misalign = (
        bracket(1, BracketType.TEXT, (2, 3, 4, 6))
        + [up(5, (4, 6)), down(5, (5, 6), BracketType.TEXT.nominal_ohms)]
        + [up(50, (5, 6)), down(50, (4, 6), BracketType.TEXT.nominal_ohms)]
    )
    write_trace(golden / "misalign.jsonl", misalign)

    result = replay_text(task2_text)
    (golden / "task2.html").write_bytes(result.html)
    (golden / "task2.json").write_text(result.layout_json + "\n", encoding="utf-8", newline="")
    (golden / "task2_transcript.txt").write_text(result.transcript, encoding="utf-8", newline="")
    print(f"froze task2 goldens at tick {result.final_tick}: "
          f"{len(result.notifications)} notifications")


if __name__ == "__main__":
    main()
