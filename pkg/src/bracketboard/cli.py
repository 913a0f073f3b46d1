"""Command line entry points: serve, replay, demo."""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from .errors import TraceError
from .matrix import DiodeMode
from .replay import replay_file
from .service import BoardService

EXIT_OK = 0
EXIT_TRACE = 2


def _cmd_serve(args: argparse.Namespace) -> int:
    mode = DiodeMode.WITHOUT_DIODES if args.no_diodes else DiodeMode.WITH_DIODES
    try:
        service = BoardService(
            host=args.host,
            port=args.port,
            seed=args.seed,
            diode_mode=mode,
            trace_path=args.trace,
        )
    except OSError as exc:
        print(f"cannot start service: {exc}", file=sys.stderr)
        return 1
    print(f"listening on {service.host}:{service.port}, trace -> {args.trace}")
    service.serve_forever()
    return EXIT_OK


def _cmd_replay(args: argparse.Namespace) -> int:
    try:
        result = replay_file(args.trace)
    except (TraceError, OSError) as exc:
        print(f"replay failed: {exc}", file=sys.stderr)
        return EXIT_TRACE
    if args.html:
        with open(args.html, "wb") as f:
            f.write(result.html)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as f:
            f.write(result.layout_json + "\n")
    if args.transcript:
        with open(args.transcript, "w", encoding="utf-8") as f:
            f.write(result.transcript)
    utterances = sum(1 for n in result.notifications if n["kind"] == "utterance")
    print(
        f"replayed to tick {result.final_tick}: "
        f"{len(result.notifications)} notifications, {utterances} utterances"
    )
    return EXIT_OK


def _cmd_demo(args: argparse.Namespace) -> int:
    name = f"task{args.task}.jsonl"
    text = resources.files("bracketboard.traces").joinpath(name).read_text(encoding="utf-8")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        print(f"wrote {name} to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bracketboard",
        description="Bracket-sensing layout board: live service, trace replay, demo traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the live session service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=7341)
    serve.add_argument("--seed", type=int, default=0)
    serve.add_argument("--no-diodes", action="store_true", help="demonstrate ghosting")
    serve.add_argument("--trace", default="session.jsonl", help="trace output path")
    serve.set_defaults(func=_cmd_serve)

    rep = sub.add_parser("replay", help="replay a recorded trace deterministically")
    rep.add_argument("trace", help="trace file (JSON lines)")
    rep.add_argument("--html", help="write final HTML document here")
    rep.add_argument("--json", help="write final layout JSON here")
    rep.add_argument("--transcript", help="write utterance transcript here")
    rep.set_defaults(func=_cmd_replay)

    demo = sub.add_parser("demo", help="emit a bundled demo trace")
    demo.add_argument("--task", type=int, choices=(1, 2), required=True)
    demo.add_argument("--out", help="write trace here instead of stdout")
    demo.set_defaults(func=_cmd_demo)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
