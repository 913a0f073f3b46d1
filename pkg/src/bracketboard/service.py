"""Live session service: JSON-lines over TCP around a single engine thread.

Design notes:

- One engine thread owns all state.  Client readers only parse lines and
  push work onto a queue; the engine thread applies events, appends them to
  the trace, runs the scan cadence, and broadcasts notifications.  Every
  client therefore sees the same notification sequence in the same order.
- Events received between two scans are stamped with the next scan's tick
  and applied in arrival order just before it, which is exactly what the
  trace records and what replay reproduces.
- A line that fails schema validation is answered with an error
  notification on that client only; it never reaches the engine or the
  trace, so recorded traces always replay cleanly.
- New clients are welcomed from the engine thread with a snapshot and the
  current HTML document, then join the broadcast list, keeping their
  stream prefix-consistent with everyone else's.
"""

from __future__ import annotations

import logging
import queue
import socket
import threading
import time
from dataclasses import dataclass

from . import wire
from .engine import Engine
from .errors import ProtocolError
from .matrix import DiodeMode
from .tracefile import TraceHeader, TraceWriter
from .tracker import TrackerConfig

logger = logging.getLogger(__name__)

SCAN_HZ = 20.0


@dataclass
class _Client:
    sock: socket.socket
    addr: tuple
    lock: threading.Lock

    def send_line(self, line: str) -> bool:
        try:
            with self.lock:
                self.sock.sendall(line.encode("utf-8") + b"\n")
            return True
        except OSError:
            return False


class BoardService:
    """Threaded TCP server; bind with port=0 to pick an ephemeral port."""

    def __init__(
        self,
        host: str = "127.0.0.1",
        port: int = 0,
        seed: int = 0,
        diode_mode: DiodeMode = DiodeMode.WITH_DIODES,
        trace_path: str = "session.jsonl",
        scan_hz: float = SCAN_HZ,
        tracker_config: TrackerConfig = TrackerConfig(),
    ):
        self._engine = Engine(seed=seed, diode_mode=diode_mode, tracker_config=tracker_config)
        self._trace = TraceWriter.open(trace_path, TraceHeader(seed=seed, diode_mode=diode_mode))
        self._listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        self._listener.bind((host, port))
        self._listener.listen()
        self.host, self.port = self._listener.getsockname()[:2]
        self._scan_interval = 1.0 / scan_hz
        self._inbox: queue.Queue = queue.Queue()
        self._clients: list[_Client] = []
        self._clients_lock = threading.Lock()
        self._stop = threading.Event()
        self._threads: list[threading.Thread] = []

    # ------------------------------------------------------------ lifecycle

    def start(self) -> None:
        for target, name in ((self._accept_loop, "accept"), (self._engine_loop, "engine")):
            t = threading.Thread(target=target, name=f"board-{name}", daemon=True)
            t.start()
            self._threads.append(t)
        logger.info("serving on %s:%d", self.host, self.port)

    def stop(self) -> None:
        self._stop.set()
        # shutdown wakes a blocked accept(); close alone may not on Linux
        try:
            self._listener.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        try:
            self._listener.close()
        except OSError:
            pass
        for t in self._threads:
            t.join(timeout=5.0)
        with self._clients_lock:
            clients, self._clients = self._clients, []
        for c in clients:
            try:
                c.sock.close()
            except OSError:
                pass
        self._trace.close()

    def serve_forever(self) -> None:
        self.start()
        try:
            while not self._stop.is_set():
                time.sleep(0.2)
        except KeyboardInterrupt:
            pass
        finally:
            self.stop()

    # -------------------------------------------------------------- threads

    def _accept_loop(self) -> None:
        while not self._stop.is_set():
            try:
                sock, addr = self._listener.accept()
            except OSError:
                return
            client = _Client(sock=sock, addr=addr, lock=threading.Lock())
            self._inbox.put(("join", client))
            t = threading.Thread(
                target=self._reader_loop, args=(client,), name=f"board-read-{addr}", daemon=True
            )
            t.start()

    def _reader_loop(self, client: _Client) -> None:
        buf = b""
        while not self._stop.is_set():
            try:
                chunk = client.sock.recv(4096)
            except OSError:
                break
            if not chunk:
                break
            buf += chunk
            while b"\n" in buf:
                raw, buf = buf.split(b"\n", 1)
                line = raw.decode("utf-8", errors="replace").strip()
                if not line:
                    continue
                try:
                    event = wire.parse_event_line(line)
                except ProtocolError as exc:
                    # schema errors are private to the offending client and untraced
                    client.send_line(
                        wire.dumps(
                            wire.anomaly_notification(0, "protocol", "schema", str(exc))
                        )
                    )
                    continue
                self._inbox.put(("event", event))
        self._drop_client(client)

    def _engine_loop(self) -> None:
        next_scan = time.monotonic() + self._scan_interval
        while not self._stop.is_set():
            timeout = max(0.0, next_scan - time.monotonic())
            try:
                kind, payload = self._inbox.get(timeout=timeout)
            except queue.Empty:
                kind = None
            if kind == "join":
                client = payload
                for n in self._engine.join_notifications():
                    client.send_line(wire.dumps(n))
                with self._clients_lock:
                    self._clients.append(client)
                continue
            if kind == "event":
                self._trace.append(self._engine.next_tick, payload)
                self._broadcast(self._engine.apply_event(payload))
                continue
            if time.monotonic() >= next_scan:
                self._broadcast(self._engine.run_scan())
                next_scan += self._scan_interval
                # if we fell behind, don't try to catch up with a burst
                if next_scan < time.monotonic():
                    next_scan = time.monotonic() + self._scan_interval

    def _broadcast(self, notifications: list[dict]) -> None:
        if not notifications:
            return
        lines = [wire.dumps(n) for n in notifications]
        with self._clients_lock:
            clients = list(self._clients)
        for client in clients:
            for line in lines:
                if not client.send_line(line):
                    self._drop_client(client)
                    break

    def _drop_client(self, client: _Client) -> None:
        with self._clients_lock:
            if client in self._clients:
                self._clients.remove(client)
        try:
            client.sock.close()
        except OSError:
            pass
