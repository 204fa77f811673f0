"""Single-step web debugger: static UI over HTTP, commands over WebSocket.

One session, one client, one command in flight; the simulation advances only
when a step command arrives.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources
from pathlib import Path

from .diagnostics import PortInUseError
from .engine import Engine
from .statevector import snapshot
from .stimulus import Stimulus
from . import websocket as ws

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".map": "application/json",
}

ENDED_MESSAGE = {"type": "ended"}


class DebugSession:
    """Cursor over a running engine, advanced one scheduled operation at a time."""

    def __init__(self, engine: Engine, stimulus: Stimulus | None = None,
                 cycle_budget: int = 101):
        self.engine = engine
        self.stimulus = stimulus or Stimulus()
        self.stimulus.validate_against(engine.input_ports)
        self.cycle_budget = cycle_budget
        self.ended = cycle_budget < 1
        self._lock = threading.Lock()
        if not self.ended:
            self.engine.begin_cycle(self._inputs_now())
        self._last = self._message_now()

    def _inputs_now(self) -> dict[str, str]:
        return {
            name: self.stimulus.value(name, self.engine.cycle)
            for name in self.engine.input_ports
        }

    def _message_now(self, step: int = 0) -> dict:
        """State message reflecting the engine as it stands."""
        amps = snapshot(self.engine.state)
        return {
            "type": "state",
            "time_fs": self.engine.time_fs,
            "step": step,
            "steps_total": self.engine.plan.steps_total,
            "cycle": self.engine.cycle,
            "amplitudes": [{"mag": m, "phase": p} for m, p in amps],
            "outputs": dict(self.engine.presented),
        }

    def step(self) -> dict:
        """Execute one scheduled operation, rolling the cycle over as needed."""
        with self._lock:
            if self.ended:
                return dict(ENDED_MESSAGE)
            engine = self.engine
            if engine.next_step == engine.plan.steps_total:
                engine.end_cycle()
                if engine.cycle >= self.cycle_budget:
                    self.ended = True
                    return dict(ENDED_MESSAGE)
                engine.begin_cycle(self._inputs_now())
                if engine.plan.steps_total == 0:
                    self._last = self._message_now()
                    return dict(self._last)
            snap = engine.step_op()
            self._last = {
                "type": "state",
                "time_fs": snap.time_fs,
                "step": snap.step_index,
                "steps_total": engine.plan.steps_total,
                "cycle": snap.cycle,
                "amplitudes": [{"mag": m, "phase": p} for m, p in snap.amplitudes],
                "outputs": dict(snap.outputs),
            }
            return dict(self._last)

    def status(self) -> dict:
        """Current snapshot; never advances the simulation."""
        with self._lock:
            if self.ended:
                return dict(ENDED_MESSAGE)
            return dict(self._last)

    def handle_command(self, payload: str) -> dict:
        try:
            message = json.loads(payload)
        except json.JSONDecodeError:
            return {"type": "error", "message": "commands must be JSON objects"}
        kind = message.get("type") if isinstance(message, dict) else None
        if kind == "step":
            return self.step()
        if kind == "status":
            return self.status()
        return {"type": "error", "message": f"unknown command type {kind!r}"}


def _default_static_dir() -> Path:
    return Path(resources.files("qhdl")) / "_static"


class DebugServer(ThreadingHTTPServer):
    daemon_threads = True
    allow_reuse_address = False

    def __init__(self, session: DebugSession, address=("127.0.0.1", 4711),
                 static_dir: Path | None = None):
        self.session = session
        self.static_dir = static_dir or _default_static_dir()
        self._client_lock = threading.Lock()
        self._client_connected = False
        try:
            super().__init__(address, _Handler)
        except OSError as err:
            raise PortInUseError(f"cannot bind port {address[1]}: {err}") from err

    def claim_client(self) -> bool:
        with self._client_lock:
            if self._client_connected:
                return False
            self._client_connected = True
            return True

    def release_client(self) -> None:
        with self._client_lock:
            self._client_connected = False


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        pass

    def do_GET(self):
        if self.path == "/ws":
            self._websocket()
        elif self.path == "/" or self.path == "/index.html":
            self._send_file(self.server.static_dir / "index.html")
        elif self.path.startswith("/assets/"):
            name = Path(self.path).name  # flat asset namespace, no traversal
            self._send_file(self.server.static_dir / "assets" / name)
        else:
            self.send_error(404)

    def _send_file(self, path: Path) -> None:
        try:
            body = path.read_bytes()
        except OSError:
            self.send_error(404)
            return
        self.send_response(200)
        self.send_header("Content-Type",
                         _CONTENT_TYPES.get(path.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _websocket(self) -> None:
        key = self.headers.get("Sec-WebSocket-Key")
        if self.headers.get("Upgrade", "").lower() != "websocket" or key is None:
            self.send_error(400, "WebSocket upgrade required")
            return
        self.close_connection = True
        self.send_response(101)
        self.send_header("Upgrade", "websocket")
        self.send_header("Connection", "Upgrade")
        self.send_header("Sec-WebSocket-Accept", ws.accept_key(key))
        self.end_headers()
        self.wfile.flush()

        if not self.server.claim_client():
            ws.send_close(self.wfile, code=1013, reason="one client at a time")
            return
        try:
            ws.send_text(self.wfile, json.dumps(self.server.session.status()))
            while True:
                try:
                    opcode, payload = ws.read_frame(self.rfile)
                except ws.ConnectionClosed:
                    break
                if opcode == ws.OP_CLOSE:
                    ws.send_close(self.wfile)
                    break
                if opcode == ws.OP_PING:
                    ws.write_frame(self.wfile, ws.OP_PONG, payload)
                    continue
                if opcode != ws.OP_TEXT:
                    continue
                reply = self.server.session.handle_command(payload.decode("utf-8"))
                ws.send_text(self.wfile, json.dumps(reply))
        except (BrokenPipeError, ConnectionResetError):
            pass
        finally:
            self.server.release_client()


def serve(session: DebugSession, port: int, host: str = "127.0.0.1",
          on_ready=None, static_dir: Path | None = None) -> None:
    """Block serving one debug session until the process is interrupted."""
    server = DebugServer(session, (host, port), static_dir=static_dir)
    if on_ready is not None:
        on_ready(port)
    try:
        server.serve_forever()
    finally:
        server.server_close()
