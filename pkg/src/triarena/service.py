"""HTTP endpoint for interactive (human) play.

The server speaks the same message set as the stdio/HTTP agents: each
decision is published as an ``observe`` message, the client answers
with an ``act``. A browser panel (or curl) drives the episode:

    GET  /state             current pending message + episode events
    GET  /events?since=N    message log suffix
    POST /act               {"type": "act", "text": "..."}

``ServeAgent`` plugs into the episode drivers as a normal agent; it
blocks each decision until a reply arrives.
"""

from __future__ import annotations

import json
import os
import queue
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, urlparse

from .harness.types import PromptSet, Turn
from .harness.wire import (
    WireError,
    act_message,
    episode_end_message,
    episode_start_message,
    observe_message,
    validate_message,
)

DEFAULT_BIND = "127.0.0.1:8765"
BIND_ENV_VAR = "TRIARENA_BIND"


def resolve_bind(value: Optional[str] = None) -> tuple[str, int]:
    """Bind address from flag value, else the environment, else default."""
    raw = value or os.environ.get(BIND_ENV_VAR) or DEFAULT_BIND
    host, _, port = raw.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"bad bind address {raw!r}, expected host:port")
    return host, int(port)


class InteractiveSession:
    """Shared state between the episode driver and the HTTP handler."""

    def __init__(self):
        self._lock = threading.Lock()
        self.events: list[dict] = []
        self.pending: Optional[dict] = None
        self.replies: "queue.Queue[str]" = queue.Queue()
        self.decision = 0

    def publish(self, message: dict, awaits_reply: bool = False) -> None:
        validate_message(message)
        with self._lock:
            self.events.append(message)
            if awaits_reply:
                self.pending = message

    def snapshot(self) -> dict:
        with self._lock:
            return {
                "pending": self.pending,
                "events": len(self.events),
                "decision": self.decision,
            }

    def events_since(self, since: int) -> dict:
        with self._lock:
            return {"events": self.events[since:], "next": len(self.events)}

    def submit_reply(self, text: str) -> None:
        with self._lock:
            if self.pending is None:
                raise WireError("no decision is awaiting a reply")
            self.pending = None
        self.replies.put(text)

    def wait_reply(self, timeout: Optional[float] = None) -> str:
        return self.replies.get(timeout=timeout)


class ServeAgent:
    """Agent whose replies come from the interactive endpoint."""

    def __init__(self, session: InteractiveSession, timeout: Optional[float] = None):
        self.session = session
        self.timeout = timeout

    def begin_episode(self, env: str, mode: str, prompts: PromptSet) -> None:
        self.session.decision = 0
        self.session.publish(episode_start_message(env, mode, prompts))

    def act(self, context: list[Turn]) -> str:
        self.session.decision += 1
        msg = observe_message(context, fallback_step=self.session.decision)
        self.session.publish(msg, awaits_reply=True)
        try:
            reply = self.session.wait_reply(timeout=self.timeout)
        except queue.Empty:
            raise WireError("timed out waiting for an interactive reply")
        self.session.publish(act_message(reply))
        return reply

    def end_episode(self, score: float) -> None:
        self.session.publish(episode_end_message(score))


def _make_handler(session: InteractiveSession):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            pass

        def _reply(self, code: int, payload: dict) -> None:
            body = json.dumps(payload).encode()
            self.send_response(code)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(body)

        def do_OPTIONS(self):
            self._reply(200, {})

        def do_GET(self):
            url = urlparse(self.path)
            if url.path == "/state":
                self._reply(200, session.snapshot())
            elif url.path == "/events":
                since = int(parse_qs(url.query).get("since", ["0"])[0])
                self._reply(200, session.events_since(since))
            else:
                self._reply(404, {"error": "unknown path"})

        def do_POST(self):
            url = urlparse(self.path)
            if url.path != "/act":
                self._reply(404, {"error": "unknown path"})
                return
            length = int(self.headers.get("Content-Length", "0"))
            try:
                message = json.loads(self.rfile.read(length).decode())
                validate_message(message)
                if message.get("type") != "act":
                    raise WireError("expected an act message")
                session.submit_reply(message["text"])
            except (ValueError, WireError) as exc:
                self._reply(400, {"error": str(exc)})
                return
            self._reply(200, {"ok": True})

    return Handler


class InteractiveServer:
    """Owns the HTTP listener; episodes run in the caller's thread."""

    def __init__(self, bind: Optional[str] = None):
        host, port = resolve_bind(bind)
        self.session = InteractiveSession()
        self._httpd = ThreadingHTTPServer((host, port), _make_handler(self.session))
        self._thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)

    @property
    def address(self) -> str:
        host, port = self._httpd.server_address[:2]
        return f"{host}:{port}"

    def agent(self, timeout: Optional[float] = None) -> ServeAgent:
        return ServeAgent(self.session, timeout=timeout)

    def start(self) -> None:
        self._thread.start()

    def stop(self) -> None:
        self._httpd.shutdown()
        self._httpd.server_close()

    def __enter__(self) -> "InteractiveServer":
        self.start()
        return self

    def __exit__(self, *exc) -> None:
        self.stop()
