"""Agent wire protocol: newline-delimited JSON messages.

Four message kinds flow between the harness and an external agent, in
this order within an episode: ``episode_start{env, mode, prompts}``,
then per decision ``observe{step, text, image, mime}`` answered by
``act{text}``, and finally ``episode_end{score}``. The same messages
travel over a subprocess's standard streams or a local HTTP endpoint.

The observe text is the chat context flattened to a single string with
``-----User:`` / ``-----Assistant:`` role markers; the image field
carries the newest real frame, base64-encoded.
"""

from __future__ import annotations

import base64
import json
import subprocess
import urllib.request
from importlib import resources
from typing import Any, Optional, Sequence

import jsonschema

from .types import PromptSet, Turn


class WireError(RuntimeError):
    """Malformed or out-of-protocol message from the peer."""


def _load_schema() -> dict:
    text = resources.files("triarena.harness").joinpath("wire_schema.json").read_text("utf-8")
    return json.loads(text)


WIRE_SCHEMA = _load_schema()

_ROLE_MARKERS = {"user": "-----User:", "agent": "-----Assistant:"}


def flatten_context(turns: Sequence[Turn]) -> str:
    parts = [f"{_ROLE_MARKERS[turn.role]}\n{turn.text}" for turn in turns]
    return "\n\n".join(parts)


def _latest_image(turns: Sequence[Turn]) -> tuple[Optional[str], Optional[str]]:
    for turn in reversed(turns):
        if turn.image is not None:
            return base64.b64encode(turn.image).decode("ascii"), turn.image_mime
    return None, None


def _latest_step(turns: Sequence[Turn], fallback: int) -> int:
    steps = [t.observation_step for t in turns if t.observation_step is not None]
    return max(steps) if steps else fallback


def episode_start_message(env: str, mode: str, prompts: PromptSet) -> dict[str, Any]:
    return {
        "type": "episode_start",
        "env": env,
        "mode": mode,
        "prompts": {
            "system_prompt": prompts.system_prompt,
            "task_prompt": prompts.task_prompt,
            "cot_prompt": prompts.cot_prompt,
            "io_prompt": prompts.io_prompt,
        },
    }


def observe_message(turns: Sequence[Turn], fallback_step: int = 1) -> dict[str, Any]:
    image, mime = _latest_image(turns)
    return {
        "type": "observe",
        "step": _latest_step(turns, fallback_step),
        "text": flatten_context(turns),
        "image": image,
        "mime": mime,
    }


def act_message(text: str) -> dict[str, Any]:
    return {"type": "act", "text": text}


def episode_end_message(score: float) -> dict[str, Any]:
    return {"type": "episode_end", "score": float(score)}


def validate_message(obj: Any) -> dict[str, Any]:
    try:
        jsonschema.validate(obj, WIRE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise WireError(f"invalid wire message: {exc.message}") from exc
    return obj


def dump_message(obj: dict[str, Any]) -> str:
    """One message per line; key order is kept as built."""
    return json.dumps(validate_message(obj), ensure_ascii=False)


def parse_wire_line(line: str) -> dict[str, Any]:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise WireError(f"wire line is not JSON: {exc}") from exc
    return validate_message(obj)


def _expect_act(obj: dict[str, Any]) -> str:
    if obj.get("type") != "act":
        raise WireError(f"expected act, got {obj.get('type')!r}")
    return obj["text"]


class StdioAgent:
    """Drives an external agent process over its standard streams."""

    def __init__(self, argv: Sequence[str]):
        self._proc = subprocess.Popen(
            list(argv),
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )
        self._decision = 0

    def _send(self, message: dict[str, Any]) -> None:
        if self._proc.poll() is not None:
            raise WireError("agent process exited")
        assert self._proc.stdin is not None
        self._proc.stdin.write(dump_message(message) + "\n")
        self._proc.stdin.flush()

    def begin_episode(self, env: str, mode: str, prompts: PromptSet) -> None:
        self._decision = 0
        self._send(episode_start_message(env, mode, prompts))

    def act(self, context: list[Turn]) -> str:
        self._decision += 1
        self._send(observe_message(context, fallback_step=self._decision))
        assert self._proc.stdout is not None
        line = self._proc.stdout.readline()
        if not line:
            raise WireError("agent process closed its output")
        return _expect_act(parse_wire_line(line))

    def end_episode(self, score: float) -> None:
        self._send(episode_end_message(score))

    def close(self) -> None:
        if self._proc.poll() is None:
            self._proc.terminate()
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._proc.kill()

    def __enter__(self) -> "StdioAgent":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()


class HttpAgent:
    """Posts wire messages to a local HTTP endpoint, one per request.

    Observe posts expect an act message back in the response body;
    lifecycle posts ignore the body.
    """

    def __init__(self, endpoint: str, timeout: float = 120.0):
        self._endpoint = endpoint
        self._timeout = timeout
        self._decision = 0

    def _post(self, message: dict[str, Any]) -> bytes:
        data = (dump_message(message) + "\n").encode("utf-8")
        req = urllib.request.Request(
            self._endpoint,
            data=data,
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        try:
            with urllib.request.urlopen(req, timeout=self._timeout) as resp:
                return resp.read()
        except OSError as exc:
            raise WireError(f"agent endpoint unreachable: {exc}") from exc

    def begin_episode(self, env: str, mode: str, prompts: PromptSet) -> None:
        self._decision = 0
        self._post(episode_start_message(env, mode, prompts))

    def act(self, context: list[Turn]) -> str:
        self._decision += 1
        body = self._post(observe_message(context, fallback_step=self._decision))
        line = body.decode("utf-8").strip().splitlines()
        if not line:
            raise WireError("empty response to observe")
        return _expect_act(parse_wire_line(line[0]))

    def end_episode(self, score: float) -> None:
        self._post(episode_end_message(score))
