"""Built-in baseline agents.

These exercise the episode drivers without an external model: an idle
agent that emits the environment's default reply (or nothing), a
uniform-random agent over the action vocabulary, a scripted agent that
replays a fixed list, and a thin wrapper around any callable.
"""

from __future__ import annotations

import random
from typing import Callable, Optional, Sequence

from .envbase import Environment
from .types import PlannerMode, Turn


class IdleAgent:
    """Does as little as the environment allows.

    If the environment defines a default reply (an explicit stand-still
    action), emits that; otherwise emits an empty string, which never
    parses and leaves the environment untouched.
    """

    def __init__(self, env: Environment):
        self._reply = env.default_reply() or ""

    def act(self, context: list[Turn]) -> str:
        return self._reply


class RandomAgent:
    """Uniform over the action vocabulary, formatted per planner mode."""

    def __init__(
        self,
        env: Environment,
        mode: PlannerMode = PlannerMode.ONLINE,
        seed: int = 0,
        plan_length: Optional[int] = None,
    ):
        self._vocab = env.action_vocab
        if not self._vocab:
            raise ValueError("environment has an empty action vocabulary")
        self._mode = mode
        self._rng = random.Random(seed)
        self._plan_length = plan_length if plan_length is not None else env.max_decisions

    def act(self, context: list[Turn]) -> str:
        if self._mode is PlannerMode.GLOBAL:
            picks = [self._rng.choice(self._vocab) for _ in range(self._plan_length)]
            return "### Actions\n" + ", ".join(picks)
        return "# action\n" + self._rng.choice(self._vocab)


class ScriptedAgent:
    """Replays a fixed list of raw replies; repeats the last when exhausted."""

    def __init__(self, replies: Sequence[str]):
        if not replies:
            raise ValueError("need at least one reply")
        self._replies = list(replies)
        self._i = 0

    def act(self, context: list[Turn]) -> str:
        reply = self._replies[min(self._i, len(self._replies) - 1)]
        self._i += 1
        return reply


class CallableAgent:
    """Adapts a plain function (context -> reply) to the agent protocol."""

    def __init__(self, fn: Callable[[list[Turn]], str]):
        self._fn = fn

    def act(self, context: list[Turn]) -> str:
        return self._fn(context)
