"""Environment contract the episode drivers run against."""

from __future__ import annotations

import abc
from typing import Optional

from .parsing import parse_actions
from .types import Observation, PlannerMode, PromptSet


class Environment(abc.ABC):
    """One episode of one task: reset, step, score.

    ``context_style`` selects how online contexts are assembled:
    "chat" environments get the rolling multi-turn window; "single"
    environments get one self-contained message per decision, rebuilt
    from the io template and ``template_fields``.
    """

    name: str = ""
    action_vocab: tuple[str, ...] = ()
    max_decisions: int = 50
    context_style: str = "chat"
    supported_modes: tuple[PlannerMode, ...] = (PlannerMode.GLOBAL, PlannerMode.ONLINE)

    @abc.abstractmethod
    def reset(self) -> Observation:
        """Start the episode and return the first observation."""

    @abc.abstractmethod
    def step(self, action: str) -> tuple[Observation, float, bool]:
        """Apply one parsed action; returns (observation, reward, done)."""

    @abc.abstractmethod
    def score(self) -> float:
        """Episode score so far (final when the episode ended)."""

    @abc.abstractmethod
    def prompt_set(self, mode: PlannerMode) -> PromptSet:
        """The environment's prompts for the given planner mode."""

    def level_id(self) -> str:
        return ""

    def parse_global(self, text: str) -> list[str]:
        return parse_actions(text, self.action_vocab, "sequence")

    def parse_online(self, text: str) -> str:
        return parse_actions(text, self.action_vocab, "single")[0]

    def default_reply(self) -> Optional[str]:
        """The built-in idle agent's reply, or None to stay silent."""
        return None

    def template_fields(self) -> dict[str, str]:
        """Extra placeholder values for "single" context templates."""
        return {}
