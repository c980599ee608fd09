"""Core harness types: observations, prompts, planner configuration,
transcripts, episode results and instruction-following error labels.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence


@dataclass(frozen=True)
class Observation:
    """What the environment shows the agent at one step."""

    text: str
    image: Optional[bytes] = None
    image_mime: str = "image/png"


@dataclass(frozen=True)
class Turn:
    """One message of an assembled agent context.

    ``observation_step`` is set only on user turns that carry a real
    frame; user turns whose frame fell outside the observation window
    carry a textual placeholder and no image.
    """

    role: str  # "user" or "agent"
    text: str
    observation_step: Optional[int] = None
    image: Optional[bytes] = None
    image_mime: str = "image/png"

    def __post_init__(self) -> None:
        if self.role not in ("user", "agent"):
            raise ValueError(f"unknown role {self.role!r}")


@dataclass(frozen=True)
class PromptSet:
    """The prompt pieces an episode is assembled from.

    ``task_prompt`` is the task description document for page-building
    runs and empty for the game environments, whose task is the first
    observation. ``io_prompt`` holds the answer-format block (or, in
    one-shot mode, the full message template).
    """

    system_prompt: str
    task_prompt: str = ""
    cot_prompt: str = ""
    io_prompt: str = ""

    def __post_init__(self) -> None:
        if not self.system_prompt.strip():
            raise ValueError("system_prompt must be non-empty")


class PlannerMode(str, enum.Enum):
    GLOBAL = "Global"
    ONLINE = "Online"


@dataclass(frozen=True)
class PlannerConfig:
    mode: PlannerMode = PlannerMode.ONLINE
    action_memory: int = 5
    observation_memory: int = 1
    max_parse_retries: int = 2
    max_steps: int = 50

    def __post_init__(self) -> None:
        if self.action_memory < 1 or self.observation_memory < 1:
            raise ValueError("action_memory and observation_memory must be >= 1")
        if self.observation_memory > self.action_memory:
            raise ValueError("observation_memory must not exceed action_memory")
        if self.max_parse_retries < 0 or self.max_steps < 1:
            raise ValueError("invalid retry/step limits")


@dataclass
class Transcript:
    """Record of an episode: per-decision contexts, actions and raw replies.

    ``actions`` has one entry per decision slot; None marks a decision
    whose replies never parsed. ``raw_outputs`` records every agent
    reply including retries.
    """

    contexts: list[list[Turn]] = field(default_factory=list)
    actions: list[Optional[str]] = field(default_factory=list)
    raw_outputs: list[str] = field(default_factory=list)

    @property
    def turns(self) -> list[Turn]:
        return self.contexts[-1] if self.contexts else []


KIND_NONE = "None"
KIND_INVALID = "InvalidActions"
KIND_REPEATING = "RepeatingActions"


@dataclass(frozen=True)
class ErrorClassification:
    """Instruction-following failure label derived from a run's actions."""

    unparsed_fraction: float
    mode_action_fraction: float

    @property
    def invalid_actions(self) -> bool:
        return self.unparsed_fraction > 0.9

    @property
    def repeating_actions(self) -> bool:
        return self.mode_action_fraction >= 0.9

    @property
    def kind(self) -> str:
        if self.invalid_actions:
            return KIND_INVALID
        if self.repeating_actions:
            return KIND_REPEATING
        return KIND_NONE

    @property
    def is_ife(self) -> bool:
        return self.invalid_actions or self.repeating_actions


def classify_errors(actions: Sequence[Optional[str]]) -> ErrorClassification:
    """Classify a run from its per-decision actions (None = unparsed).

    Unparsed fraction strictly above 90% marks invalid actions; at or
    above 90% of parsed actions being one token marks repeating actions.
    """
    if not actions:
        raise ValueError("at least one recorded decision is required")
    unparsed = sum(1 for a in actions if a is None) / len(actions)
    parsed = [a for a in actions if a is not None]
    if parsed:
        # keyed by repr so structured actions (code maps) count too
        mode_fraction = max(Counter(repr(a) for a in parsed).values()) / len(parsed)
    else:
        mode_fraction = 0.0
    return ErrorClassification(unparsed_fraction=unparsed, mode_action_fraction=mode_fraction)


@dataclass
class EpisodeResult:
    env: str
    mode: PlannerMode
    level_id: str
    score: float
    total_reward: float
    steps: int  # environment transitions actually taken
    decisions: int  # decision slots consumed
    agent_calls: int  # including parse retries
    transcript: Transcript
    errors: ErrorClassification
    info: dict = field(default_factory=dict)
