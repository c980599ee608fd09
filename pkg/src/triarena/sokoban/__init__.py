"""Box-pushing environment: model, solver, generator, rendering."""

from .model import (
    ACTION_NAMES,
    Action,
    DEFAULT_REWARDS,
    SokobanLevel,
    SokobanRewardTable,
    SokobanState,
    StepEvents,
    parse_action,
    reward_step,
    score_episode,
    step,
    trajectory_rewards,
)
from .solver import is_deadlock, solve_bfs
from .generate import TIER_COUNTS, TIER_TABLE, TierSpec, generate_corpus, generate_level
from .textio import from_text, load_corpus, save_corpus, to_text
from .render import render
from .env import SokobanEnv

__all__ = [
    "ACTION_NAMES",
    "Action",
    "DEFAULT_REWARDS",
    "SokobanLevel",
    "SokobanRewardTable",
    "SokobanState",
    "StepEvents",
    "parse_action",
    "reward_step",
    "score_episode",
    "step",
    "trajectory_rewards",
    "is_deadlock",
    "solve_bfs",
    "TIER_COUNTS",
    "TIER_TABLE",
    "TierSpec",
    "generate_corpus",
    "generate_level",
    "from_text",
    "load_corpus",
    "save_corpus",
    "to_text",
    "render",
    "SokobanEnv",
]
