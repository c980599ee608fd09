"""Episode drivers, prompt assembly, action parsing, and the agent wire protocol."""

from .agents import CallableAgent, IdleAgent, RandomAgent, ScriptedAgent
from .envbase import Environment
from .parsing import (
    NO_CHANGE,
    ParseError,
    parse_actions,
    parse_code_blocks,
)
from .planner import Agent, build_online_context, run_episode, run_global, run_online
from .prompts import IMAGE_PLACEHOLDER, continue_text, fill_template, load_prompt
from .types import (
    KIND_INVALID,
    KIND_NONE,
    KIND_REPEATING,
    EpisodeResult,
    ErrorClassification,
    Observation,
    PlannerConfig,
    PlannerMode,
    PromptSet,
    Transcript,
    Turn,
    classify_errors,
)
from .wire import (
    WIRE_SCHEMA,
    HttpAgent,
    StdioAgent,
    WireError,
    act_message,
    dump_message,
    episode_end_message,
    episode_start_message,
    flatten_context,
    observe_message,
    parse_wire_line,
    validate_message,
)

__all__ = [
    "Agent",
    "CallableAgent",
    "Environment",
    "EpisodeResult",
    "ErrorClassification",
    "HttpAgent",
    "IdleAgent",
    "IMAGE_PLACEHOLDER",
    "KIND_INVALID",
    "KIND_NONE",
    "KIND_REPEATING",
    "NO_CHANGE",
    "Observation",
    "ParseError",
    "PlannerConfig",
    "PlannerMode",
    "PromptSet",
    "RandomAgent",
    "ScriptedAgent",
    "StdioAgent",
    "Transcript",
    "Turn",
    "WIRE_SCHEMA",
    "WireError",
    "act_message",
    "build_online_context",
    "classify_errors",
    "continue_text",
    "dump_message",
    "episode_end_message",
    "episode_start_message",
    "fill_template",
    "flatten_context",
    "load_prompt",
    "observe_message",
    "parse_actions",
    "parse_code_blocks",
    "parse_wire_line",
    "run_episode",
    "run_global",
    "run_online",
    "validate_message",
]
