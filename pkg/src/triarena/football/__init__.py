"""2-D football environment: engine, rewards, frame-skip, scenarios."""

from .autorender import auto_render, lookahead_clear
from .engine import (
    BotPolicy,
    best_shot_target,
    default_bots,
    point_segment_distance,
    select_receiver,
    step_frame,
)
from .env import FootballEnv, state_text
from .render import render
from .rewards import RewardTracker, passed_count, s_pass, s_shot
from .selfplay import AttackingBot
from .scenarios import (
    LANE_BUFFER,
    generate_scenario,
    lane_blockers,
    lane_candidates,
    load_scenarios,
    open_lanes,
    save_scenarios,
    scenario_from_dict,
    scenario_sweep,
    scenario_to_dict,
)
from .types import (
    ACTION_VOCAB,
    CATEGORIES,
    DEFAULT_AUTO_RENDER,
    DEFAULT_PARAMS,
    DEFAULT_WEIGHTS,
    DIRECTION_ACTIONS,
    FIELD_X,
    FIELD_Y,
    GOAL_HALF_WIDTH,
    PASS_ACTIONS,
    REGIONS,
    TEAM_OPPONENT,
    TEAM_OURS,
    AutoRenderConfig,
    BallState,
    EngineParams,
    FootballState,
    FrameEvents,
    PlayerState,
    RewardWeights,
    Scenario,
    region_bounds,
)

__all__ = [
    "ACTION_VOCAB",
    "AttackingBot",
    "AutoRenderConfig",
    "BallState",
    "BotPolicy",
    "CATEGORIES",
    "DEFAULT_AUTO_RENDER",
    "DEFAULT_PARAMS",
    "DEFAULT_WEIGHTS",
    "DIRECTION_ACTIONS",
    "EngineParams",
    "FIELD_X",
    "FIELD_Y",
    "FootballEnv",
    "FootballState",
    "FrameEvents",
    "GOAL_HALF_WIDTH",
    "LANE_BUFFER",
    "PASS_ACTIONS",
    "PlayerState",
    "REGIONS",
    "RewardTracker",
    "RewardWeights",
    "Scenario",
    "TEAM_OPPONENT",
    "TEAM_OURS",
    "auto_render",
    "best_shot_target",
    "default_bots",
    "generate_scenario",
    "lane_blockers",
    "lane_candidates",
    "load_scenarios",
    "lookahead_clear",
    "open_lanes",
    "passed_count",
    "point_segment_distance",
    "region_bounds",
    "render",
    "s_pass",
    "s_shot",
    "save_scenarios",
    "scenario_from_dict",
    "scenario_sweep",
    "scenario_to_dict",
    "select_receiver",
    "state_text",
    "step_frame",
]
