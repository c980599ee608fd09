"""Core value types for the 2-D football environment.

Field convention: x in [-1, 1], y in [-0.42, 0.42]; our team attacks
the goal at x = +1. All state is immutable; the engine returns new
states frame by frame.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

Vec = tuple[float, float]

FIELD_X = 1.0
FIELD_Y = 0.42
GOAL_HALF_WIDTH = 0.044

TEAM_OURS = "ours"
TEAM_OPPONENT = "opponent"

DIRECTION_ACTIONS: dict[str, Vec] = {
    "action_left": (-1.0, 0.0),
    "action_top_left": (-1.0, 1.0),
    "action_top": (0.0, 1.0),
    "action_top_right": (1.0, 1.0),
    "action_right": (1.0, 0.0),
    "action_bottom_right": (1.0, -1.0),
    "action_bottom": (0.0, -1.0),
    "action_bottom_left": (-1.0, -1.0),
}

PASS_ACTIONS = ("action_long_pass", "action_high_pass", "action_short_pass")

# Full action vocabulary: 8 directions, 3 passes, shot, the two sticky
# pairs, idle, and release_direction.
ACTION_VOCAB: tuple[str, ...] = (
    "action_idle",
    *DIRECTION_ACTIONS,
    *PASS_ACTIONS,
    "action_shot",
    "action_sprint",
    "action_release_sprint",
    "action_dribble",
    "action_release_dribble",
    "action_release_direction",
)


@dataclass(frozen=True)
class RewardWeights:
    move: float = 16.0
    oppo: float = 20.0
    scored: float = 40.0
    stole: float = 20.0
    passing: float = 400.0
    shot: float = 100.0
    horizon: int = 400
    beta: float = 10.0
    eps: float = 1.0


DEFAULT_WEIGHTS = RewardWeights()


@dataclass(frozen=True)
class EngineParams:
    base_speed: float = 0.008
    sprint_speed_factor: float = 1.4
    dribble_speed_factor: float = 0.7
    possession_radius: float = 0.02
    sprint_radius_factor: float = 1.3
    dribble_radius_factor: float = 0.7
    catch_radius: float = 0.05
    short_pass_speed: float = 0.03
    long_pass_speed: float = 0.045
    high_pass_speed: float = 0.05
    shot_speed: float = 0.06
    chaser_count: int = 2
    support_speed_factor: float = 0.25


DEFAULT_PARAMS = EngineParams()


@dataclass(frozen=True)
class AutoRenderConfig:
    max_skip_frames: int = 10
    lookahead: int = 5
    proximity_threshold: float = 2 * DEFAULT_PARAMS.possession_radius

    def __post_init__(self):
        if self.lookahead > self.max_skip_frames:
            raise ValueError("lookahead must not exceed max_skip_frames")


DEFAULT_AUTO_RENDER = AutoRenderConfig()


@dataclass(frozen=True)
class PlayerState:
    team: str
    position: Vec
    velocity: Vec = (0.0, 0.0)
    sprint: bool = False
    dribble: bool = False


@dataclass(frozen=True)
class BallState:
    position: Vec
    velocity: Vec = (0.0, 0.0)
    holder: Optional[int] = None
    in_flight: bool = False
    flight_kind: str = ""
    flight_target: Vec = (0.0, 0.0)
    receiver: Optional[int] = None
    launch_frame: int = 0


@dataclass(frozen=True)
class FrameEvents:
    """Per-frame flags feeding the reward terms."""

    scored: bool = False
    stole: bool = False
    pass_received: bool = False
    shot_taken: bool = False
    shooter: Optional[int] = None
    receiver: Optional[int] = None
    # Launch-moment clearance of the chosen shot path (uncapped).
    shot_quality: Optional[float] = None


@dataclass(frozen=True)
class FootballState:
    players: tuple[PlayerState, ...]
    ball: BallState
    controlled: int
    frame: int = 0
    controlled_direction: Optional[Vec] = None
    terminal: str = ""  # "", "goal", "stole", "horizon"

    def __post_init__(self):
        if len(self.players) != 22:
            raise ValueError("football needs exactly 22 players")

    @property
    def done(self) -> bool:
        return self.terminal != ""

    def our_players(self) -> list[int]:
        return [i for i, p in enumerate(self.players) if p.team == TEAM_OURS]

    def opponents(self) -> list[int]:
        return [i for i, p in enumerate(self.players) if p.team == TEAM_OPPONENT]

    def with_(self, **kw) -> "FootballState":
        return replace(self, **kw)


REGIONS = tuple(f"R{i}" for i in range(1, 10))
CATEGORIES = ("Personal", "Teamwork", "RealWorld")


@dataclass(frozen=True)
class Scenario:
    id: str
    category: str
    region: str
    players: tuple[PlayerState, ...]
    ball: Vec
    holder: int

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
        if self.region not in REGIONS:
            raise ValueError(f"unknown region {self.region!r}")
        if len(self.players) != 22:
            raise ValueError("scenario needs exactly 22 placements")
        if self.players[self.holder].team != TEAM_OURS:
            raise ValueError("initial holder must be on our team")

    def initial_state(self) -> FootballState:
        ball = BallState(position=self.players[self.holder].position, holder=self.holder)
        return FootballState(players=self.players, ball=ball, controlled=self.holder)


def region_bounds(region: str) -> tuple[float, float, float, float]:
    """(x_lo, x_hi, y_lo, y_hi) of one cell in the 3x3 field partition.

    Cells are numbered row-major from the top-left corner of the pitch
    (top = positive y): R1 upper-left ... R9 lower-right.
    """
    idx = REGIONS.index(region)
    row, col = divmod(idx, 3)
    x_lo = -FIELD_X + col * (2 * FIELD_X / 3)
    x_hi = x_lo + 2 * FIELD_X / 3
    y_hi = FIELD_Y - row * (2 * FIELD_Y / 3)
    y_lo = y_hi - 2 * FIELD_Y / 3
    return (x_lo, x_hi, y_lo, y_hi)
