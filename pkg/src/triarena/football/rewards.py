"""Dense per-frame reward terms and their episode accumulator.

Six weighted terms: ball advancement and opponents-passed deltas while
our team owns the ball (measured against the last owned frame, which
for pass receptions is the launch frame), a fixed goal bonus, a
possession-loss term scaled linearly by survival time (maxed out when
the horizon is reached still in possession), a pass-quality bonus at
reception frames, and a shot-quality bonus at shot frames.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .engine import best_shot_target
from .types import (
    DEFAULT_WEIGHTS,
    FIELD_X,
    GOAL_HALF_WIDTH,
    TEAM_OURS,
    FootballState,
    FrameEvents,
    RewardWeights,
    Vec,
)

GOAL_POINT: Vec = (FIELD_X, 0.0)


def passed_count(state: FootballState) -> int:
    """Opponents strictly behind the ball (smaller x)."""
    bx = state.ball.position[0]
    return sum(1 for i in state.opponents() if state.players[i].position[0] < bx)


def s_pass(
    receiver: Vec,
    opponent_positions: list[Vec],
    beta: float = DEFAULT_WEIGHTS.beta,
    eps: float = DEFAULT_WEIGHTS.eps,
    goal: Vec = GOAL_POINT,
) -> float:
    """Openness of the receiver: nearest threat distance, discounted when
    that threat blocks the path to goal."""
    if not opponent_positions:
        raise ValueError("need at least one opponent")
    gx, gy = goal[0] - receiver[0], goal[1] - receiver[1]
    g_len = math.hypot(gx, gy)
    best = math.inf
    for ox, oy in opponent_positions:
        dx, dy = ox - receiver[0], oy - receiver[1]
        dist = math.hypot(dx, dy)
        if dist == 0 or g_len == 0:
            cos = 1.0
        else:
            cos = (dx * gx + dy * gy) / (dist * g_len)
        value = dist / (beta * max(cos, 0.0) + eps)
        best = min(best, value)
    return best


def s_shot(
    shooter: Vec,
    opponent_positions: list[Vec],
    cap: float = GOAL_HALF_WIDTH,
) -> float:
    """Clearance of the best of five shot paths, capped at the goal
    half-width so defender-free shots stay bounded."""
    _, clearance = best_shot_target(shooter, opponent_positions)
    return min(clearance, cap)


@dataclass
class RewardTracker:
    """Carries the last-owned-frame reference values across an episode."""

    weights: RewardWeights = DEFAULT_WEIGHTS
    last_owned_ball_x: float = 0.0
    last_owned_passed: int = 0
    total: float = 0.0

    @classmethod
    def start(cls, state: FootballState, weights: RewardWeights = DEFAULT_WEIGHTS) -> "RewardTracker":
        return cls(
            weights=weights,
            last_owned_ball_x=state.ball.position[0],
            last_owned_passed=passed_count(state),
        )

    def reward_frame(self, state: FootballState, events: FrameEvents) -> float:
        """Reward for one rendered frame (state is the frame's end state)."""
        w = self.weights
        r = 0.0
        holder = state.ball.holder
        own = (
            holder is not None
            and not state.ball.in_flight
            and state.players[holder].team == TEAM_OURS
        )
        if own:
            bx = state.ball.position[0]
            pc = passed_count(state)
            r += w.move * (bx - self.last_owned_ball_x)
            r += w.oppo * (pc - self.last_owned_passed) / 11.0
            self.last_owned_ball_x = bx
            self.last_owned_passed = pc
        opponent_positions = [state.players[i].position for i in state.opponents()]
        if events.pass_received and events.receiver is not None:
            receiver = state.players[events.receiver].position
            r += w.passing * s_pass(receiver, opponent_positions, w.beta, w.eps)
        if events.shot_taken:
            quality = events.shot_quality
            if quality is None and events.shooter is not None:
                quality = s_shot(state.players[events.shooter].position, opponent_positions)
            r += w.shot * min(quality, GOAL_HALF_WIDTH)
        if events.scored:
            r += w.scored
        if events.stole:
            r += w.stole * state.frame / w.horizon
        if state.terminal == "horizon":
            r += w.stole
        self.total += r
        return r
