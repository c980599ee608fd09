"""Built-in attacking policy for driving the controlled player.

Used for bot self-play measurements (frame-skip on vs off) and as a
scriptable opponent of the evaluation pipeline. The policy sprints,
carries the ball toward the goal through the widest gap, prefers to
keep its current heading (which is what makes straight-line frame
skipping effective), passes when pressed, and shoots from range when
the path is clear enough.
"""

from __future__ import annotations

import math
from typing import Optional

from .engine import best_shot_target, _dist, _norm
from .scenarios import open_lanes
from .types import (
    DIRECTION_ACTIONS,
    FIELD_Y,
    GOAL_HALF_WIDTH,
    FootballState,
    Vec,
)

GOAL: Vec = (1.0, 0.0)

SHOOT_X = 0.62
SHOOT_CLEARANCE = 0.018
PRESS_DISTANCE = 0.09
HOLD_TOLERANCE = 0.012


class AttackingBot:
    """Deterministic decision policy over the 18-action vocabulary."""

    def __init__(self):
        self._last_direction: Optional[str] = None

    def reset(self) -> None:
        self._last_direction = None

    def _direction_value(self, state: FootballState, name: str) -> float:
        me = state.players[state.controlled]
        d = _norm(DIRECTION_ACTIONS[name])
        horizon = 0.06
        fx = me.position[0] + d[0] * horizon
        fy = me.position[1] + d[1] * horizon
        if abs(fy) > FIELD_Y - 0.03:
            return -math.inf
        progress = -_dist((fx, fy), GOAL)
        threat = min(
            _dist((fx, fy), state.players[i].position) for i in state.opponents()
        )
        return progress + 0.9 * min(threat, 0.25)

    def decide(self, state: FootballState) -> str:
        me = state.players[state.controlled]
        if state.ball.in_flight or state.ball.holder != state.controlled:
            self._last_direction = None
            return "action_idle"
        if not me.sprint:
            return "action_sprint"

        nearest_opp = min(
            _dist(me.position, state.players[i].position) for i in state.opponents()
        )
        _, clearance = best_shot_target(
            me.position, [state.players[i].position for i in state.opponents()]
        )
        if me.position[0] >= SHOOT_X and min(clearance, GOAL_HALF_WIDTH) >= SHOOT_CLEARANCE:
            self._last_direction = None
            return "action_shot"
        if nearest_opp < PRESS_DISTANCE:
            lanes = open_lanes(state.players, state.controlled)
            if lanes:
                target = max(lanes, key=lambda i: state.players[i].position[0])
                dist = _dist(me.position, state.players[target].position)
                self._last_direction = None
                return "action_short_pass" if dist <= 0.35 else "action_long_pass"

        best = max(DIRECTION_ACTIONS, key=lambda n: self._direction_value(state, n))
        if (
            self._last_direction is not None
            and self._direction_value(state, self._last_direction)
            >= self._direction_value(state, best) - HOLD_TOLERANCE
        ):
            best = self._last_direction
        self._last_direction = best
        return best
