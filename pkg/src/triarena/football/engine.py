"""Frame-level football simulation.

One controlled player takes text commands; the other 21 follow a
deterministic built-in policy. Movement directions are sticky for the
controlled player until released; sprint/dribble are sticky flags that
scale speed and the possession-loss radius. Passes and shots put the
ball in a constant-velocity flight segment; while the ball is in the
air control inputs are ignored and everyone runs on the built-in
policy. Episodes terminate on goal, on possession loss (interception,
failed pass, covering out-of-bounds), or at the frame horizon.
"""

from __future__ import annotations

import math
from dataclasses import replace
from typing import Callable, Optional

from .types import (
    ACTION_VOCAB,
    DEFAULT_PARAMS,
    DIRECTION_ACTIONS,
    FIELD_X,
    FIELD_Y,
    GOAL_HALF_WIDTH,
    PASS_ACTIONS,
    TEAM_OPPONENT,
    TEAM_OURS,
    BallState,
    EngineParams,
    FootballState,
    FrameEvents,
    PlayerState,
    Vec,
)

BotPolicy = Callable[[FootballState, EngineParams], dict[int, Vec]]

GOAL_CENTER: Vec = (FIELD_X, 0.0)

# Five aim points spread across the goal mouth, used both to launch
# shots and to grade shot quality.
SHOT_TARGETS: tuple[Vec, ...] = tuple(
    (FIELD_X, GOAL_HALF_WIDTH * f) for f in (-1.0, -0.5, 0.0, 0.5, 1.0)
)


def _norm(v: Vec) -> Vec:
    n = math.hypot(v[0], v[1])
    if n == 0:
        return (0.0, 0.0)
    return (v[0] / n, v[1] / n)


def _dist(a: Vec, b: Vec) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _clamp_field(p: Vec) -> Vec:
    return (max(-FIELD_X, min(FIELD_X, p[0])), max(-FIELD_Y, min(FIELD_Y, p[1])))


def point_segment_distance(point: Vec, a: Vec, b: Vec) -> float:
    ax, ay = a
    bx, by = b
    px, py = point
    dx, dy = bx - ax, by - ay
    seg_len2 = dx * dx + dy * dy
    if seg_len2 == 0:
        return _dist(point, a)
    t = ((px - ax) * dx + (py - ay) * dy) / seg_len2
    t = max(0.0, min(1.0, t))
    return _dist(point, (ax + t * dx, ay + t * dy))


def player_speed(player: PlayerState, params: EngineParams) -> float:
    speed = params.base_speed
    if player.sprint:
        speed *= params.sprint_speed_factor
    if player.dribble:
        speed *= params.dribble_speed_factor
    return speed


def possession_radius(holder: PlayerState, params: EngineParams) -> float:
    radius = params.possession_radius
    if holder.sprint:
        radius *= params.sprint_radius_factor
    if holder.dribble:
        radius *= params.dribble_radius_factor
    return radius


def default_bots(state: FootballState, params: EngineParams) -> dict[int, Vec]:
    """Deterministic policy for the 21 uncontrolled players.

    The nearest opponents chase the ball at full speed, the rest shade
    toward it slowly; idle teammates drift upfield, and a designated
    pass receiver sprints to the landing point.
    """
    ball = state.ball.position
    moves: dict[int, Vec] = {}
    opponents = state.opponents()
    by_dist = sorted(opponents, key=lambda i: _dist(state.players[i].position, ball))
    chasers = set(by_dist[: params.chaser_count])
    for i in opponents:
        p = state.players[i]
        to_ball = _norm((ball[0] - p.position[0], ball[1] - p.position[1]))
        if i in chasers:
            moves[i] = to_ball
        else:
            f = params.support_speed_factor
            moves[i] = (to_ball[0] * f, to_ball[1] * f)
    for i in state.our_players():
        if i == state.controlled and not state.ball.in_flight:
            continue
        p = state.players[i]
        if state.ball.in_flight and state.ball.receiver == i:
            target = state.ball.flight_target
            moves[i] = _norm((target[0] - p.position[0], target[1] - p.position[1]))
        elif p.position[0] < 0.92:
            f = params.support_speed_factor
            moves[i] = (f, 0.0)
        else:
            moves[i] = (0.0, 0.0)
    return moves


def select_receiver(state: FootballState, kind: str, params: EngineParams) -> int:
    """Pick the teammate best aligned with the holder's movement direction."""
    holder_idx = state.ball.holder
    assert holder_idx is not None
    holder = state.players[holder_idx]
    direction = state.controlled_direction
    if direction is None or direction == (0.0, 0.0):
        v = holder.velocity
        direction = _norm(v) if v != (0.0, 0.0) else (1.0, 0.0)
    else:
        direction = _norm(direction)

    candidates = [i for i in state.our_players() if i != holder_idx]
    if kind == "action_short_pass":
        near = [i for i in candidates if _dist(state.players[i].position, holder.position) <= 0.35]
        if near:
            candidates = near

    def alignment(i: int) -> float:
        to_mate = _norm(
            (
                state.players[i].position[0] - holder.position[0],
                state.players[i].position[1] - holder.position[1],
            )
        )
        return direction[0] * to_mate[0] + direction[1] * to_mate[1]

    best = max(candidates, key=alignment)
    if alignment(best) > 0:
        return best
    return min(candidates, key=lambda i: _dist(state.players[i].position, holder.position))


def best_shot_target(shooter: Vec, opponent_positions: list[Vec]) -> tuple[Vec, float]:
    """Aim point whose path keeps opponents farthest away.

    Returns (target, clearance); clearance is unbounded when no
    opponents exist (callers cap it).
    """
    best_target = SHOT_TARGETS[2]
    best_clearance = -1.0
    for target in SHOT_TARGETS:
        if opponent_positions:
            clearance = min(point_segment_distance(o, shooter, target) for o in opponent_positions)
        else:
            clearance = math.inf
        if clearance > best_clearance:
            best_clearance = clearance
            best_target = target
    return best_target, best_clearance


def _apply_command(state: FootballState, action: Optional[str], params: EngineParams) -> FootballState:
    """Interpret the controlled player's command (sticky flags, direction,
    pass/shot launches). Ignored entirely while the ball is in flight."""
    if action is None or action == "action_idle" or state.ball.in_flight:
        return state
    if action not in ACTION_VOCAB:
        raise ValueError(f"unknown action {action!r}")

    players = list(state.players)
    me = players[state.controlled]

    if action in DIRECTION_ACTIONS:
        return state.with_(controlled_direction=_norm(DIRECTION_ACTIONS[action]))
    if action == "action_release_direction":
        return state.with_(controlled_direction=None)
    if action == "action_sprint":
        players[state.controlled] = replace(me, sprint=True)
        return state.with_(players=tuple(players))
    if action == "action_release_sprint":
        players[state.controlled] = replace(me, sprint=False)
        return state.with_(players=tuple(players))
    if action == "action_dribble":
        players[state.controlled] = replace(me, dribble=True)
        return state.with_(players=tuple(players))
    if action == "action_release_dribble":
        players[state.controlled] = replace(me, dribble=False)
        return state.with_(players=tuple(players))

    # Pass and shot launches need possession.
    if state.ball.holder != state.controlled:
        return state
    if action in PASS_ACTIONS:
        receiver = select_receiver(state, action, params)
        target = state.players[receiver].position
        speed = {
            "action_short_pass": params.short_pass_speed,
            "action_long_pass": params.long_pass_speed,
            "action_high_pass": params.high_pass_speed,
        }[action]
        direction = _norm((target[0] - me.position[0], target[1] - me.position[1]))
        ball = BallState(
            position=me.position,
            velocity=(direction[0] * speed, direction[1] * speed),
            holder=None,
            in_flight=True,
            flight_kind=action.replace("action_", "").replace("_pass", ""),
            flight_target=target,
            receiver=receiver,
            launch_frame=state.frame,
        )
        return state.with_(ball=ball)
    if action == "action_shot":
        opponent_positions = [state.players[i].position for i in state.opponents()]
        target, _ = best_shot_target(me.position, opponent_positions)
        direction = _norm((target[0] - me.position[0], target[1] - me.position[1]))
        ball = BallState(
            position=me.position,
            velocity=(direction[0] * params.shot_speed, direction[1] * params.shot_speed),
            holder=None,
            in_flight=True,
            flight_kind="shot",
            flight_target=target,
            receiver=None,
            launch_frame=state.frame,
        )
        return state.with_(ball=ball)
    return state


def _move_players(state: FootballState, bots: BotPolicy, params: EngineParams) -> FootballState:
    moves = bots(state, params)
    players = []
    for i, p in enumerate(state.players):
        if i == state.controlled and not state.ball.in_flight:
            direction = state.controlled_direction or (0.0, 0.0)
        else:
            direction = moves.get(i, (0.0, 0.0))
        speed = player_speed(p, params)
        velocity = (direction[0] * speed, direction[1] * speed)
        position = _clamp_field((p.position[0] + velocity[0], p.position[1] + velocity[1]))
        players.append(replace(p, position=position, velocity=velocity))
    return state.with_(players=tuple(players))


def _in_goal_mouth(p: Vec) -> bool:
    return p[0] >= FIELD_X and abs(p[1]) <= GOAL_HALF_WIDTH


def _advance_ball(state: FootballState, params: EngineParams) -> tuple[FootballState, FrameEvents]:
    ball = state.ball
    if not ball.in_flight:
        holder = ball.holder
        assert holder is not None
        new_ball = replace(ball, position=state.players[holder].position, velocity=(0.0, 0.0))
        state = state.with_(ball=new_ball)
        if _in_goal_mouth(new_ball.position):
            return state.with_(terminal="goal"), FrameEvents(scored=True)
        # Possession challenge: an opponent close enough takes the ball.
        holder_p = state.players[holder]
        if holder_p.team == TEAM_OURS:
            radius = possession_radius(holder_p, params)
            for i in state.opponents():
                if _dist(state.players[i].position, holder_p.position) < radius:
                    stolen = replace(new_ball, holder=i)
                    return state.with_(ball=stolen, terminal="stole"), FrameEvents(stole=True)
        return state, FrameEvents()

    pos = (ball.position[0] + ball.velocity[0], ball.position[1] + ball.velocity[1])
    state = state.with_(ball=replace(ball, position=pos))

    if _in_goal_mouth(pos):
        return state.with_(terminal="goal"), FrameEvents(scored=True)
    if abs(pos[0]) > FIELD_X or abs(pos[1]) > FIELD_Y:
        return state.with_(terminal="stole"), FrameEvents(stole=True)

    # High passes sail over defenders; other flights can be cut out.
    if ball.flight_kind != "high":
        for i in state.opponents():
            if _dist(state.players[i].position, pos) < params.possession_radius:
                stolen = replace(state.ball, holder=i, in_flight=False, velocity=(0.0, 0.0))
                return state.with_(ball=stolen, terminal="stole"), FrameEvents(stole=True)

    # Shots resolve only by goal crossing, going out, or interception.
    if ball.flight_kind == "shot":
        return state, FrameEvents()

    speed = math.hypot(*ball.velocity)
    if _dist(pos, ball.flight_target) <= speed:
        # Arrival: the nearest player to the landing point takes over.
        ours = min(
            state.our_players(), key=lambda i: _dist(state.players[i].position, ball.flight_target)
        )
        if _dist(state.players[ours].position, ball.flight_target) <= params.catch_radius:
            caught = replace(
                state.ball,
                position=state.players[ours].position,
                velocity=(0.0, 0.0),
                holder=ours,
                in_flight=False,
                receiver=None,
            )
            new_state = state.with_(ball=caught, controlled=ours, controlled_direction=None)
            return new_state, FrameEvents(pass_received=True, receiver=ours)
        loose = replace(state.ball, in_flight=False, velocity=(0.0, 0.0))
        return state.with_(ball=loose, terminal="stole"), FrameEvents(stole=True)
    return state, FrameEvents()


def step_frame(
    state: FootballState,
    action: Optional[str],
    params: EngineParams = DEFAULT_PARAMS,
    bots: BotPolicy = default_bots,
) -> tuple[FootballState, FrameEvents]:
    """Advance exactly one frame. ``action`` is the controlled player's
    command (None keeps current sticky state)."""
    if state.done:
        raise RuntimeError("episode already terminated")

    launched_shot = (
        action == "action_shot" and state.ball.holder == state.controlled and not state.ball.in_flight
    )
    shooter: Optional[int] = None
    shot_quality: Optional[float] = None
    if launched_shot:
        shooter = state.controlled
        opponent_positions = [state.players[i].position for i in state.opponents()]
        _, shot_quality = best_shot_target(state.players[shooter].position, opponent_positions)
    state = _apply_command(state, action, params)

    state = _move_players(state, bots, params)
    state = state.with_(frame=state.frame + 1)
    state, events = _advance_ball(state, params)
    if launched_shot:
        events = replace(events, shot_taken=True, shooter=shooter, shot_quality=shot_quality)
    return state, events
