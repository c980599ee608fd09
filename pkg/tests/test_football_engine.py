"""Frame-level mechanics: movement, stickiness, possession, flights."""

import math
import random
from dataclasses import replace

import pytest

from football_fixtures import OPP_START, duel_state, no_bots
from oracles import point_segment_distance_reference
from triarena.football.engine import (
    best_shot_target,
    player_speed,
    point_segment_distance,
    possession_radius,
    select_receiver,
    step_frame,
)
from triarena.football.types import (
    DEFAULT_PARAMS,
    GOAL_HALF_WIDTH,
    PlayerState,
    TEAM_OURS,
)

# Eleven opponents parked in our defensive corner, far from any play
# near the opposing goal.
CORNER_OPPS = [(-0.85 - 0.01 * i, -0.40) for i in range(11)]


def run_until(state, action, predicate, bots=no_bots, limit=60):
    """Step with a fixed action until predicate(state, events) or limit."""
    for _ in range(limit):
        state, events = step_frame(state, action, bots=bots)
        if predicate(state, events):
            return state, events
    raise AssertionError("predicate never held")


def test_speed_scaling_is_multiplicative():
    base = PlayerState(team=TEAM_OURS, position=(0.0, 0.0))
    p = DEFAULT_PARAMS
    assert player_speed(base, p) == 0.008
    assert player_speed(replace(base, sprint=True), p) == 0.008 * 1.4
    assert player_speed(replace(base, dribble=True), p) == 0.008 * 0.7
    assert player_speed(replace(base, sprint=True, dribble=True), p) == 0.008 * 1.4 * 0.7


def test_challenge_radius_scaling():
    base = PlayerState(team=TEAM_OURS, position=(0.0, 0.0))
    p = DEFAULT_PARAMS
    assert possession_radius(base, p) == 0.02
    assert possession_radius(replace(base, sprint=True), p) == 0.02 * 1.3
    assert possession_radius(replace(base, dribble=True), p) == 0.02 * 0.7


def test_base_step_moves_player_and_ball():
    state = duel_state([(0.0, 0.0)], [(0.6, 0.3)])
    state, events = step_frame(state, "action_right", bots=no_bots)
    me = state.players[0]
    assert me.position == (0.008, 0.0)
    assert me.velocity == (0.008, 0.0)
    assert state.ball.position == me.position
    assert state.frame == 1
    assert not events.scored and not events.stole


def test_direction_is_sticky_until_released():
    state = duel_state([(0.0, 0.0)], [(0.6, 0.3)])
    state, _ = step_frame(state, "action_right", bots=no_bots)
    for _ in range(3):
        state, _ = step_frame(state, None, bots=no_bots)
    assert state.players[0].position[0] == pytest.approx(4 * 0.008, abs=1e-12)

    state, _ = step_frame(state, "action_release_direction", bots=no_bots)
    x_stop = state.players[0].position[0]
    state, _ = step_frame(state, None, bots=no_bots)
    assert state.players[0].position[0] == x_stop


def test_sprint_flag_sticks_and_scales_movement():
    state = duel_state([(0.0, 0.0)], [(0.6, 0.3)])
    state, _ = step_frame(state, "action_sprint", bots=no_bots)
    assert state.players[0].sprint
    assert state.players[0].position == (0.0, 0.0)

    state, _ = step_frame(state, "action_top", bots=no_bots)
    state, _ = step_frame(state, None, bots=no_bots)
    assert state.players[0].position[1] == pytest.approx(2 * 0.008 * 1.4, abs=1e-12)

    state, _ = step_frame(state, "action_release_sprint", bots=no_bots)
    assert not state.players[0].sprint


def test_opponent_within_radius_steals():
    state = duel_state([(0.0, 0.0)], [(0.015, 0.0)])
    state, events = step_frame(state, None, bots=no_bots)
    assert events.stole
    assert state.terminal == "stole"
    assert state.ball.holder == OPP_START
    assert state.done
    with pytest.raises(RuntimeError):
        step_frame(state, None, bots=no_bots)


def test_dribble_shrinks_the_challenge_radius():
    state = duel_state([(0.0, 0.0)], [(0.015, 0.0)])
    players = list(state.players)
    players[0] = replace(players[0], dribble=True)
    state = state.with_(players=tuple(players))
    # 0.015 >= 0.02 * 0.7, so the dribbler keeps the ball.
    state, events = step_frame(state, None, bots=no_bots)
    assert not events.stole
    assert state.terminal == ""


def test_sprint_widens_the_challenge_radius():
    state = duel_state([(0.0, 0.0)], [(0.024, 0.0)])
    safe, events = step_frame(state, None, bots=no_bots)
    assert not events.stole

    players = list(state.players)
    players[0] = replace(players[0], sprint=True)
    sprinting = state.with_(players=tuple(players))
    # Holder stationary (no direction), but the sprint flag alone
    # widens the loss radius past 0.024.
    _, events = step_frame(sprinting, None, bots=no_bots)
    assert events.stole


def test_short_pass_prefers_near_receiver():
    state = duel_state([(0.0, 0.0), (0.28, 0.1), (0.6, 0.0)], [(-0.6, -0.3)])
    state = state.with_(controlled_direction=(1.0, 0.0))
    assert select_receiver(state, "action_short_pass", DEFAULT_PARAMS) == 1
    assert select_receiver(state, "action_long_pass", DEFAULT_PARAMS) == 2

    launched, _ = step_frame(state, "action_short_pass", bots=no_bots)
    assert launched.ball.in_flight
    assert launched.ball.receiver == 1
    assert launched.ball.flight_kind == "short"
    assert launched.ball.flight_target == (0.28, 0.1)
    assert math.hypot(*launched.ball.velocity) == pytest.approx(0.03, abs=1e-12)


def test_receiver_fallback_is_nearest_when_none_ahead():
    state = duel_state([(0.0, 0.0), (-0.3, 0.0), (-0.1, 0.0)], [(-0.6, -0.3)])
    state = state.with_(controlled_direction=(1.0, 0.0))
    assert select_receiver(state, "action_long_pass", DEFAULT_PARAMS) == 2


def test_pass_arrival_switches_control():
    state = duel_state([(0.0, 0.0), (0.3, 0.0)], [(-0.6, -0.3)])
    state = state.with_(controlled_direction=(1.0, 0.0))
    state, events = step_frame(state, "action_short_pass", bots=no_bots)
    assert state.ball.in_flight

    state, events = run_until(state, None, lambda s, e: e.pass_received)
    assert events.receiver == 1
    assert state.controlled == 1
    assert state.ball.holder == 1
    assert not state.ball.in_flight
    assert not state.done


def test_commands_ignored_while_ball_in_flight():
    state = duel_state([(0.0, 0.0), (0.4, 0.0)], [(-0.6, -0.3)])
    state = state.with_(controlled_direction=(1.0, 0.0))
    state, _ = step_frame(state, "action_long_pass", bots=no_bots)
    assert state.ball.in_flight

    state, _ = step_frame(state, "action_top", bots=no_bots)
    assert state.controlled_direction == (1.0, 0.0)
    state, _ = step_frame(state, "action_sprint", bots=no_bots)
    assert not state.players[0].sprint


def test_unattended_arrival_is_a_loss():
    state = duel_state([(0.0, 0.0), (0.3, 0.0)], [(-0.6, -0.3)])
    state = state.with_(controlled_direction=(1.0, 0.0))
    state, _ = step_frame(state, "action_short_pass", bots=no_bots)

    # The receiver jogs away while the ball is in the air.
    walker = lambda s, p: {1: (0.0, 1.0)}
    state, events = run_until(state, None, lambda s, e: s.done, bots=walker)
    assert events.stole
    assert state.terminal == "stole"
    assert not state.ball.in_flight


def test_long_pass_intercepted_but_high_pass_clears():
    def fresh():
        s = duel_state([(0.0, 0.0), (0.45, 0.0)], [(0.09, 0.0)])
        return s.with_(controlled_direction=(1.0, 0.0))

    state, _ = step_frame(fresh(), "action_long_pass", bots=no_bots)
    assert state.ball.flight_kind == "long"
    # One more flight frame lands the ball on the defender.
    state, events = run_until(state, None, lambda s, e: s.done or e.pass_received,
                              limit=2)
    assert events.stole
    assert state.ball.holder == OPP_START

    state, _ = step_frame(fresh(), "action_high_pass", bots=no_bots)
    assert state.ball.flight_kind == "high"
    state, events = run_until(state, None, lambda s, e: s.done or e.pass_received)
    assert events.pass_received
    assert state.terminal == ""


def test_shot_takes_clearest_path_and_scores():
    defenders = [(0.99, 0.0396), (0.99, -0.0396), (0.99, 0.0198), (0.99, -0.0198)]
    state = duel_state([(0.9, 0.0)], defenders + CORNER_OPPS[: 11 - len(defenders)])

    state, events = step_frame(state, "action_shot", bots=no_bots)
    assert events.shot_taken
    assert events.shooter == 0
    assert events.shot_quality == pytest.approx(0.0198, abs=1e-12)
    assert state.ball.in_flight
    assert state.ball.flight_kind == "shot"
    assert state.ball.flight_target == (1.0, 0.0)

    state, events = run_until(state, None, lambda s, e: s.done, limit=5)
    assert events.scored
    assert state.terminal == "goal"


def test_shot_quality_graded_before_the_launch_frame_moves():
    # The defender steps toward the shooter this frame; the quality
    # event still reflects the pre-move geometry.
    defenders = [(0.95, 0.01)]
    state = duel_state([(0.9, 0.0)], defenders + CORNER_OPPS[:10])
    chase = lambda s, p: {OPP_START: (-1.0, 0.0)}
    _, events = step_frame(state, "action_shot", bots=chase)
    target, clearance = best_shot_target((0.9, 0.0), [(0.95, 0.01)])
    assert events.shot_quality == pytest.approx(clearance, abs=1e-12)


def test_wide_shot_goes_out_of_bounds():
    # With zero pressure every path ties, the scan keeps the first
    # corner target, and the discrete flight overshoots the post.
    state = duel_state([(0.9, 0.0)], CORNER_OPPS)
    state, _ = step_frame(state, "action_shot", bots=no_bots)
    assert state.ball.flight_target == (1.0, -GOAL_HALF_WIDTH)
    state, events = run_until(state, None, lambda s, e: s.done, limit=5)
    assert events.stole
    assert state.terminal == "stole"


def test_walk_in_goal():
    state = duel_state([(0.996, 0.0)], CORNER_OPPS)
    state, events = step_frame(state, "action_right", bots=no_bots)
    assert state.players[0].position == (1.0, 0.0)
    assert events.scored
    assert state.terminal == "goal"


def test_pass_without_possession_is_inert():
    state = duel_state([(0.0, 0.0), (0.3, 0.0)], [(0.6, 0.3)], holder=1)
    state, _ = step_frame(state, "action_short_pass", bots=no_bots)
    assert not state.ball.in_flight
    assert state.ball.holder == 1


def test_unknown_action_rejected():
    state = duel_state([(0.0, 0.0)], [(0.6, 0.3)])
    with pytest.raises(ValueError):
        step_frame(state, "action_teleport", bots=no_bots)


def test_best_shot_target_avoids_covered_paths():
    # Blocking the center pushes the aim off-center with real clearance.
    target, clearance = best_shot_target((0.9, 0.0), [(0.95, 0.0)])
    assert target != (1.0, 0.0)
    assert clearance > 0.0

    _, blocked = best_shot_target((0.7, 0.1), [(0.7, 0.1)])
    assert blocked == 0.0


def test_point_segment_distance_matches_sampled_oracle():
    rng = random.Random(11)
    for _ in range(200):
        a = (rng.uniform(-1, 1), rng.uniform(-0.42, 0.42))
        b = (rng.uniform(-1, 1), rng.uniform(-0.42, 0.42))
        p = (rng.uniform(-1, 1), rng.uniform(-0.42, 0.42))
        exact = point_segment_distance(p, a, b)
        sampled = point_segment_distance_reference(p, a, b)
        assert exact == pytest.approx(sampled, abs=1e-4)
    # Degenerate segment falls back to point distance.
    assert point_segment_distance((3.0, 4.0), (0.0, 0.0), (0.0, 0.0)) == 5.0
