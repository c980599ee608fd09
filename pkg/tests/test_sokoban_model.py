import pytest

from triarena.sokoban.model import (
    Action,
    DEFAULT_REWARDS,
    SokobanLevel,
    reward_step,
    score_episode,
    step,
    trajectory_rewards,
)
from triarena.sokoban.textio import from_text, to_text

from oracles import best_prefix_total

CORRIDOR = """\
#####
#@$.#
#####
"""


def corridor_level():
    return from_text(CORRIDOR, level_id="corridor")


def test_push_onto_target_finishes_and_pays_completion():
    state = corridor_level().initial_state()
    new_state, events = step(state, Action.RIGHT)
    assert events.pushed and events.push_to_target and events.done
    assert new_state.done
    assert reward_step(events) == 54.5


def test_blocked_move_is_a_noop_costing_a_step():
    state = corridor_level().initial_state()
    new_state, events = step(state, Action.LEFT)
    assert not events.moved
    assert new_state.player == state.player
    assert new_state.steps_taken == 1
    assert reward_step(events) == -0.5


def test_plain_move_costs_step_penalty():
    level = from_text("#####\n#@ .#\n# $ #\n#####\n", level_id="t")
    state = level.initial_state()
    _, events = step(state, Action.RIGHT)
    assert events.moved and not events.pushed
    assert reward_step(events) == -0.5


def test_push_off_target_penalty():
    # first box sits on its target; pushing it off onto floor is penalized
    level = from_text("#####\n#@* #\n#  $#\n# . #\n#####\n", level_id="t")
    _, events = step(level.initial_state(), Action.RIGHT)
    assert events.push_off_target
    assert reward_step(events) == -5.5


def test_exactly_one_reward_case_per_step():
    table = DEFAULT_REWARDS
    cases = [
        (dict(done=True, push_to_target=True), table.done),
        (dict(push_to_target=True), table.push_to_target),
        (dict(push_off_target=True), table.push_off_target),
        (dict(moved=True), table.otherwise),
        (dict(), table.otherwise),
    ]
    from triarena.sokoban.model import StepEvents

    for kwargs, expected in cases:
        assert reward_step(StepEvents(**kwargs)) == expected


def test_score_uses_best_prefix_not_final_total():
    rewards = [4.5, -5.5, -0.5, -0.5]
    assert best_prefix_total(rewards) == 4.5
    assert score_episode(rewards, r_best=4.5) == 100.0


def test_score_empty_prefix_floor():
    # all-negative trajectories fall back to the empty prefix, total 0
    rewards = [-0.5] * 10
    assert best_prefix_total(rewards) == 0.0
    assert score_episode(rewards, r_best=54.5) == 100.0 - 54.5


@pytest.mark.parametrize(
    "rewards",
    [
        [],
        [1.0, 2.0, -3.0],
        [-0.5, 4.5, -5.5, 54.5],
        [0.0, 0.0],
    ],
)
def test_score_matches_prefix_oracle(rewards):
    assert score_episode(rewards, r_best=10.0) == best_prefix_total(rewards) - 10.0 + 100.0


def test_trajectory_rewards_stop_at_completion():
    level = corridor_level()
    rewards = trajectory_rewards(level, [Action.RIGHT, Action.LEFT, Action.LEFT])
    assert rewards == [54.5]


def test_text_round_trip():
    level = corridor_level()
    again = from_text(to_text(level), level_id="corridor")
    assert again.walls == level.walls
    assert again.boxes == level.boxes
    assert again.targets == level.targets
    assert again.player == level.player


def test_level_rejects_mismatched_boxes_and_targets():
    with pytest.raises(ValueError):
        SokobanLevel(
            height=3,
            width=4,
            walls=frozenset(),
            targets=frozenset(),
            boxes=frozenset({(1, 1)}),
            player=(1, 2),
        )
