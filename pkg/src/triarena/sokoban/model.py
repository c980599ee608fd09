"""Sokoban core: immutable level/state model, the four-action step
function, the step reward table and the episode score.

Cells are (row, col) pairs. A level's walls/targets never change; a
state is just box positions, the player cell and a step counter.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Optional

Cell = tuple[int, int]


class Action(enum.Enum):
    UP = "Up"
    DOWN = "Down"
    LEFT = "Left"
    RIGHT = "Right"

    @property
    def delta(self) -> Cell:
        return _DELTAS[self]


_DELTAS = {
    Action.UP: (-1, 0),
    Action.DOWN: (1, 0),
    Action.LEFT: (0, -1),
    Action.RIGHT: (0, 1),
}

ACTION_NAMES = [a.value for a in Action]


def parse_action(text: str) -> Optional[Action]:
    try:
        return Action(text.strip().capitalize())
    except ValueError:
        return None


@dataclass(frozen=True)
class SokobanLevel:
    """Static level geometry plus solver-derived metadata."""

    height: int
    width: int
    walls: frozenset[Cell]
    targets: frozenset[Cell]
    boxes: frozenset[Cell]  # initial box positions
    player: Cell  # initial player position
    tier: int = 0
    level_id: str = ""
    optimal_steps: Optional[int] = None
    r_best: Optional[float] = None

    def __post_init__(self) -> None:
        if len(self.boxes) != len(self.targets):
            raise ValueError("box count must equal target count")
        occupied = set(self.walls)
        for cell in [*self.boxes, self.player]:
            if cell in occupied:
                raise ValueError(f"cell doubly occupied: {cell}")
            occupied.add(cell)
        for r, c in [*self.boxes, *self.targets, self.player]:
            if not (0 <= r < self.height and 0 <= c < self.width):
                raise ValueError(f"cell out of bounds: {(r, c)}")

    def initial_state(self) -> "SokobanState":
        return SokobanState(level=self, boxes=self.boxes, player=self.player)

    def is_floor(self, cell: Cell) -> bool:
        r, c = cell
        return 0 <= r < self.height and 0 <= c < self.width and cell not in self.walls


@dataclass(frozen=True)
class SokobanState:
    level: SokobanLevel
    boxes: frozenset[Cell]
    player: Cell
    steps_taken: int = 0

    @property
    def done(self) -> bool:
        return self.level.targets <= self.boxes


@dataclass(frozen=True)
class StepEvents:
    """What happened during one step; exactly one reward case applies."""

    moved: bool = False
    pushed: bool = False
    push_to_target: bool = False  # box landed on a target it was not on
    push_off_target: bool = False  # box left a target and landed off any
    done: bool = False


@dataclass(frozen=True)
class SokobanRewardTable:
    push_to_target: float = 4.5
    push_off_target: float = -5.5
    done: float = 54.5
    otherwise: float = -0.5


DEFAULT_REWARDS = SokobanRewardTable()


def step(state: SokobanState, action: Action) -> tuple[SokobanState, StepEvents]:
    """Advance one step. Blocked moves are legal no-ops that still count.

    The player pushes at most one box one cell; a wall, a second box or
    the grid edge blocks the whole move.
    """
    if state.done:
        raise ValueError("episode already finished")
    level = state.level
    dr, dc = action.delta
    dest = (state.player[0] + dr, state.player[1] + dc)
    bumped = replace(state, steps_taken=state.steps_taken + 1)

    if not level.is_floor(dest):
        return bumped, StepEvents()
    if dest not in state.boxes:
        moved = replace(bumped, player=dest)
        return moved, StepEvents(moved=True)

    box_dest = (dest[0] + dr, dest[1] + dc)
    if not level.is_floor(box_dest) or box_dest in state.boxes:
        return bumped, StepEvents()

    boxes = (state.boxes - {dest}) | {box_dest}
    new_state = replace(bumped, boxes=boxes, player=dest)
    was_on = dest in level.targets
    now_on = box_dest in level.targets
    events = StepEvents(
        moved=True,
        pushed=True,
        push_to_target=now_on and not was_on,
        push_off_target=was_on and not now_on,
        done=new_state.done,
    )
    return new_state, events


def reward_step(events: StepEvents, table: SokobanRewardTable = DEFAULT_REWARDS) -> float:
    """One reward case per step; completion subsumes its own push."""
    if events.done:
        return table.done
    if events.push_to_target:
        return table.push_to_target
    if events.push_off_target:
        return table.push_off_target
    return table.otherwise


def score_episode(rewards: list[float], r_best: float) -> float:
    """Best cumulative reward over any prefix (the empty prefix counts as 0),
    shifted so playing the level's best known trajectory scores 100."""
    best = 0.0
    cum = 0.0
    for r in rewards:
        cum += r
        if cum > best:
            best = cum
    return best - r_best + 100.0


def trajectory_rewards(
    level: SokobanLevel, actions: list[Action], table: SokobanRewardTable = DEFAULT_REWARDS
) -> list[float]:
    """Rewards along an action sequence from the level's initial state.

    Stops at completion; trailing actions beyond it are ignored.
    """
    state = level.initial_state()
    rewards = []
    for action in actions:
        state, events = step(state, action)
        rewards.append(reward_step(events, table))
        if state.done:
            break
    return rewards
