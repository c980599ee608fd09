"""Harness adapter: Sokoban as a steppable evaluation environment.

Observations carry the current grid both as text (standard Sokoban
notation) and as a rendered PNG frame. Episode score is the running
best cumulative reward rebased against the level's optimal-plan reward.
"""

from __future__ import annotations

from typing import Optional

from ..harness.envbase import Environment
from ..harness.prompts import load_prompt
from ..harness.types import Observation, PlannerMode, PromptSet
from .model import (
    DEFAULT_REWARDS,
    ACTION_NAMES,
    SokobanLevel,
    SokobanRewardTable,
    SokobanState,
    parse_action,
    reward_step,
    score_episode,
    step,
    trajectory_rewards,
)
from .render import render, to_png
from .solver import solve_bfs


def state_grid_text(state: SokobanState) -> str:
    level = state.level
    rows = []
    for r in range(level.height):
        row = []
        for c in range(level.width):
            cell = (r, c)
            if cell in level.walls:
                row.append("#")
            elif cell == state.player:
                row.append("+" if cell in level.targets else "@")
            elif cell in state.boxes:
                row.append("*" if cell in level.targets else "$")
            elif cell in level.targets:
                row.append(".")
            else:
                row.append(" ")
        rows.append("".join(row))
    return "\n".join(rows)


class SokobanEnv(Environment):
    name = "sokoban"
    action_vocab = tuple(ACTION_NAMES)
    max_decisions = 50
    context_style = "chat"

    def __init__(
        self,
        level: SokobanLevel,
        rewards: SokobanRewardTable = DEFAULT_REWARDS,
        render_images: bool = True,
    ):
        self._level = level
        self._rewards = rewards
        self._render = render_images
        self._state: Optional[SokobanState] = None
        self._trace: list[float] = []
        self._r_best: Optional[float] = level.r_best

    def level_id(self) -> str:
        return self._level.level_id

    @property
    def level(self) -> SokobanLevel:
        return self._level

    @property
    def state(self) -> SokobanState:
        if self._state is None:
            raise RuntimeError("environment not reset")
        return self._state

    def _observe(self) -> Observation:
        image = to_png(render(self.state)) if self._render else None
        return Observation(text=state_grid_text(self.state), image=image)

    def reset(self) -> Observation:
        self._state = self._level.initial_state()
        self._trace = []
        return self._observe()

    def step(self, action: str) -> tuple[Observation, float, bool]:
        parsed = parse_action(action)
        if parsed is None:
            raise ValueError(f"unknown action {action!r}")
        new_state, events = step(self.state, parsed)
        self._state = new_state
        reward = reward_step(events, self._rewards)
        self._trace.append(reward)
        return self._observe(), reward, new_state.done

    def r_best(self) -> float:
        """Reward total of an optimal plan; solved on demand if absent."""
        if self._r_best is None:
            plan = solve_bfs(self._level)
            if plan is None:
                raise RuntimeError(f"level {self._level.level_id!r} is unsolvable within bounds")
            self._r_best = sum(trajectory_rewards(self._level, plan, self._rewards))
        return self._r_best

    def score(self) -> float:
        return score_episode(self._trace, self.r_best())

    def prompt_set(self, mode: PlannerMode) -> PromptSet:
        system = load_prompt("sokoban_system")
        if mode is PlannerMode.GLOBAL:
            return PromptSet(system_prompt=system, io_prompt=load_prompt("sokoban_global"))
        return PromptSet(system_prompt=system, io_prompt=load_prompt("sokoban_online_format"))
