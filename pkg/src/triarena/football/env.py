"""Harness adapter: football as a steppable evaluation environment.

Each decision applies one frame; with frame-skip enabled, flight
phases and repeated straight-line running advance further frames
without agent queries. The episode score is the cumulative reward.
This environment runs stepwise only: one-shot planning is pointless
against 21 concurrently moving players.
"""

from __future__ import annotations

from typing import Optional

from ..harness.envbase import Environment
from ..harness.prompts import load_prompt
from ..harness.types import Observation, PlannerMode, PromptSet
from .autorender import auto_render
from .engine import BotPolicy, default_bots, step_frame
from .render import render, to_png
from .rewards import RewardTracker
from .types import (
    ACTION_VOCAB,
    DEFAULT_AUTO_RENDER,
    DEFAULT_PARAMS,
    DEFAULT_WEIGHTS,
    AutoRenderConfig,
    EngineParams,
    FootballState,
    RewardWeights,
    Scenario,
)


def state_text(state: FootballState) -> str:
    """Deterministic textual frame: ball, control flags, both rosters."""

    def fmt(p: tuple[float, float]) -> str:
        return f"({p[0]:.3f},{p[1]:.3f})"

    ball = state.ball
    if ball.in_flight:
        ball_part = f"ball {fmt(ball.position)} in_flight"
    elif ball.holder is not None:
        team = state.players[ball.holder].team
        ball_part = f"ball {fmt(ball.position)} held_by {team}#{ball.holder}"
    else:
        ball_part = f"ball {fmt(ball.position)} loose"
    me = state.players[state.controlled]
    flags = []
    if me.sprint:
        flags.append("sprint")
    if me.dribble:
        flags.append("dribble")
    flag_part = f" [{','.join(flags)}]" if flags else ""
    ours = " ".join(fmt(state.players[i].position) for i in state.our_players())
    opps = " ".join(fmt(state.players[i].position) for i in state.opponents())
    return "\n".join(
        [
            f"frame {state.frame}",
            ball_part,
            f"controlled ours#{state.controlled}{flag_part}",
            f"ours: {ours}",
            f"opponents: {opps}",
        ]
    )


class FootballEnv(Environment):
    name = "football"
    action_vocab = ACTION_VOCAB
    max_decisions = 400
    context_style = "chat"
    supported_modes = (PlannerMode.ONLINE,)

    def __init__(
        self,
        scenario: Scenario,
        weights: RewardWeights = DEFAULT_WEIGHTS,
        params: EngineParams = DEFAULT_PARAMS,
        auto_render_cfg: AutoRenderConfig = DEFAULT_AUTO_RENDER,
        frame_skip: bool = True,
        bots: BotPolicy = default_bots,
        render_images: bool = True,
    ):
        self._scenario = scenario
        self._weights = weights
        self._params = params
        self._ar_cfg = auto_render_cfg
        self._frame_skip = frame_skip
        self._bots = bots
        self._render = render_images
        self._state: Optional[FootballState] = None
        self._tracker: Optional[RewardTracker] = None
        self._last_actions: tuple[Optional[str], Optional[str]] = (None, None)
        self._skipped_frames = 0

    def level_id(self) -> str:
        return self._scenario.id

    @property
    def state(self) -> FootballState:
        if self._state is None:
            raise RuntimeError("environment not reset")
        return self._state

    @property
    def frames_elapsed(self) -> int:
        return self.state.frame

    @property
    def skipped_frames(self) -> int:
        return self._skipped_frames

    def _observe(self) -> Observation:
        image = to_png(render(self.state)) if self._render else None
        return Observation(text=state_text(self.state), image=image)

    def reset(self) -> Observation:
        self._state = self._scenario.initial_state()
        self._tracker = RewardTracker.start(self._state, self._weights)
        self._last_actions = (None, None)
        self._skipped_frames = 0
        return self._observe()

    def step(self, action: str) -> tuple[Observation, float, bool]:
        state = self.state
        tracker = self._tracker
        assert tracker is not None
        if state.done:
            raise RuntimeError("episode already terminated")

        reward = 0.0
        state, events = step_frame(state, action, self._params, self._bots)
        if not state.done and state.frame >= self._weights.horizon:
            state = state.with_(terminal="horizon")
        reward += tracker.reward_frame(state, events)
        self._last_actions = (self._last_actions[1], action)

        if self._frame_skip and not state.done:

            def on_frame(s: FootballState, e) -> None:
                nonlocal reward
                reward += tracker.reward_frame(s, e)

            state, skipped = auto_render(
                state,
                self._last_actions,
                self._ar_cfg,
                self._params,
                self._bots,
                horizon=self._weights.horizon,
                on_frame=on_frame,
            )
            self._skipped_frames += skipped

        self._state = state
        return self._observe(), reward, state.done

    def score(self) -> float:
        tracker = self._tracker
        if tracker is None:
            raise RuntimeError("environment not reset")
        return tracker.total

    def default_reply(self) -> Optional[str]:
        return "# action\naction_idle"

    def prompt_set(self, mode: PlannerMode) -> PromptSet:
        if mode is not PlannerMode.ONLINE:
            raise ValueError("football supports the Online planner only")
        return PromptSet(
            system_prompt=load_prompt("football_system"),
            io_prompt=load_prompt("football_online_format"),
        )
