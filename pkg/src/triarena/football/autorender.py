"""Frame-skip machinery that cuts agent queries without changing play.

Two cases advance the simulation without a decision: (a) while the
ball is in flight, control inputs are ineffective, so frames run on
the built-in policy until the flight resolves; (b) after two identical
directional commands, the same direction is repeated for up to
max_skip_frames frames, each one gated beforehand by a constant-
velocity lookahead that returns control as soon as any opponent is
predicted within the proximity threshold of the holder.
"""

from __future__ import annotations

import math
from typing import Callable, Optional

from .engine import BotPolicy, default_bots, step_frame
from .types import (
    DEFAULT_AUTO_RENDER,
    DEFAULT_PARAMS,
    DIRECTION_ACTIONS,
    AutoRenderConfig,
    EngineParams,
    FootballState,
    FrameEvents,
)

OnFrame = Callable[[FootballState, FrameEvents], None]


def lookahead_clear(
    state: FootballState,
    cfg: AutoRenderConfig = DEFAULT_AUTO_RENDER,
) -> bool:
    """Predict lookahead frames at constant velocity; False when any
    opponent closes within the proximity threshold of the holder."""
    holder_idx = state.ball.holder
    if holder_idx is None:
        return False
    holder = state.players[holder_idx]
    hx, hy = holder.position
    hvx, hvy = holder.velocity
    for i in range(1, cfg.lookahead + 1):
        fx, fy = hx + i * hvx, hy + i * hvy
        for o in state.opponents():
            opp = state.players[o]
            ox = opp.position[0] + i * opp.velocity[0]
            oy = opp.position[1] + i * opp.velocity[1]
            if math.hypot(fx - ox, fy - oy) < cfg.proximity_threshold:
                return False
    return True


def auto_render(
    state: FootballState,
    last_two_actions: tuple[Optional[str], Optional[str]],
    cfg: AutoRenderConfig = DEFAULT_AUTO_RENDER,
    params: EngineParams = DEFAULT_PARAMS,
    bots: BotPolicy = default_bots,
    horizon: int = 400,
    on_frame: Optional[OnFrame] = None,
) -> tuple[FootballState, int]:
    """Run the applicable skip phases after a decision frame.

    Returns the advanced state and the number of frames rendered
    without an agent query.
    """
    skipped = 0

    def advance(action: Optional[str]) -> None:
        nonlocal state, skipped
        state, events = step_frame(state, action, params, bots)
        if not state.done and state.frame >= horizon:
            state = state.with_(terminal="horizon")
        if on_frame is not None:
            on_frame(state, events)
        skipped += 1

    while state.ball.in_flight and not state.done:
        advance(None)

    prev, last = last_two_actions
    if last is not None and prev == last and last in DIRECTION_ACTIONS:
        linear = 0
        while (
            linear < cfg.max_skip_frames
            and not state.done
            and not state.ball.in_flight
            and state.ball.holder == state.controlled
        ):
            if not lookahead_clear(state, cfg):
                break
            advance(last)
            linear += 1

    return state, skipped
