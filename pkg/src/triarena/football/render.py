"""Deterministic top-down pitch rendering.

Green pitch with white markings; our team yellow, opponents light
blue, the controlled player ringed in blue, ball white. Same portable
raster outputs as the board renderer.
"""

from __future__ import annotations

import numpy as np

from ..raster import to_png, to_ppm
from .types import FIELD_X, FIELD_Y, GOAL_HALF_WIDTH, TEAM_OURS, FootballState, Vec

__all__ = ["render", "to_png", "to_ppm", "WIDTH", "HEIGHT"]

WIDTH = 480
HEIGHT = 220
MARGIN = 10

PITCH = (52, 130, 58)
LINE = (235, 235, 235)
OURS = (240, 210, 50)
OPPONENT = (150, 200, 235)
CONTROL_RING = (30, 80, 220)
BALL = (250, 250, 250)


def _px(p: Vec) -> tuple[int, int]:
    x = MARGIN + (p[0] + FIELD_X) / (2 * FIELD_X) * (WIDTH - 1 - 2 * MARGIN)
    y = MARGIN + (FIELD_Y - p[1]) / (2 * FIELD_Y) * (HEIGHT - 1 - 2 * MARGIN)
    return int(round(x)), int(round(y))


def _disc(img: np.ndarray, center: tuple[int, int], radius: int, color) -> None:
    cx, cy = center
    y0, y1 = max(0, cy - radius), min(img.shape[0], cy + radius + 1)
    x0, x1 = max(0, cx - radius), min(img.shape[1], cx + radius + 1)
    if y0 >= y1 or x0 >= x1:
        return
    yy, xx = np.ogrid[y0:y1, x0:x1]
    mask = (yy - cy) ** 2 + (xx - cx) ** 2 <= radius**2
    img[y0:y1, x0:x1][mask] = color


def render(state: FootballState) -> np.ndarray:
    img = np.zeros((HEIGHT, WIDTH, 3), dtype=np.uint8)
    img[:, :] = PITCH

    tl = _px((-FIELD_X, FIELD_Y))
    br = _px((FIELD_X, -FIELD_Y))
    img[tl[1], tl[0] : br[0] + 1] = LINE
    img[br[1], tl[0] : br[0] + 1] = LINE
    img[tl[1] : br[1] + 1, tl[0]] = LINE
    img[tl[1] : br[1] + 1, br[0]] = LINE
    mid_x = _px((0.0, 0.0))[0]
    img[tl[1] : br[1] + 1, mid_x] = LINE
    for gx in (-FIELD_X, FIELD_X):
        top = _px((gx, GOAL_HALF_WIDTH))
        bot = _px((gx, -GOAL_HALF_WIDTH))
        x0 = max(0, top[0] - 2)
        img[top[1] : bot[1] + 1, x0 : top[0] + 3] = LINE

    for i, player in enumerate(state.players):
        color = OURS if player.team == TEAM_OURS else OPPONENT
        center = _px(player.position)
        if i == state.controlled:
            _disc(img, center, 6, CONTROL_RING)
        _disc(img, center, 4, color)

    _disc(img, _px(state.ball.position), 2, BALL)
    return img
