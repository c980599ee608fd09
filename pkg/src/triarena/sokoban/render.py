"""Deterministic tile rendering of board states.

Fixed 16 px tiles, fixed palette: brick-red walls, light floor, green
player, yellow boxes, red dot on targets. Output is a raw RGB array
plus helpers for PPM (P6) and PNG bytes.
"""

from __future__ import annotations

import numpy as np

from ..raster import to_png, to_ppm
from .model import SokobanState

__all__ = ["render", "to_png", "to_ppm", "TILE"]

TILE = 16

WALL = (178, 34, 34)
WALL_MORTAR = (140, 20, 20)
FLOOR = (222, 214, 194)
TARGET = (200, 30, 30)
BOX = (232, 196, 66)
BOX_EDGE = (160, 128, 30)
PLAYER = (46, 160, 67)


def _fill(img: np.ndarray, r: int, c: int, color: tuple[int, int, int]) -> None:
    img[r * TILE : (r + 1) * TILE, c * TILE : (c + 1) * TILE] = color


def _dot(img: np.ndarray, r: int, c: int, color: tuple[int, int, int], radius: int) -> None:
    cy, cx = r * TILE + TILE // 2, c * TILE + TILE // 2
    yy, xx = np.ogrid[:TILE, :TILE]
    mask = (yy - TILE // 2) ** 2 + (xx - TILE // 2) ** 2 <= radius**2
    tile = img[r * TILE : (r + 1) * TILE, c * TILE : (c + 1) * TILE]
    tile[mask] = color


def render(state: SokobanState) -> np.ndarray:
    """RGB uint8 array of shape (height*TILE, width*TILE, 3)."""
    level = state.level
    img = np.zeros((level.height * TILE, level.width * TILE, 3), dtype=np.uint8)
    img[:] = FLOOR
    for r in range(level.height):
        for c in range(level.width):
            cell = (r, c)
            if cell in level.walls:
                _fill(img, r, c, WALL)
                # mortar lines give walls a brick texture
                img[r * TILE + TILE // 2, c * TILE : (c + 1) * TILE] = WALL_MORTAR
                img[r * TILE : (r + 1) * TILE, c * TILE + TILE // 2] = WALL_MORTAR
                continue
            if cell in level.targets:
                _dot(img, r, c, TARGET, 3)
            if cell in state.boxes:
                _fill(img, r, c, BOX)
                img[r * TILE, c * TILE : (c + 1) * TILE] = BOX_EDGE
                img[(r + 1) * TILE - 1, c * TILE : (c + 1) * TILE] = BOX_EDGE
                img[r * TILE : (r + 1) * TILE, c * TILE] = BOX_EDGE
                img[r * TILE : (r + 1) * TILE, (c + 1) * TILE - 1] = BOX_EDGE
                if cell in level.targets:
                    _dot(img, r, c, TARGET, 3)
            elif cell == state.player:
                _dot(img, r, c, PLAYER, 6)
    return img

