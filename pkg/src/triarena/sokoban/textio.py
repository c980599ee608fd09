"""Text serialization of levels and the on-disk corpus layout.

Grid characters follow common Sokoban notation: ``#`` wall, space
floor, ``.`` target, ``$`` box, ``*`` box on target, ``@`` player,
``+`` player on target. Each file starts with a metadata header line:

    ; tier=<k> optimal=<n> rbest=<r>
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Union

from .model import SokobanLevel

_HEADER_RE = re.compile(r"^;\s*tier=(\d+)\s+optimal=(\d+)\s+rbest=(-?\d+(?:\.\d+)?)\s*$")


def to_text(level: SokobanLevel) -> str:
    """Render a level document; the header appears when metadata is set."""
    rows = []
    for r in range(level.height):
        row = []
        for c in range(level.width):
            cell = (r, c)
            if cell in level.walls:
                row.append("#")
            elif cell == level.player:
                row.append("+" if cell in level.targets else "@")
            elif cell in level.boxes:
                row.append("*" if cell in level.targets else "$")
            elif cell in level.targets:
                row.append(".")
            else:
                row.append(" ")
        rows.append("".join(row))
    if level.optimal_steps is None or level.r_best is None:
        return "\n".join(rows) + "\n"
    header = f"; tier={level.tier} optimal={level.optimal_steps} rbest={level.r_best}"
    return "\n".join([header, *rows]) + "\n"


def from_text(text: str, level_id: str = "") -> SokobanLevel:
    """Parse a level document; the metadata header is optional.

    Without a header the solver-derived fields start unset and are
    recomputed on demand.
    """
    lines = text.rstrip("\n").split("\n")
    match = _HEADER_RE.match(lines[0]) if lines else None
    if match:
        tier, optimal, r_best = int(match.group(1)), int(match.group(2)), float(match.group(3))
        grid = lines[1:]
    elif lines and lines[0].startswith(";"):
        raise ValueError("malformed header line '; tier=... optimal=... rbest=...'")
    else:
        tier, optimal, r_best = 0, None, None
        grid = lines
    if not grid:
        raise ValueError("level has no grid rows")
    width = max(len(row) for row in grid)
    walls, targets, boxes = set(), set(), set()
    player = None
    for r, row in enumerate(grid):
        for c in range(width):
            ch = row[c] if c < len(row) else "#"
            cell = (r, c)
            if ch == "#":
                walls.add(cell)
            elif ch == ".":
                targets.add(cell)
            elif ch == "$":
                boxes.add(cell)
            elif ch == "*":
                boxes.add(cell)
                targets.add(cell)
            elif ch == "@":
                player = cell
            elif ch == "+":
                player = cell
                targets.add(cell)
            elif ch != " ":
                raise ValueError(f"unknown cell character {ch!r} at {cell}")
    if player is None:
        raise ValueError("level has no player")
    return SokobanLevel(
        height=len(grid),
        width=width,
        walls=frozenset(walls),
        targets=frozenset(targets),
        boxes=frozenset(boxes),
        player=player,
        tier=tier,
        level_id=level_id,
        optimal_steps=optimal,
        r_best=r_best,
    )


def save_corpus(levels: list[SokobanLevel], directory: Union[str, Path]) -> None:
    """Write one file per level plus a manifest grouping ids by tier."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    tiers: dict[str, list[str]] = {}
    for level in levels:
        if not level.level_id:
            raise ValueError("levels need ids to be saved")
        if level.optimal_steps is None or level.r_best is None:
            raise ValueError(f"level {level.level_id} lacks solver metadata")
        (directory / f"{level.level_id}.txt").write_text(to_text(level))
        tiers.setdefault(str(level.tier), []).append(level.level_id)
    manifest = {"total": len(levels), "tiers": tiers}
    (directory / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def load_corpus(directory: Union[str, Path]) -> list[SokobanLevel]:
    directory = Path(directory)
    manifest_path = directory / "manifest.json"
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text())
        ids = [level_id for ids in manifest["tiers"].values() for level_id in ids]
    else:
        ids = [path.stem for path in sorted(directory.glob("t*.txt"))]
    return [
        from_text((directory / f"{level_id}.txt").read_text(), level_id=level_id) for level_id in ids
    ]
