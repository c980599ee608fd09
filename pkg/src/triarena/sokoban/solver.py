"""Breadth-first Sokoban solver with optional deadlock pruning.

The search key is the exact (player, boxes) pair, so the pruned and
unpruned searches explore the same graph and return plans of equal
length; pruning only discards states from which no solution can exist
(simple corner and wall-line deadlocks, which are sound but not
complete).
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional

from .model import Action, Cell, SokobanLevel

_DIRS = [(-1, 0), (1, 0), (0, -1), (0, 1)]


def _corner_deadlock(level: SokobanLevel, box: Cell) -> bool:
    r, c = box
    up = not level.is_floor((r - 1, c))
    down = not level.is_floor((r + 1, c))
    left = not level.is_floor((r, c - 1))
    right = not level.is_floor((r, c + 1))
    return (up or down) and (left or right)


def _line_deadlock(level: SokobanLevel, box: Cell) -> bool:
    """Box pressed against an unbroken wall run with no target on the run.

    Along such a run the box can only slide sideways, never leave the
    wall, so if no cell of the run is a target the box is stuck.
    """
    r, c = box
    for dr, dc in _DIRS:
        if level.is_floor((r + dr, c + dc)):
            continue
        # wall on side (dr, dc); scan the perpendicular line both ways
        pr, pc = (0, 1) if dr else (1, 0)
        stuck = True
        has_target = False
        for sign in (1, -1):
            rr, cc = r, c
            while level.is_floor((rr, cc)):
                if (rr, cc) in level.targets:
                    has_target = True
                    break
                if level.is_floor((rr + dr, cc + dc)):
                    stuck = False  # gap in the wall run: box can leave the line
                    break
                rr += sign * pr
                cc += sign * pc
            if has_target or not stuck:
                break
        if stuck and not has_target:
            return True
    return False


def is_deadlock(level: SokobanLevel, boxes: Iterable[Cell]) -> bool:
    """True when some box off its target provably can never reach one."""
    box_set = frozenset(boxes)
    for box in box_set:
        if box in level.targets:
            continue
        if _corner_deadlock(level, box) or _line_deadlock(level, box):
            return True
    return False


def solve_bfs(
    level: SokobanLevel,
    max_steps: int = 50,
    pruned: bool = True,
    node_budget: Optional[int] = None,
) -> Optional[list[Action]]:
    """Minimum-length action plan solving the level, or None.

    None means no solution within ``max_steps`` (or, when a node budget
    is given and exhausted, that the search gave up; callers doing
    generation treat that as a retry).
    """
    start_boxes = level.boxes
    start = (level.player, start_boxes)
    if level.targets <= start_boxes:
        return []
    if pruned and is_deadlock(level, start_boxes):
        return None

    actions = list(Action)
    visited = {start}
    # parent map for plan reconstruction
    parents: dict[tuple[Cell, frozenset[Cell]], tuple[tuple[Cell, frozenset[Cell]], Action]] = {}
    frontier = deque([start])
    depth = 0
    expanded = 0
    while frontier and depth < max_steps:
        depth += 1
        for _ in range(len(frontier)):
            player, boxes = frontier.popleft()
            expanded += 1
            if node_budget is not None and expanded > node_budget:
                return None
            for action in actions:
                dr, dc = action.delta
                dest = (player[0] + dr, player[1] + dc)
                if not level.is_floor(dest):
                    continue
                if dest in boxes:
                    box_dest = (dest[0] + dr, dest[1] + dc)
                    if not level.is_floor(box_dest) or box_dest in boxes:
                        continue
                    new_boxes = (boxes - {dest}) | {box_dest}
                else:
                    new_boxes = boxes
                key = (dest, new_boxes)
                if key in visited:
                    continue
                visited.add(key)
                if pruned and new_boxes is not boxes and is_deadlock(level, new_boxes):
                    continue
                parents[key] = ((player, boxes), action)
                if level.targets <= new_boxes:
                    plan = [action]
                    node = (player, boxes)
                    while node != start:
                        node, prev_action = parents[node]
                        plan.append(prev_action)
                    plan.reverse()
                    return plan
                frontier.append(key)
    return None
