"""Level generation: reverse play from a solved pose.

Starting from boxes sitting on their targets, a random walk of player
moves and box pulls walks the position backwards; replaying the walk
forwards is then one (not necessarily optimal) solution, so every
emitted level is solvable by construction. A BFS pass certifies the
true optimum and the level's best achievable reward before a level is
accepted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import Cell, SokobanLevel, trajectory_rewards
from .solver import solve_bfs

_DIRS = [(-1, 0), (1, 0), (0, -1), (0, 1)]


@dataclass(frozen=True)
class TierSpec:
    size: int  # square grid side
    boxes: int
    min_steps: int  # accepted levels need at least this optimum
    walk_len: int  # reverse-walk budget, bounds the optimum from above
    wall_density: float  # interior wall fraction before connectivity trim


TIER_TABLE: dict[int, TierSpec] = {
    1: TierSpec(size=7, boxes=1, min_steps=3, walk_len=14, wall_density=0.12),
    2: TierSpec(size=7, boxes=2, min_steps=5, walk_len=18, wall_density=0.12),
    3: TierSpec(size=9, boxes=2, min_steps=7, walk_len=22, wall_density=0.15),
    4: TierSpec(size=9, boxes=3, min_steps=9, walk_len=26, wall_density=0.15),
    5: TierSpec(size=11, boxes=3, min_steps=11, walk_len=30, wall_density=0.18),
    6: TierSpec(size=11, boxes=4, min_steps=13, walk_len=32, wall_density=0.18),
    7: TierSpec(size=13, boxes=4, min_steps=15, walk_len=34, wall_density=0.20),
    8: TierSpec(size=13, boxes=4, min_steps=18, walk_len=38, wall_density=0.20),
}

# 6 tiers x 23 + 2 x 22 = 182 levels; the two hardest tiers carry one less.
TIER_COUNTS: dict[int, int] = {1: 23, 2: 23, 3: 23, 4: 23, 5: 23, 6: 23, 7: 22, 8: 22}

MAX_PLAN_STEPS = 50
_ATTEMPT_BUDGET = 400
_NODE_BUDGET = 150_000


def _build_floor(rng: random.Random, spec: TierSpec) -> set[Cell]:
    """Perimeter walls plus random interior walls, trimmed to one
    connected floor component."""
    n = spec.size
    interior = [(r, c) for r in range(1, n - 1) for c in range(1, n - 1)]
    walls = {cell for cell in interior if rng.random() < spec.wall_density}
    floor = [cell for cell in interior if cell not in walls]
    if not floor:
        return set()
    # keep only the largest connected component
    seen: set[Cell] = set()
    best: set[Cell] = set()
    floor_set = set(floor)
    for start in floor:
        if start in seen:
            continue
        component = {start}
        queue = [start]
        seen.add(start)
        while queue:
            r, c = queue.pop()
            for dr, dc in _DIRS:
                nxt = (r + dr, c + dc)
                if nxt in floor_set and nxt not in seen:
                    seen.add(nxt)
                    component.add(nxt)
                    queue.append(nxt)
        if len(component) > len(best):
            best = component
    return best


def _reverse_walk(
    rng: random.Random, floor: set[Cell], targets: list[Cell], spec: TierSpec
) -> tuple[frozenset[Cell], Cell, int]:
    """Walk backwards from the solved pose; returns (boxes, player, pulls)."""
    boxes = set(targets)
    player_options = [
        (t[0] + dr, t[1] + dc)
        for t in targets
        for dr, dc in _DIRS
        if (t[0] + dr, t[1] + dc) in floor and (t[0] + dr, t[1] + dc) not in boxes
    ]
    if not player_options:
        return frozenset(boxes), (-1, -1), 0
    player = rng.choice(player_options)
    pulls = 0
    for _ in range(spec.walk_len):
        moves = []
        for dr, dc in _DIRS:
            dest = (player[0] + dr, player[1] + dc)
            if dest not in floor or dest in boxes:
                continue
            behind = (player[0] - dr, player[1] - dc)
            can_pull = behind in boxes
            moves.append((dr, dc, can_pull))
        if not moves:
            break
        pull_moves = [m for m in moves if m[2]]
        if pull_moves and rng.random() < 0.6:
            dr, dc, _ = rng.choice(pull_moves)
            behind = (player[0] - dr, player[1] - dc)
            boxes.remove(behind)
            boxes.add(player)
            pulls += 1
        else:
            dr, dc, _ = rng.choice(moves)
        player = (player[0] + dr, player[1] + dc)
    return frozenset(boxes), player, pulls


def generate_level(tier: int, seed: int) -> SokobanLevel:
    """Deterministically generate one certified level for (tier, seed)."""
    if tier not in TIER_TABLE:
        raise ValueError(f"unknown tier {tier}; expected 1..{len(TIER_TABLE)}")
    spec = TIER_TABLE[tier]
    for attempt in range(_ATTEMPT_BUDGET):
        rng = random.Random(f"sokoban/t{tier}/s{seed}/a{attempt}")
        floor = _build_floor(rng, spec)
        if len(floor) < spec.boxes * 4 + 2:
            continue
        cells = sorted(floor)
        targets = rng.sample(cells, spec.boxes)
        boxes, player, pulls = _reverse_walk(rng, floor, targets, spec)
        if player not in floor or pulls < spec.boxes:
            continue
        target_set = frozenset(targets)
        if target_set <= boxes:  # already solved
            continue
        n = spec.size
        walls = frozenset(
            (r, c) for r in range(n) for c in range(n) if (r, c) not in floor
        )
        try:
            level = SokobanLevel(
                height=n,
                width=n,
                walls=walls,
                targets=target_set,
                boxes=boxes,
                player=player,
                tier=tier,
                level_id=f"t{tier}-{seed:03d}",
            )
        except ValueError:
            continue
        plan = solve_bfs(level, max_steps=MAX_PLAN_STEPS, node_budget=_NODE_BUDGET)
        if plan is None or not (spec.min_steps <= len(plan) <= MAX_PLAN_STEPS):
            continue
        rewards = trajectory_rewards(level, plan)
        r_best = sum(rewards)
        return SokobanLevel(
            height=level.height,
            width=level.width,
            walls=level.walls,
            targets=level.targets,
            boxes=level.boxes,
            player=level.player,
            tier=tier,
            level_id=level.level_id,
            optimal_steps=len(plan),
            r_best=r_best,
        )
    raise RuntimeError(f"no level found for tier {tier}, seed {seed} within attempt budget")


def generate_corpus(seed_base: int = 0) -> list[SokobanLevel]:
    """The full level sweep: every tier at its published count, 182 total."""
    levels = []
    for tier, count in TIER_COUNTS.items():
        for seed in range(count):
            levels.append(generate_level(tier, seed_base + seed))
    return levels
