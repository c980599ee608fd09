"""Initial-scene generation: 3 categories x 9 regions x 4 variants.

Personal scenes give the ball holder no open passing lane (every lane
to a forward teammate passes near a defender); Teamwork scenes
guarantee at least one open lane; RealWorld scenes ship as editable
fixture files (reconstructed formation snapshots, not measured data).
A passing lane is the straight segment from the holder to a non-keeper
teammate that is not behind the holder; it is open when no opponent
lies within LANE_BUFFER of the segment.
"""

from __future__ import annotations

import json
import math
import random
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .engine import point_segment_distance
from .types import (
    CATEGORIES,
    FIELD_X,
    FIELD_Y,
    REGIONS,
    TEAM_OPPONENT,
    TEAM_OURS,
    PlayerState,
    Scenario,
    Vec,
    region_bounds,
)

LANE_BUFFER = 0.06
MIN_SEPARATION = 0.035
HOLDER_CLEARANCE = 0.06
VARIANTS_PER_CELL = 4
_ATTEMPTS = 200
_SHAPE_ITERS = 80

OUR_GK = 0
OPP_GK = 11


def lane_candidates(players: tuple[PlayerState, ...], holder: int) -> list[int]:
    """Teammates reachable by a meaningful forward pass."""
    hx, hy = players[holder].position
    out = []
    for i, p in enumerate(players):
        if p.team != TEAM_OURS or i == holder or i == OUR_GK:
            continue
        dist = math.hypot(p.position[0] - hx, p.position[1] - hy)
        if p.position[0] >= hx - 0.05 and dist >= 0.08:
            out.append(i)
    return out


def lane_blockers(
    players: tuple[PlayerState, ...], holder: int, teammate: int, buffer: float = LANE_BUFFER
) -> list[int]:
    a = players[holder].position
    b = players[teammate].position
    return [
        i
        for i, p in enumerate(players)
        if p.team == TEAM_OPPONENT and point_segment_distance(p.position, a, b) < buffer
    ]


def open_lanes(
    players: tuple[PlayerState, ...], holder: int, buffer: float = LANE_BUFFER
) -> list[int]:
    return [
        tm for tm in lane_candidates(players, holder) if not lane_blockers(players, holder, tm, buffer)
    ]


def _clamp(p: Vec, margin: float = 0.02) -> Vec:
    return (
        max(-FIELD_X + margin, min(FIELD_X - margin, p[0])),
        max(-FIELD_Y + margin, min(FIELD_Y - margin, p[1])),
    )


def _separated(pos: Vec, taken: list[Vec], min_dist: float = MIN_SEPARATION) -> bool:
    return all(math.hypot(pos[0] - q[0], pos[1] - q[1]) >= min_dist for q in taken)


def _place(rng: random.Random, taken: list[Vec], sampler, tries: int = 60) -> Vec:
    for _ in range(tries):
        pos = _clamp(sampler())
        if _separated(pos, taken):
            taken.append(pos)
            return pos
    # Fall back to the last candidate, nudged toward free space.
    pos = _clamp(sampler())
    for _ in range(50):
        if _separated(pos, taken):
            break
        pos = _clamp((pos[0] + rng.uniform(-0.06, 0.06), pos[1] + rng.uniform(-0.06, 0.06)))
    taken.append(pos)
    return pos


def _sample_scene(rng: random.Random, region: str) -> tuple[list[PlayerState], int]:
    x_lo, x_hi, y_lo, y_hi = region_bounds(region)
    holder_pos = (
        rng.uniform(x_lo + 0.04, min(x_hi - 0.04, 0.88)),
        rng.uniform(y_lo + 0.04, y_hi - 0.04),
    )
    taken: list[Vec] = [holder_pos]

    ours: list[Vec] = [(-0.96, 0.0)]  # keeper
    for _ in range(3):  # close support
        ours.append(
            _place(
                rng,
                taken,
                lambda: (
                    holder_pos[0] + rng.uniform(-0.05, 0.3) * rng.choice((1, 1, -1)),
                    holder_pos[1] + rng.uniform(-0.3, 0.3),
                ),
            )
        )
    for _ in range(6):  # spread across our half and midfield
        ours.append(
            _place(
                rng,
                taken,
                lambda: (
                    rng.uniform(max(-0.9, holder_pos[0] - 0.5), min(0.9, holder_pos[0] + 0.55)),
                    rng.uniform(-FIELD_Y + 0.04, FIELD_Y - 0.04),
                ),
            )
        )

    opponents: list[Vec] = [(0.96, 0.0)]  # keeper
    presser = _place(
        rng,
        taken,
        lambda: (
            holder_pos[0] + rng.uniform(0.08, 0.14),
            holder_pos[1] + rng.uniform(-0.08, 0.08),
        ),
    )
    opponents.append(presser)
    for _ in range(5):  # defensive line toward their goal
        opponents.append(
            _place(
                rng,
                taken,
                lambda: (
                    rng.uniform(min(holder_pos[0] + 0.1, 0.85), 0.9),
                    holder_pos[1] + rng.uniform(-0.28, 0.28),
                ),
            )
        )
    for _ in range(4):  # the rest of their shape
        opponents.append(
            _place(
                rng,
                taken,
                lambda: (
                    rng.uniform(max(-0.6, holder_pos[0] - 0.3), 0.9),
                    rng.uniform(-FIELD_Y + 0.04, FIELD_Y - 0.04),
                ),
            )
        )

    players = [PlayerState(team=TEAM_OURS, position=p) for p in ours]
    players.insert(1, PlayerState(team=TEAM_OURS, position=holder_pos))
    players += [PlayerState(team=TEAM_OPPONENT, position=p) for p in opponents]
    return players, 1


def _move_player(players: list[PlayerState], idx: int, pos: Vec) -> None:
    players[idx] = PlayerState(team=players[idx].team, position=_clamp(pos))


def _shape_personal(rng: random.Random, players: list[PlayerState], holder: int) -> bool:
    holder_pos = players[holder].position
    for _ in range(_SHAPE_ITERS):
        lanes = open_lanes(tuple(players), holder)
        if not lanes:
            return True
        tm = lanes[0]
        a, b = holder_pos, players[tm].position
        # Recruit the opponent that has to travel least, keepers excluded.
        movable = [
            i
            for i, p in enumerate(players)
            if p.team == TEAM_OPPONENT and i != OPP_GK
        ]
        blocker = min(movable, key=lambda i: point_segment_distance(players[i].position, a, b))
        u = rng.uniform(0.35, 0.7)
        point = (a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1]))
        if math.hypot(point[0] - a[0], point[1] - a[1]) < HOLDER_CLEARANCE + 0.02:
            point = (a[0] + 0.75 * (b[0] - a[0]), a[1] + 0.75 * (b[1] - a[1]))
        _move_player(players, blocker, point)
    return not open_lanes(tuple(players), holder)


def _shape_teamwork(players: list[PlayerState], holder: int) -> bool:
    if open_lanes(tuple(players), holder):
        return True
    holder_pos = players[holder].position
    candidates = lane_candidates(tuple(players), holder)
    if not candidates:
        return False
    # Clear the least-contested lane by pushing its blockers sideways.
    tm = min(candidates, key=lambda i: len(lane_blockers(tuple(players), holder, i)))
    a, b = holder_pos, players[tm].position
    ab = (b[0] - a[0], b[1] - a[1])
    length = math.hypot(*ab) or 1.0
    perp = (-ab[1] / length, ab[0] / length)
    for blocker in lane_blockers(tuple(players), holder, tm):
        p = players[blocker].position
        side = (p[0] - a[0]) * perp[0] + (p[1] - a[1]) * perp[1]
        sign = 1.0 if side >= 0 else -1.0
        shift = LANE_BUFFER * 1.7 - abs(side)
        _move_player(
            players,
            blocker,
            (p[0] + sign * shift * perp[0], p[1] + sign * shift * perp[1]),
        )
    return tm in open_lanes(tuple(players), holder)


def _valid(players: list[PlayerState], holder: int, region: str) -> bool:
    x_lo, x_hi, y_lo, y_hi = region_bounds(region)
    hx, hy = players[holder].position
    if not (x_lo <= hx <= x_hi and y_lo <= hy <= y_hi):
        return False
    for i, p in enumerate(players):
        if p.team == TEAM_OPPONENT:
            if math.hypot(p.position[0] - hx, p.position[1] - hy) < HOLDER_CLEARANCE:
                return False
        if abs(p.position[0]) > FIELD_X or abs(p.position[1]) > FIELD_Y:
            return False
    return True


def generate_scenario(category: str, region: str, index: int) -> Scenario:
    """Deterministic scenario for one (category, region, variant) cell."""
    if category not in CATEGORIES:
        raise ValueError(f"unknown category {category!r}")
    if region not in REGIONS:
        raise ValueError(f"unknown region {region!r}")
    if category == "RealWorld":
        return _realworld_scenario(region, index)

    for attempt in range(_ATTEMPTS):
        rng = random.Random(f"football/{category}/{region}/{index}/a{attempt}")
        players, holder = _sample_scene(rng, region)
        if category == "Personal":
            ok = _shape_personal(rng, players, holder)
        else:
            ok = _shape_teamwork(players, holder)
        if not ok or not _valid(players, holder, region):
            continue
        lanes = open_lanes(tuple(players), holder)
        if category == "Personal" and lanes:
            continue
        if category == "Teamwork" and not lanes:
            continue
        return Scenario(
            id=f"{category.lower()}-{region.lower()}-{index}",
            category=category,
            region=region,
            players=tuple(players),
            ball=players[holder].position,
            holder=holder,
        )
    raise RuntimeError(f"no valid scenario for ({category}, {region}, {index})")


def _realworld_raw() -> dict:
    text = resources.files("triarena.football").joinpath("data/realworld.json").read_text("utf-8")
    return json.loads(text)


def _realworld_scenario(region: str, index: int) -> Scenario:
    raw = _realworld_raw()
    key = f"{region}/{index}"
    entry = next((e for e in raw["scenarios"] if f"{e['region']}/{e['index']}" == key), None)
    if entry is None:
        raise KeyError(f"no fixture for RealWorld {key}")
    players = tuple(
        PlayerState(team=p["team"], position=(p["x"], p["y"])) for p in entry["players"]
    )
    return Scenario(
        id=f"realworld-{region.lower()}-{index}",
        category="RealWorld",
        region=region,
        players=players,
        ball=players[entry["holder"]].position,
        holder=entry["holder"],
    )


def scenario_sweep() -> list[Scenario]:
    """All 108 scenarios: every category, region, and variant."""
    return [
        generate_scenario(category, region, index)
        for category in CATEGORIES
        for region in REGIONS
        for index in range(VARIANTS_PER_CELL)
    ]


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "id": s.id,
        "category": s.category,
        "region": s.region,
        "players": [
            {"team": p.team, "x": p.position[0], "y": p.position[1]} for p in s.players
        ],
        "ball": {"x": s.ball[0], "y": s.ball[1]},
        "holder": s.holder,
    }


def scenario_from_dict(d: dict) -> Scenario:
    players = tuple(PlayerState(team=p["team"], position=(p["x"], p["y"])) for p in d["players"])
    return Scenario(
        id=d["id"],
        category=d["category"],
        region=d["region"],
        players=players,
        ball=(d["ball"]["x"], d["ball"]["y"]),
        holder=d["holder"],
    )


def save_scenarios(scenarios: list[Scenario], directory: Union[str, Path]) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    by_category: dict[str, list[str]] = {}
    for s in scenarios:
        (directory / f"{s.id}.json").write_text(json.dumps(scenario_to_dict(s), indent=2) + "\n")
        by_category.setdefault(s.category, []).append(s.id)
    manifest = {"total": len(scenarios), "categories": by_category}
    (directory / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def load_scenarios(directory: Union[str, Path]) -> list[Scenario]:
    directory = Path(directory)
    manifest_path = directory / "manifest.json"
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text())
        ids = [sid for ids in manifest["categories"].values() for sid in ids]
    else:
        ids = sorted(p.stem for p in directory.glob("*.json") if p.name != "manifest.json")
    return [
        scenario_from_dict(json.loads((directory / f"{sid}.json").read_text())) for sid in ids
    ]
