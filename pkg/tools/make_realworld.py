"""Builds the RealWorld scenario fixture file.

Placements are reconstructed from standard formation shapes anchored
to each field region; they are plausible match snapshots, not measured
data. Rerun to regenerate src/triarena/football/data/realworld.json.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

FIELD_X, FIELD_Y = 1.0, 0.42
REGIONS = [f"R{i}" for i in range(1, 10)]

# 4-3-3 for us, 4-4-2 block for them; (x, y) in field units.
OURS_433 = [
    (-0.96, 0.0),
    (-0.62, -0.30), (-0.66, -0.10), (-0.66, 0.10), (-0.62, 0.30),
    (-0.25, -0.20), (-0.30, 0.00), (-0.25, 0.20),
    (0.22, -0.26), (0.28, 0.00), (0.22, 0.26),
]
OPPONENTS_442 = [
    (0.96, 0.0),
    (0.62, -0.28), (0.68, -0.09), (0.68, 0.09), (0.62, 0.28),
    (0.30, -0.30), (0.34, -0.10), (0.34, 0.10), (0.30, 0.30),
    (0.02, -0.12), (0.02, 0.12),
]

# Which of our outfield players carries the ball in each region, with a
# per-variant nudge pattern that shifts the whole opposing block.
HOLDER_BY_REGION = {
    "R1": 4, "R2": 3, "R3": 9,
    "R4": 1, "R5": 6, "R6": 9,
    "R7": 1, "R8": 2, "R9": 8,
}
VARIANT_SHIFTS = [(0.0, 0.0), (0.05, -0.03), (-0.04, 0.04), (0.08, 0.02)]


def region_bounds(region):
    idx = REGIONS.index(region)
    row, col = divmod(idx, 3)
    x_lo = -FIELD_X + col * (2 * FIELD_X / 3)
    y_hi = FIELD_Y - row * (2 * FIELD_Y / 3)
    return x_lo, x_lo + 2 * FIELD_X / 3, y_hi - 2 * FIELD_Y / 3, y_hi


def clamp(x, y):
    return (max(-0.97, min(0.97, x)), max(-0.40, min(0.40, y)))


def build(region, index):
    x_lo, x_hi, y_lo, y_hi = region_bounds(region)
    cx = (x_lo + x_hi) / 2
    cy = (y_lo + y_hi) / 2
    sx, sy = VARIANT_SHIFTS[index]

    holder = HOLDER_BY_REGION[region]
    base_holder = OURS_433[holder]
    # Translate our shape so the holder sits in the region's heart.
    dx = cx + sx * 0.5 - base_holder[0]
    dy = cy + sy * 0.5 - base_holder[1]

    ours = []
    for i, (x, y) in enumerate(OURS_433):
        if i == 0:
            ours.append((-0.96, 0.0))
        else:
            ours.append(clamp(x + dx * 0.8 + (0.2 * dx if i == holder else 0.0),
                              y + dy * 0.8 + (0.2 * dy if i == holder else 0.0)))
    hx, hy = cx + sx * 0.5, cy + sy * 0.5
    hx = max(x_lo + 0.03, min(x_hi - 0.03, hx))
    hy = max(y_lo + 0.03, min(y_hi - 0.03, hy))
    ours[holder] = (hx, hy)

    opponents = []
    for i, (x, y) in enumerate(OPPONENTS_442):
        if i == 0:
            opponents.append((0.96, 0.0))
            continue
        # Their block slides toward the ball but keeps goal-side bias.
        bx = x + (hx - 0.0) * 0.35 + sx
        by = y + hy * 0.5 + sy
        pos = clamp(bx, by)
        # Nobody starts inside the holder's clearance bubble.
        while math.hypot(pos[0] - hx, pos[1] - hy) < 0.08:
            pos = clamp(pos[0] + 0.06, pos[1] + 0.05)
        opponents.append(pos)

    players = [{"team": "ours", "x": round(x, 4), "y": round(y, 4)} for x, y in ours]
    players += [{"team": "opponent", "x": round(x, 4), "y": round(y, 4)} for x, y in opponents]
    return {"region": region, "index": index, "holder": holder, "players": players}


def main():
    scenarios = [build(region, index) for region in REGIONS for index in range(4)]
    for s in scenarios:
        hx = s["players"][s["holder"]]["x"]
        hy = s["players"][s["holder"]]["y"]
        x_lo, x_hi, y_lo, y_hi = region_bounds(s["region"])
        assert x_lo <= hx <= x_hi and y_lo <= hy <= y_hi, s["region"]
        for p in s["players"][11:]:
            assert math.hypot(p["x"] - hx, p["y"] - hy) >= 0.06
    doc = {
        "provenance": "reconstructed from formation heuristics, not measured match data",
        "scenarios": scenarios,
    }
    out = Path(__file__).resolve().parents[1] / "src/triarena/football/data/realworld.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {out} ({len(scenarios)} scenes)")


if __name__ == "__main__":
    main()
