"""Measure frame-skip effectiveness over the full scenario sweep."""

import statistics
import sys
import time

sys.path.insert(0, "src")

from triarena.football import AttackingBot, FootballEnv, scenario_sweep


def run(scenario, frame_skip):
    env = FootballEnv(scenario, frame_skip=frame_skip, render_images=False)
    bot = AttackingBot()
    env.reset()
    decisions = 0
    while not env.state.done and decisions < env.max_decisions:
        action = bot.decide(env.state)
        env.step(action)
        decisions += 1
    return decisions, env.score(), env.state.terminal, env.frames_elapsed


def main():
    t0 = time.time()
    rows = []
    for scenario in scenario_sweep():
        d_on, r_on, term_on, f_on = run(scenario, True)
        d_off, r_off, term_off, f_off = run(scenario, False)
        rows.append((scenario.id, d_on, d_off, r_on, r_off, term_on, term_off))
    total_on = sum(r[1] for r in rows)
    total_off = sum(r[2] for r in rows)
    mean_on = statistics.mean(r[3] for r in rows)
    mean_off = statistics.mean(r[4] for r in rows)
    reduction = 1 - total_on / total_off
    rel = abs(mean_on - mean_off) / max(abs(mean_off), 1e-9)
    print(f"scenarios: {len(rows)}")
    print(f"decisions on/off: {total_on} / {total_off}  reduction: {reduction:.1%}")
    print(f"mean reward on/off: {mean_on:.3f} / {mean_off:.3f}  rel diff: {rel:.1%}")
    print(f"terminal mismatches: {sum(1 for r in rows if r[5] != r[6])}")
    print(f"avg decisions per scenario on/off: {total_on/len(rows):.1f} / {total_off/len(rows):.1f}")
    print(f"elapsed: {time.time()-t0:.1f}s")
    worst = sorted(rows, key=lambda r: r[1] / max(r[2], 1))[-8:]
    for r in worst:
        print("  ", r)


if __name__ == "__main__":
    main()
