"""Release gate: one test per headline guarantee, one printed verdict each.

Each test prints a [PASS]/[FAIL] line with the measured numbers so the
run log doubles as the acceptance record. The suite uses only primary
package code plus hand-authored fixtures; nothing here depends on the
browser toolkit.
"""

import itertools
import random
import statistics
import time
import zlib

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from triarena.football import AttackingBot, FootballEnv
from triarena.football.rewards import RewardTracker, s_pass
from triarena.football.types import FrameEvents
from triarena.harness.agents import IdleAgent, RandomAgent
from triarena.harness.planner import build_online_context, run_episode
from triarena.harness.prompts import IMAGE_PLACEHOLDER
from triarena.harness.types import (
    Observation,
    PlannerConfig,
    PlannerMode,
    PromptSet,
    classify_errors,
)
from triarena.metrics import RunSpec, aggregate
from triarena.sokoban.env import SokobanEnv
from triarena.sokoban.model import SokobanLevel
from triarena.sokoban.solver import solve_bfs
from triarena.webaes.pso import PsoConfig, pso_search, ranking_agreement
from triarena.webaes.scoring import aes
from triarena.webaes.types import ScoreWeights

from football_fixtures import duel_state, no_bots
from oracles import brute_force_assignment, bfs_unpruned
from web_fixtures import (
    clone_page,
    landing_page,
    panel_page,
    pso_fixture,
    run_pages,
    tweak_element,
)


def announce(capsys, ok: bool, label: str, detail: str) -> None:
    with capsys.disabled():
        print(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}", flush=True)


# --- 1. Sokoban metric identities ------------------------------------------


def test_c01_sokoban_metric_identities(capsys, sokoban_corpus):
    t0 = time.time()
    failures = []
    for level in sokoban_corpus:
        plan = solve_bfs(level)
        env = SokobanEnv(level, render_images=False)
        env.reset()
        for action in plan:
            env.step(action.value)
        optimal_score = env.score()

        idle = SokobanEnv(level, render_images=False)
        idle.reset()
        idle_score = idle.score()

        if optimal_score != 100.0 or idle_score != 100.0 - level.r_best:
            failures.append((level.level_id, optimal_score, idle_score))
    elapsed = time.time() - t0
    ok = not failures and elapsed < 60.0
    announce(
        capsys, ok, "sokoban metric identities",
        f"{len(sokoban_corpus) - len(failures)}/{len(sokoban_corpus)} levels, "
        f"optimal=100.000 and idle=100-r_best exactly, {elapsed:.1f}s",
    )
    assert not failures, failures[:5]
    assert elapsed < 60.0


# --- 2. Pruned search matches exhaustive search -----------------------------


def _open_levels(height, width, n_boxes, walls=frozenset()):
    cells = [
        (r, c) for r in range(height) for c in range(width) if (r, c) not in walls
    ]
    for player in cells:
        rest = [c for c in cells if c != player]
        for boxes in itertools.combinations(rest, n_boxes):
            remaining = [c for c in rest if c not in boxes]
            for targets in itertools.combinations(remaining, n_boxes):
                yield SokobanLevel(
                    height=height,
                    width=width,
                    walls=walls,
                    targets=frozenset(targets),
                    boxes=frozenset(boxes),
                    player=player,
                )


def _plan_len(plan):
    return None if plan is None else len(plan)


def test_c02_pruned_search_is_optimal(capsys):
    t0 = time.time()
    families = [
        ("4x4 one box", _open_levels(4, 4, 1), 1),
        ("3x3 two boxes", _open_levels(3, 3, 2), 1),
        ("6x6 walled one box", _open_levels(6, 6, 1, walls=frozenset({(2, 2), (2, 3), (3, 2)})), 7),
        ("5x5 two boxes", _open_levels(5, 5, 2), 1201),
    ]
    checked = 0
    mismatches = []
    for name, levels, stride in families:
        for i, level in enumerate(levels):
            if i % stride:
                continue
            pruned = _plan_len(solve_bfs(level, max_steps=60, pruned=True))
            unpruned = _plan_len(solve_bfs(level, max_steps=60, pruned=False))
            if pruned != unpruned:
                mismatches.append((name, level.player, level.boxes, level.targets))
            checked += 1
    elapsed = time.time() - t0
    ok = not mismatches and elapsed < 120.0
    announce(
        capsys, ok, "pruned search optimality",
        f"{checked} small levels, {len(mismatches)} plan-length mismatches, {elapsed:.1f}s",
    )
    assert not mismatches, mismatches[:5]
    assert elapsed < 120.0


# --- 3. Random beats idle across the corpus ---------------------------------


def _corpus_results(sokoban_corpus, agent_kind: str, repeats: int):
    cfg = PlannerConfig(mode=PlannerMode.ONLINE)
    results = []
    for level in sokoban_corpus:
        for repeat in range(repeats):
            env = SokobanEnv(level, render_images=False)
            if agent_kind == "random":
                seed = zlib.crc32(f"{level.level_id}:{repeat}".encode())
                agent = RandomAgent(env, seed=seed)
            else:
                agent = IdleAgent(env)
            results.append(run_episode(agent, env, cfg))
    return results


def test_c03_random_agent_outscores_idle(capsys, sokoban_corpus):
    t0 = time.time()
    repeats = 3
    spec = RunSpec(environment="sokoban", mode=PlannerMode.ONLINE, repeats=repeats)
    random_report = aggregate(_corpus_results(sokoban_corpus, "random", repeats), spec)
    idle_report = aggregate(_corpus_results(sokoban_corpus, "idle", repeats), spec)
    margin = random_report.mean - idle_report.mean
    elapsed = time.time() - t0
    ok = margin > 2.0 * random_report.stderr and elapsed < 300.0
    announce(
        capsys, ok, "baseline ordering",
        f"random {random_report.mean:.2f} > idle {idle_report.mean:.2f}, "
        f"margin {margin:.2f} vs 2*stderr {2 * random_report.stderr:.2f}, {elapsed:.1f}s",
    )
    assert margin > 2.0 * random_report.stderr
    assert elapsed < 300.0


# --- 4. Assignment equals permutation brute force ----------------------------


def test_c04_assignment_matches_brute_force(capsys):
    # Integer-valued entries keep every candidate total exactly
    # representable, so "equal" is meaningful across summation orders.
    rng = random.Random(123)
    exact_misses = 0
    for _ in range(1000):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        matrix = [
            [float(rng.randint(-100, 200)) for _ in range(cols)] for _ in range(rows)
        ]
        r_idx, c_idx = linear_sum_assignment(np.array(matrix), maximize=True)
        solved = float(sum(matrix[r][c] for r, c in zip(r_idx, c_idx)))
        if solved != brute_force_assignment(matrix):
            exact_misses += 1

    worst_float = 0.0
    for _ in range(500):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        matrix = [[rng.uniform(-1.0, 2.0) for _ in range(cols)] for _ in range(rows)]
        r_idx, c_idx = linear_sum_assignment(np.array(matrix), maximize=True)
        solved = float(sum(matrix[r][c] for r, c in zip(r_idx, c_idx)))
        worst_float = max(worst_float, abs(solved - brute_force_assignment(matrix)))

    ok = exact_misses == 0 and worst_float < 1e-9
    announce(
        capsys, ok, "assignment oracle",
        f"1000 integer matrices exact, 500 real matrices within {worst_float:.2e}",
    )
    assert exact_misses == 0
    assert worst_float < 1e-9


# --- 5. Page-score identities -----------------------------------------------


AES_PERTURBATIONS = [
    ("initial", 0, "text", "Welcome Back"),
    ("initial", 0, "color", "#112244"),
    ("initial", 0, "font-size", "30px"),
    ("initial", 1, "background-color", "#3366aa"),
    ("initial", 2, "line-height", "36px"),
    ("open-menu", 1, "color", "gray"),
]


def test_c05_aes_identities(capsys):
    fixtures = {
        "two-page": run_pages()[1],
        "landing-only": [landing_page()],
        "panel-only": [panel_page("initial")],
    }
    self_errors = []
    for name, gt in fixtures.items():
        report = aes([clone_page(p) for p in gt], gt)
        if abs(report.aes - 100.0) > 1e-9 or report.total() != 100.0:
            self_errors.append((name, report.aes, report.total()))

    decreases = []
    gen, gt = run_pages()
    for action_id, index, attr, value in AES_PERTURBATIONS:
        mutated = []
        for page in gen:
            if page.action_id != action_id:
                mutated.append(page)
                continue
            attrs = dict(page.elements[index].attributes)
            attrs[attr] = value
            mutated.append(tweak_element(page, index, attributes=attrs))
        report = aes(mutated, gt)
        decreases.append((attr, report.aes, report.total()))
    perturb_ok = all(score < 100.0 and total == 100.0 for _, score, total in decreases)

    ok = not self_errors and perturb_ok
    announce(
        capsys, ok, "page-score identities",
        f"{len(fixtures)} fixtures self-score 100.000, "
        f"{len(decreases)} single-attribute edits all decrease, buckets sum exact",
    )
    assert not self_errors, self_errors
    assert perturb_ok, decreases


# --- 6. Weight calibration beats random weights ------------------------------


def test_c06_weight_calibration(capsys):
    t0 = time.time()
    candidates, preferences, _ = pso_fixture()
    searched = []
    for seed in range(10):
        _, fit = pso_search(preferences, candidates, pso=PsoConfig(seed=seed))
        searched.append(fit)

    rng = random.Random(0)
    baseline = []
    for _ in range(40):
        weights = ScoreWeights(
            alpha={
                "text": rng.uniform(0.0, 4.0),
                "color": rng.uniform(0.0, 4.0),
                "font-size": rng.uniform(0.0, 4.0),
            },
            beta=rng.uniform(0.0, 2.0),
        )
        scores = [aes(g, gt, weights=weights).aes for g, gt in candidates]
        baseline.append(ranking_agreement(scores, preferences))
    baseline_mean = statistics.mean(baseline)
    elapsed = time.time() - t0
    ok = min(searched) >= 0.90 and baseline_mean <= 0.75 and elapsed < 300.0
    announce(
        capsys, ok, "weight calibration",
        f"searched agreement min {min(searched):.3f} over 10 seeds, "
        f"random-weight baseline {baseline_mean:.3f}, {elapsed:.1f}s",
    )
    assert min(searched) >= 0.90
    assert baseline_mean <= 0.75
    assert elapsed < 300.0


# --- 7. Football reward units -------------------------------------------------


def test_c07_football_reward_units(capsys):
    stolen = duel_state([(-0.5, 0.0)], [(0.2, 0.0)], holder=11, frame=200)
    interception = RewardTracker.start(stolen).reward_frame(stolen, FrameEvents(stole=True))

    start = duel_state([(0.1, 0.0)], [(0.6, 0.0)])
    survival = RewardTracker.start(start).reward_frame(
        start.with_(terminal="horizon", frame=400), FrameEvents()
    )

    pass_value = s_pass((0.0, 0.0), [(10.0, 0.0)])

    ok = interception == 10.0 and survival == 20.0 and pass_value == 10.0 / 11.0
    announce(
        capsys, ok, "football reward units",
        f"interception(t=200,T=400)={interception}, survival={survival}, "
        f"pass-risk(L=10,cos=1)={pass_value} == 10/11",
    )
    assert interception == 10.0
    assert survival == 20.0
    assert pass_value == 10.0 / 11.0


# --- 8. Frame skipping saves decisions without changing outcomes --------------


def _selfplay(scenario, frame_skip: bool):
    env = FootballEnv(scenario, frame_skip=frame_skip, render_images=False)
    bot = AttackingBot()
    env.reset()
    decisions = 0
    while not env.state.done and decisions < env.max_decisions:
        env.step(bot.decide(env.state))
        decisions += 1
    return decisions, env.score()


def test_c08_frame_skip_saves_decisions(capsys, football_scenarios):
    t0 = time.time()
    on_decisions = off_decisions = 0
    on_rewards, off_rewards = [], []
    for scenario in football_scenarios:
        d_on, r_on = _selfplay(scenario, True)
        d_off, r_off = _selfplay(scenario, False)
        on_decisions += d_on
        off_decisions += d_off
        on_rewards.append(r_on)
        off_rewards.append(r_off)
    reduction = 1.0 - on_decisions / off_decisions
    mean_on = statistics.mean(on_rewards)
    mean_off = statistics.mean(off_rewards)
    rel_diff = abs(mean_on - mean_off) / max(abs(mean_off), 1e-9)
    elapsed = time.time() - t0
    ok = (
        len(football_scenarios) >= 100
        and reduction >= 0.60
        and rel_diff <= 0.15
        and elapsed < 600.0
    )
    announce(
        capsys, ok, "frame-skip effectiveness",
        f"{len(football_scenarios)} scenarios, decision reduction {reduction:.1%}, "
        f"mean reward {mean_on:.2f} vs {mean_off:.2f} (rel diff {rel_diff:.1%}), {elapsed:.1f}s",
    )
    assert len(football_scenarios) >= 100
    assert reduction >= 0.60
    assert rel_diff <= 0.15
    assert elapsed < 600.0


# --- 9. Context windows and error thresholds ----------------------------------


def test_c09_window_grid_and_error_boundaries(capsys):
    prompts = PromptSet(system_prompt="SYS", io_prompt="IO")
    cells = 0
    window_failures = []
    for am, om in itertools.product((1, 5, 10), (1, 2, 3)):
        if om > am:
            continue
        cells += 1
        for t in (1, 2, 3, 5, 8, 12, 30):
            observations = [Observation(text=f"o{i}") for i in range(1, t + 1)]
            outputs = [f"# action\nUp {i}" for i in range(1, t)]
            cfg = PlannerConfig(mode=PlannerMode.ONLINE, action_memory=am, observation_memory=om)
            context = build_online_context(prompts, observations, outputs, t, cfg)
            actions = sum(1 for turn in context if turn.role == "agent")
            real = sum(
                1
                for turn in context
                if turn.role == "user" and IMAGE_PLACEHOLDER not in turn.text
            )
            if actions != min(t - 1, am) or real != min(t, om):
                window_failures.append((am, om, t, actions, real))

    boundary_ok = (
        not classify_errors([None] * 9 + ["Up"]).invalid_actions
        and classify_errors([None] * 19 + ["Up"]).invalid_actions
        and classify_errors(["Up"] * 9 + ["Down"]).repeating_actions
        and not classify_errors(["Up"] * 8 + ["Down", "Left"]).repeating_actions
    )

    ok = not window_failures and boundary_ok
    announce(
        capsys, ok, "window grid and error boundaries",
        f"{cells} (AM,OM) cells x 7 depths hold exactly, "
        f"thresholds strict >0.9 unparsed and inclusive >=0.9 repeating",
    )
    assert not window_failures, window_failures[:5]
    assert boundary_ok


# --- 10. Corpus counts ---------------------------------------------------------


def test_c10_corpus_counts(capsys, sokoban_corpus, football_scenarios):
    tiers = {}
    for level in sokoban_corpus:
        tiers[level.tier] = tiers.get(level.tier, 0) + 1
    cells = {}
    for scenario in football_scenarios:
        key = (scenario.category, scenario.region)
        cells[key] = cells.get(key, 0) + 1
    sokoban_ok = len(sokoban_corpus) == 182 and len(tiers) == 8
    football_ok = (
        len(football_scenarios) == 108
        and len(cells) == 27
        and all(count == 4 for count in cells.values())
    )
    ok = sokoban_ok and football_ok
    announce(
        capsys, ok, "corpus counts",
        f"sokoban {len(sokoban_corpus)} levels over {len(tiers)} tiers, "
        f"football {len(football_scenarios)} scenarios over {len(cells)} cells x 4",
    )
    assert sokoban_ok
    assert football_ok
