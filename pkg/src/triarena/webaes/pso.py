"""Particle swarm calibration of scoring weights against preference data.

Given candidate runs (generated pages vs ground truth) and preference
pairs saying which candidate should outrank which, the swarm searches
attribute weights and the area exponent so the resulting scores agree
with as many preferences as possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .attributes import attribute_kind, attr_similarity
from .matching import match_elements
from .scoring import _initial_page
from .types import MatchConfig, PageSnapshot, PageStatus, ScoreWeights

Run = tuple[list[PageSnapshot], list[PageSnapshot]]  # (generated, ground truth)
PreferencePair = tuple[int, int]  # (preferred candidate index, other index)


@dataclass(frozen=True)
class PsoConfig:
    particles: int = 24
    iterations: int = 60
    inertia: float = 0.72
    cognitive: float = 1.49
    social: float = 1.49
    alpha_bounds: tuple[float, float] = (0.0, 4.0)
    beta_bounds: tuple[float, float] = (0.0, 2.0)
    seed: int = 0


def ranking_agreement(scores: Sequence[float], preferences: Sequence[PreferencePair]) -> float:
    """Fraction of preference pairs the scores order correctly (ties lose)."""
    if not preferences:
        raise ValueError("at least one preference pair is required")
    agree = sum(1 for better, worse in preferences if scores[better] > scores[worse])
    return agree / len(preferences)


# Compiled pages: matching does not depend on the searched weights, so each
# candidate is matched once and re-scored cheaply per particle.
_FAILED = "failed"
_EMPTY = "empty"
_ATOMS = "atoms"
_CompiledAtom = tuple[float, bool, list[tuple[str, float]]]  # space, matched, (name, sim)


class _CompiledRun:
    __slots__ = ("failed", "pages")

    def __init__(self, failed: bool, pages: list[tuple[str, list[_CompiledAtom]]]):
        self.failed = failed
        self.pages = pages


def _compile_run(run: Run, cfg: MatchConfig) -> _CompiledRun:
    gen_pages, gt_pages = run
    if not gt_pages:
        raise ValueError("candidate has no ground-truth pages")
    gen_by_id = {page.action_id: page for page in gen_pages}
    initial = _initial_page(gt_pages)
    gen_initial = gen_by_id.get(initial.action_id)
    initial_status = gen_initial.status if gen_initial is not None else PageStatus.PARSE_ERROR
    if initial_status in (PageStatus.PARSE_ERROR, PageStatus.RENDER_ERROR):
        return _CompiledRun(failed=True, pages=[])

    pages: list[tuple[str, list[_CompiledAtom]]] = []
    for gt_page in gt_pages:
        gen_page = gen_by_id.get(gt_page.action_id)
        if gen_page is None or gen_page.status is not PageStatus.OK:
            pages.append((_FAILED, []))
            continue
        atoms = gt_page.atomic_elements()
        if not atoms:
            pages.append((_EMPTY, []))
            continue
        assignment = match_elements(gen_page, gt_page, cfg)
        compiled: list[_CompiledAtom] = []
        for i, atom in enumerate(atoms):
            gen_index = assignment.get(i)
            if gen_index is None:
                compiled.append((atom.space, False, []))
                continue
            gen = gen_page.elements[gen_index]
            sims = []
            for name in atom.eval_by:
                gen_value = gen.attributes.get(name)
                if gen_value is None:
                    sims.append((name, 0.0))
                else:
                    sims.append(
                        (name, attr_similarity(attribute_kind(name), atom.attributes[name], gen_value))
                    )
            compiled.append((atom.space, True, sims))
        pages.append((_ATOMS, compiled))
    return _CompiledRun(failed=False, pages=pages)


def _evaluate(compiled: _CompiledRun, weights: ScoreWeights) -> float:
    """Score a compiled candidate under trial weights, as a percentage."""
    if compiled.failed:
        return 0.0
    total = 0.0
    for kind, atoms in compiled.pages:
        if kind == _FAILED:
            continue
        if kind == _EMPTY:
            total += 1.0
            continue
        weight_sum = 0.0
        earned = 0.0
        for space, matched, sims in atoms:
            w = space**weights.beta
            weight_sum += w
            if not matched:
                continue
            alpha_total = 0.0
            sim_total = 0.0
            for name, sim in sims:
                alpha = weights.weight_of(name)
                alpha_total += alpha
                sim_total += alpha * sim
            if alpha_total > 0:
                earned += (sim_total / alpha_total) * w
        if weight_sum > 0:
            total += earned / weight_sum
    return 100.0 * total / len(compiled.pages)


def _weights_from_vector(vec: np.ndarray, names: list[str]) -> ScoreWeights:
    alpha = {name: float(vec[i]) for i, name in enumerate(names)}
    return ScoreWeights(alpha=alpha, beta=float(vec[-1]))


def pso_search(
    preferences: Sequence[PreferencePair],
    candidates: Sequence[Run],
    cfg: Optional[MatchConfig] = None,
    pso: Optional[PsoConfig] = None,
) -> tuple[ScoreWeights, float]:
    """Search attribute weights and area exponent maximizing ranking agreement.

    Returns the best weights found and the agreement they achieve over the
    preference pairs. The search dimensions are one weight per attribute
    name appearing in the ground-truth eval lists, plus the exponent.
    """
    if not candidates:
        raise ValueError("at least one candidate run is required")
    if not preferences:
        raise ValueError("at least one preference pair is required")
    for better, worse in preferences:
        if not (0 <= better < len(candidates) and 0 <= worse < len(candidates)):
            raise ValueError("preference pair indexes a missing candidate")
    cfg = cfg or MatchConfig()
    pso = pso or PsoConfig()

    compiled = [_compile_run(run, cfg) for run in candidates]
    names = sorted(
        {
            name
            for _, gt_pages in candidates
            for page in gt_pages
            for atom in page.atomic_elements()
            for name in atom.eval_by
        }
    )
    dims = len(names) + 1
    lo = np.array([pso.alpha_bounds[0]] * len(names) + [pso.beta_bounds[0]])
    hi = np.array([pso.alpha_bounds[1]] * len(names) + [pso.beta_bounds[1]])
    span = hi - lo

    rng = np.random.default_rng(pso.seed)
    positions = lo + rng.random((pso.particles, dims)) * span
    velocities = (rng.random((pso.particles, dims)) - 0.5) * span

    def fitness(vec: np.ndarray) -> float:
        weights = _weights_from_vector(vec, names)
        scores = [_evaluate(run, weights) for run in compiled]
        return ranking_agreement(scores, preferences)

    personal_best = positions.copy()
    personal_fit = np.array([fitness(positions[i]) for i in range(pso.particles)])
    best_index = int(np.argmax(personal_fit))
    global_best = personal_best[best_index].copy()
    global_fit = float(personal_fit[best_index])

    for _ in range(pso.iterations):
        if global_fit >= 1.0:
            break
        r_cog = rng.random((pso.particles, dims))
        r_soc = rng.random((pso.particles, dims))
        velocities = (
            pso.inertia * velocities
            + pso.cognitive * r_cog * (personal_best - positions)
            + pso.social * r_soc * (global_best - positions)
        )
        np.clip(velocities, -span, span, out=velocities)
        positions = np.clip(positions + velocities, lo, hi)
        for i in range(pso.particles):
            fit = fitness(positions[i])
            if fit > personal_fit[i]:
                personal_fit[i] = fit
                personal_best[i] = positions[i].copy()
                if fit > global_fit:
                    global_fit = fit
                    global_best = positions[i].copy()

    return _weights_from_vector(global_best, names), global_fit
