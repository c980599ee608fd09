"""Aggregation across repeated episodes: means, dispersion, best-of-N.

Scores aggregate per-level first (mean over repeats), then across
levels, so unbalanced repeat counts cannot skew the grand mean.
Dispersion is the sample standard deviation over per-level means; the
significance band reported alongside is +/- 2 standard errors.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .harness.types import EpisodeResult, PlannerMode


@dataclass(frozen=True)
class RunSpec:
    environment: str
    mode: PlannerMode
    repeats: int = 3
    seeds: tuple[int, ...] = ()
    level_filter: tuple[str, ...] = ()

    def __post_init__(self):
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")


@dataclass
class AggregateReport:
    environment: str
    mode: str
    per_level_mean: dict[str, float]
    mean: float
    std: float
    stderr: float
    delta: float  # +/- 2 stderr significance band
    episode_count: int
    error_tallies: dict[str, float]  # percentage of episodes per kind
    best_of: dict[int, float] = field(default_factory=dict)
    incomplete_levels: dict[str, int] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return not self.incomplete_levels


def group_scores(results: Sequence[EpisodeResult]) -> dict[str, list[float]]:
    grouped: dict[str, list[float]] = {}
    for res in results:
        grouped.setdefault(res.level_id, []).append(res.score)
    return grouped


def aggregate(results: Sequence[EpisodeResult], spec: RunSpec) -> AggregateReport:
    if not results:
        raise ValueError("no results to aggregate")
    grouped = group_scores(results)
    per_level = {level: statistics.fmean(v) for level, v in sorted(grouped.items())}
    means = list(per_level.values())
    mean = statistics.fmean(means)
    std = statistics.stdev(means) if len(means) > 1 else 0.0
    stderr = std / math.sqrt(len(means)) if means else 0.0

    kinds = {"InvalidActions": 0, "RepeatingActions": 0, "IFE": 0}
    for res in results:
        err = res.errors
        if err is None:
            continue
        if err.invalid_actions:
            kinds["InvalidActions"] += 1
        if err.repeating_actions:
            kinds["RepeatingActions"] += 1
        if err.is_ife:
            kinds["IFE"] += 1
    tallies = {k: 100.0 * v / len(results) for k, v in kinds.items()}

    incomplete = {
        level: len(v) for level, v in grouped.items() if len(v) < spec.repeats
    }
    return AggregateReport(
        environment=spec.environment,
        mode=spec.mode.value,
        per_level_mean=per_level,
        mean=mean,
        std=std,
        stderr=stderr,
        delta=2.0 * stderr,
        episode_count=len(results),
        error_tallies=tallies,
        incomplete_levels=incomplete,
    )


def expected_best_of_n(samples: Sequence[float], n: int) -> float:
    """Exact E[max of n scores drawn without replacement] via order statistics."""
    m = len(samples)
    if n < 1 or n > m:
        raise ValueError(f"n must be in [1, {m}]")
    ordered = sorted(samples)
    total = math.comb(m, n)
    return sum(
        ordered[i - 1] * math.comb(i - 1, n - 1) for i in range(n, m + 1)
    ) / total


def sampled_best_of_n(
    samples: Sequence[float], n: int, draws: int = 200, seed: int = 0
) -> float:
    m = len(samples)
    if n < 1 or n > m:
        raise ValueError(f"n must be in [1, {m}]")
    rng = random.Random(seed)
    return statistics.fmean(
        max(rng.sample(list(samples), n)) for _ in range(draws)
    )


def best_of_n(
    per_level: dict[str, Sequence[float]],
    n: int,
    exact: bool = True,
    draws: int = 200,
    seed: int = 0,
) -> float:
    """Mean over levels of the expected best among n sampled repeats."""
    if not per_level:
        raise ValueError("no levels")
    if exact:
        values = [expected_best_of_n(v, n) for v in per_level.values()]
    else:
        values = [sampled_best_of_n(v, n, draws, seed) for v in per_level.values()]
    return statistics.fmean(values)


def best_of_curve(
    per_level: dict[str, Sequence[float]], max_n: Optional[int] = None
) -> dict[int, float]:
    limit = min(len(v) for v in per_level.values())
    if max_n is not None:
        limit = min(limit, max_n)
    return {n: best_of_n(per_level, n) for n in range(1, limit + 1)}


def render_report(report: AggregateReport, aes_buckets: Optional[dict] = None) -> str:
    """Plain-text report block: scores, error rates, optional AES split."""
    lines = [
        f"environment: {report.environment}  mode: {report.mode}",
        f"episodes: {report.episode_count}  levels: {len(report.per_level_mean)}",
        f"score: {report.mean:.3f}  std: {report.std:.3f}  delta(+/-2se): {report.delta:.3f}",
        "errors: "
        + "  ".join(f"{k}={v:.1f}%" for k, v in report.error_tallies.items()),
    ]
    if report.best_of:
        lines.append(
            "best-of: " + "  ".join(f"N={n}:{v:.3f}" for n, v in report.best_of.items())
        )
    if report.incomplete_levels:
        lines.append(
            "incomplete: "
            + ", ".join(f"{k}({v})" for k, v in sorted(report.incomplete_levels.items()))
        )
    if aes_buckets:
        lines.append(
            "aes-buckets: " + "  ".join(f"{k}={v:.2f}" for k, v in aes_buckets.items())
        )
    return "\n".join(lines)
