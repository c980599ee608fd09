"""Flat-file layout for evaluation runs.

A run directory holds config.json (the fully resolved configuration),
episodes/*.json written as each episode completes (so an aborted run
keeps everything finished so far), and report.json/report.txt.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Optional, Union

from .harness.types import EpisodeResult, ErrorClassification, PlannerMode, Transcript
from .metrics import AggregateReport

_SLUG_RE = re.compile(r"[^a-zA-Z0-9_+-]+")


def _slug(text: str) -> str:
    return _SLUG_RE.sub("-", text) or "episode"


def episode_to_dict(res: EpisodeResult, include_contexts: bool = False) -> dict:
    """JSON form of one episode; image payloads are never persisted."""
    data = {
        "env": res.env,
        "mode": res.mode.value,
        "level_id": res.level_id,
        "score": res.score,
        "total_reward": res.total_reward,
        "steps": res.steps,
        "decisions": res.decisions,
        "agent_calls": res.agent_calls,
        "actions": res.transcript.actions,
        "raw_outputs": res.transcript.raw_outputs,
        "errors": {
            "unparsed_fraction": res.errors.unparsed_fraction,
            "mode_action_fraction": res.errors.mode_action_fraction,
            "kind": res.errors.kind,
        }
        if res.errors is not None
        else None,
        "info": res.info,
    }
    if include_contexts:
        data["contexts"] = [
            [
                {
                    "role": turn.role,
                    "text": turn.text,
                    "observation_step": turn.observation_step,
                    "has_image": turn.image is not None,
                }
                for turn in context
            ]
            for context in res.transcript.contexts
        ]
    return data


def episode_from_dict(data: dict) -> EpisodeResult:
    errors = None
    if data.get("errors") is not None:
        errors = ErrorClassification(
            unparsed_fraction=data["errors"]["unparsed_fraction"],
            mode_action_fraction=data["errors"]["mode_action_fraction"],
        )
    transcript = Transcript(
        actions=data.get("actions", []), raw_outputs=data.get("raw_outputs", [])
    )
    return EpisodeResult(
        env=data["env"],
        mode=PlannerMode(data["mode"]),
        level_id=data["level_id"],
        score=data["score"],
        total_reward=data["total_reward"],
        steps=data["steps"],
        decisions=data["decisions"],
        agent_calls=data["agent_calls"],
        transcript=transcript,
        errors=errors,
        info=data.get("info", {}),
    )


class RunDirectory:
    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)
        self.episodes_dir = self.root / "episodes"

    def prepare(self, config: dict) -> None:
        self.episodes_dir.mkdir(parents=True, exist_ok=True)
        (self.root / "config.json").write_text(json.dumps(config, indent=2) + "\n")

    def write_episode(self, res: EpisodeResult, repeat: int) -> Path:
        name = f"{_slug(res.level_id)}__r{repeat}.json"
        path = self.episodes_dir / name
        path.write_text(json.dumps(episode_to_dict(res), indent=2) + "\n")
        return path

    def load_episodes(self) -> list[EpisodeResult]:
        results = []
        for path in sorted(self.episodes_dir.glob("*.json")):
            results.append(episode_from_dict(json.loads(path.read_text())))
        return results

    def load_config(self) -> Optional[dict]:
        path = self.root / "config.json"
        if not path.exists():
            return None
        return json.loads(path.read_text())

    def write_report(self, report: AggregateReport, text: str) -> None:
        payload = {
            "environment": report.environment,
            "mode": report.mode,
            "mean": report.mean,
            "std": report.std,
            "stderr": report.stderr,
            "delta": report.delta,
            "episode_count": report.episode_count,
            "per_level_mean": report.per_level_mean,
            "error_tallies": report.error_tallies,
            "best_of": {str(k): v for k, v in report.best_of.items()},
            "incomplete_levels": report.incomplete_levels,
        }
        (self.root / "report.json").write_text(json.dumps(payload, indent=2) + "\n")
        (self.root / "report.txt").write_text(text + "\n")
