"""Webpage-authoring environment: collects code replies, scores via AES.

The episode is a fixed number of authoring rounds. Each reply carries
fenced html/css/javascript blocks (or explicit no-change notices) that
overwrite the working files. Scoring needs rendered snapshots of the
generated page, which the browser toolkit produces out of process; a
``snapshot_fn`` callback injects them. Without one the episode scores
0, which is also what an agent that never emits code earns.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable, Optional, Union

from ..harness.envbase import Environment
from ..harness.parsing import parse_code_blocks
from ..harness.prompts import load_prompt
from ..harness.types import Observation, PlannerMode, PromptSet
from .scoring import AESReport, aes
from .snapshots import load_snapshot_dir
from .types import MatchConfig, PageSnapshot, ScoreWeights

FILE_NAMES = {"html": "index.html", "css": "style.css", "javascript": "script.js"}

ONLINE_VARIANTS = ("hd_cot", "hd_cot_noimg", "0s_cot")


class WebUITask:
    """One authoring task: a description plus its ground-truth snapshots."""

    def __init__(
        self,
        task_id: str,
        description: str,
        gt_pages: Optional[list[PageSnapshot]] = None,
        target_image: Optional[bytes] = None,
    ):
        self.task_id = task_id
        self.description = description
        self.gt_pages = gt_pages or []
        self.target_image = target_image


def load_task(directory: Union[str, Path]) -> WebUITask:
    """Read one task directory: task.json, optional gt/ snapshots, target.png."""
    directory = Path(directory)
    meta = json.loads((directory / "task.json").read_text())
    gt_dir = directory / "gt"
    gt_pages = load_snapshot_dir(gt_dir) if gt_dir.is_dir() else []
    target = directory / "target.png"
    image = target.read_bytes() if target.exists() else None
    return WebUITask(meta.get("id", directory.name), meta["description"], gt_pages, image)


def load_task_corpus(root: Union[str, Path]) -> list[WebUITask]:
    root = Path(root)
    tasks = [
        load_task(path)
        for path in sorted(root.iterdir())
        if path.is_dir() and (path / "task.json").exists()
    ]
    if not tasks:
        raise ValueError(f"no task directories under {root}")
    return tasks


class WebUIEnv(Environment):
    name = "webui"
    action_vocab = ("write_html", "write_css", "write_javascript")
    context_style = "single"

    def __init__(
        self,
        task: WebUITask,
        rounds: int = 3,
        online_variant: str = "hd_cot_noimg",
        snapshot_fn: Optional[Callable[[dict[str, str]], list[PageSnapshot]]] = None,
        workdir: Optional[Path] = None,
        match_config: Optional[MatchConfig] = None,
        weights: Optional[ScoreWeights] = None,
    ):
        if online_variant not in ONLINE_VARIANTS:
            raise ValueError(f"unknown online variant {online_variant!r}")
        if rounds < 1:
            raise ValueError("rounds must be >= 1")
        self.task = task
        self.rounds = rounds
        self.online_variant = online_variant
        self.snapshot_fn = snapshot_fn
        self.workdir = Path(workdir) if workdir is not None else None
        self.match_config = match_config
        self.weights = weights
        self.max_decisions = rounds
        self.files: dict[str, str] = {}
        self._round = 0
        self._report: Optional[AESReport] = None

    def level_id(self) -> str:
        return self.task.task_id

    def reset(self) -> Observation:
        self.files = {}
        self._round = 0
        self._report = None
        return Observation(text=self.task.description, image=self.task.target_image)

    def parse_global(self, text: str) -> list[dict]:
        return [parse_code_blocks(text)]

    def parse_online(self, text: str) -> dict:
        return parse_code_blocks(text)

    def step(self, action: dict) -> tuple[Observation, float, bool]:
        if self._round >= self.rounds:
            raise RuntimeError("episode already finished")
        for key, body in action.items():
            if body is None:
                continue
            self.files[key] = body
        self._write_files()
        self._round += 1
        done = self._round >= self.rounds
        return Observation(text="code recorded."), 0.0, done

    def _write_files(self) -> None:
        if self.workdir is None:
            return
        self.workdir.mkdir(parents=True, exist_ok=True)
        for key, body in self.files.items():
            (self.workdir / FILE_NAMES[key]).write_text(body)

    def score(self) -> float:
        if self._report is None:
            if self.snapshot_fn is None or not self.files or not self.task.gt_pages:
                return 0.0
            gen_pages = self.snapshot_fn(dict(self.files))
            self._report = aes(
                gen_pages, self.task.gt_pages, self.match_config, self.weights
            )
        return self._report.aes

    def report(self) -> Optional[AESReport]:
        self.score()
        return self._report

    def template_fields(self) -> dict[str, str]:
        return {
            "PREV HTML CODE": self.files.get("html", ""),
            "PREV CSS CODE": self.files.get("css", ""),
            "PREV JAVASCRIPT CODE": self.files.get("javascript", ""),
            "RANDER FEEDBACK IMAGE": "image not available.",
        }

    def prompt_set(self, mode: PlannerMode) -> PromptSet:
        system = load_prompt("webui_system")
        if mode is PlannerMode.GLOBAL:
            io = load_prompt("webui_global")
        else:
            io = load_prompt(f"webui_online_{self.online_variant}")
        return PromptSet(
            system_prompt=system, task_prompt=self.task.description, io_prompt=io
        )
