"""Command line surface: generate, run, score-web, report, serve.

Exit codes: 0 success, 1 configuration error, 2 agent endpoint error,
3 corpus error. A JSON config file may carry any long-option value
under "run"/"planner" keys; explicit flags win.
"""

from __future__ import annotations

import json
import shlex
import sys
import zlib
from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from typing import Optional

import click

from .football import FootballEnv, load_scenarios, save_scenarios, scenario_sweep
from .harness.agents import IdleAgent, RandomAgent
from .harness.envbase import Environment
from .harness.planner import run_episode
from .harness.types import PlannerConfig, PlannerMode
from .harness.wire import HttpAgent, StdioAgent, WireError
from .metrics import RunSpec, aggregate, best_of_curve, group_scores, render_report
from .runio import RunDirectory
from .service import BIND_ENV_VAR, InteractiveServer
from .sokoban.env import SokobanEnv
from .sokoban.generate import generate_corpus
from .sokoban.textio import load_corpus, save_corpus
from .webaes.env import WebUIEnv, load_task_corpus
from .webaes.scoring import aes
from .webaes.snapshots import load_snapshot_dir
from .webaes.types import ScoreWeights

ENVS = ("sokoban", "football", "webui")
BUILTIN_AGENTS = ("idle", "random", "interactive")


class ConfigError(Exception):
    exit_code = 1


class AgentError(Exception):
    exit_code = 2


class CorpusError(Exception):
    exit_code = 3


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config file: {exc}")
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


def _resolve(flag, config: dict, section: str, key: str, default):
    if flag is not None:
        return flag
    value = config.get(section, {}).get(key)
    return value if value is not None else default


def _episode_seed(base: int, level_id: str, repeat: int) -> int:
    return zlib.crc32(f"{base}:{level_id}:{repeat}".encode())


def _parse_mode(value: str) -> PlannerMode:
    try:
        return PlannerMode(value.capitalize())
    except ValueError:
        raise ConfigError(f"unknown mode {value!r}, expected global or online")


class _Corpus:
    """Uniform view over an environment's task list."""

    def __init__(self, kind: str, items: list, make_env):
        self.kind = kind
        self.items = items
        self.make_env = make_env


def _load_run_corpus(env: str, corpus: Optional[str], images: bool, opts: dict) -> _Corpus:
    if env == "sokoban":
        if corpus:
            try:
                levels = load_corpus(corpus)
            except (OSError, ValueError, KeyError) as exc:
                raise CorpusError(f"cannot load sokoban corpus: {exc}")
        else:
            levels = generate_corpus()
        if not levels:
            raise CorpusError("sokoban corpus is empty")
        return _Corpus(
            "sokoban", levels, lambda lv: SokobanEnv(lv, render_images=images)
        )
    if env == "football":
        if corpus:
            try:
                scenarios = load_scenarios(corpus)
            except (OSError, ValueError, KeyError) as exc:
                raise CorpusError(f"cannot load football corpus: {exc}")
        else:
            scenarios = scenario_sweep()
        if not scenarios:
            raise CorpusError("football corpus is empty")
        return _Corpus(
            "football",
            scenarios,
            lambda sc: FootballEnv(
                sc, frame_skip=opts["frame_skip"], render_images=images
            ),
        )
    if env == "webui":
        if not corpus:
            raise CorpusError("webui runs need --corpus pointing at task directories")
        try:
            tasks = load_task_corpus(corpus)
        except (OSError, ValueError, KeyError) as exc:
            raise CorpusError(f"cannot load webui corpus: {exc}")
        return _Corpus(
            "webui", tasks, lambda task: WebUIEnv(task, rounds=opts["rounds"])
        )
    raise ConfigError(f"unknown environment {env!r}")


def _item_id(env: Environment) -> str:
    return env.level_id()


def _make_agent(spec: str, env: Environment, mode: PlannerMode, seed: int):
    if spec == "idle":
        return IdleAgent(env)
    if spec == "random":
        return RandomAgent(env, mode=mode, seed=seed)
    if spec.startswith("stdio:"):
        return StdioAgent(shlex.split(spec[len("stdio:"):]))
    if spec.startswith("http://") or spec.startswith("https://"):
        return HttpAgent(spec)
    raise ConfigError(
        f"unknown agent {spec!r}; use idle, random, interactive, stdio:<cmd> or an http URL"
    )


@click.group()
def cli():
    """Evaluation platform for game and page-building agents."""


@cli.command("generate")
@click.option("--env", "env_name", required=True, type=click.Choice(["sokoban", "football"]))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--seed", default=0, show_default=True, help="Base seed (sokoban levels).")
def cmd_generate(env_name: str, out_dir: str, seed: int):
    """Write the full level/scenario corpus plus manifest."""
    out = Path(out_dir)
    if env_name == "sokoban":
        levels = generate_corpus(seed_base=seed)
        save_corpus(levels, out)
        click.echo(f"wrote {len(levels)} sokoban levels to {out}")
    else:
        scenarios = scenario_sweep()
        save_scenarios(scenarios, out)
        click.echo(f"wrote {len(scenarios)} football scenarios to {out}")


@cli.command("run")
@click.option("--env", "env_name", required=True, type=click.Choice(ENVS))
@click.option("--mode", "mode_name", default=None, help="global or online.")
@click.option("--agent", "agent_spec", default=None,
              help="idle | random | interactive | stdio:<cmd> | http(s)://…")
@click.option("--corpus", default=None, type=click.Path(exists=False))
@click.option("--out", "out_dir", default=None, type=click.Path(file_okay=False))
@click.option("--repeats", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--workers", type=int, default=None)
@click.option("--limit", type=int, default=None, help="Run only the first N levels.")
@click.option("--levels", "level_ids", default=None, help="Comma-separated level ids.")
@click.option("--am", "action_memory", type=int, default=None)
@click.option("--om", "observation_memory", type=int, default=None)
@click.option("--retries", type=int, default=None)
@click.option("--max-steps", type=int, default=None)
@click.option("--rounds", type=int, default=None, help="Authoring rounds (webui).")
@click.option("--frame-skip/--no-frame-skip", default=None)
@click.option("--images/--no-images", "images", default=None,
              help="Attach rendered frames (default: only for wire/interactive agents).")
@click.option("--bind", default=None, help=f"Interactive bind host:port (or ${BIND_ENV_VAR}).")
@click.option("--config", "config_path", default=None, type=click.Path())
def cmd_run(**kw):
    """Run episodes and write results + aggregate report."""
    config = _load_config(kw["config_path"])
    env_name = kw["env_name"]
    mode = _parse_mode(_resolve(kw["mode_name"], config, "run", "mode", "online"))
    agent_spec = _resolve(kw["agent_spec"], config, "run", "agent", "idle")
    repeats = int(_resolve(kw["repeats"], config, "run", "repeats",
                           10 if env_name == "football" else 3))
    seed = int(_resolve(kw["seed"], config, "run", "seed", 0))
    workers = int(_resolve(kw["workers"], config, "run", "workers", 1))
    out_dir = _resolve(kw["out_dir"], config, "run", "out", None)
    corpus = _resolve(kw["corpus"], config, "run", "corpus", None)
    frame_skip = _resolve(kw["frame_skip"], config, "run", "frame_skip", True)
    rounds = int(_resolve(kw["rounds"], config, "run", "rounds", 3))
    limit = _resolve(kw["limit"], config, "run", "limit", None)
    level_ids = _resolve(kw["level_ids"], config, "run", "levels", None)

    interactive = agent_spec == "interactive"
    wire_agent = agent_spec not in BUILTIN_AGENTS
    images = kw["images"]
    if images is None:
        images = interactive or wire_agent
    if interactive or agent_spec.startswith("stdio:"):
        workers = 1  # one live endpoint, strictly sequential decisions

    if repeats < 1:
        raise ConfigError("--repeats must be >= 1")
    if workers < 1:
        raise ConfigError("--workers must be >= 1")

    body = _load_run_corpus(env_name, corpus, images,
                            {"frame_skip": frame_skip, "rounds": rounds})

    probe_env = body.make_env(body.items[0])
    if mode not in probe_env.supported_modes:
        raise ConfigError(f"{env_name} does not support {mode.value} mode")

    planner_cfg = PlannerConfig(
        mode=mode,
        action_memory=int(_resolve(kw["action_memory"], config, "planner", "action_memory", 5)),
        observation_memory=int(_resolve(kw["observation_memory"], config, "planner",
                                        "observation_memory", 1)),
        max_parse_retries=int(_resolve(kw["retries"], config, "planner", "max_parse_retries", 2)),
        max_steps=int(_resolve(kw["max_steps"], config, "planner", "max_steps",
                               probe_env.max_decisions)),
    )

    items = body.items
    if level_ids:
        wanted = [x.strip() for x in str(level_ids).split(",") if x.strip()]
        by_id = {_item_id(body.make_env(item)): item for item in items}
        missing = [x for x in wanted if x not in by_id]
        if missing:
            raise CorpusError(f"unknown level ids: {', '.join(missing)}")
        items = [by_id[x] for x in wanted]
    if limit is not None:
        items = items[: int(limit)]
    if not items:
        raise CorpusError("no levels selected")

    spec = RunSpec(environment=env_name, mode=mode, repeats=repeats,
                   seeds=tuple(range(repeats)))
    run_dir = RunDirectory(out_dir) if out_dir else None
    resolved = {
        "env": env_name, "mode": mode.value, "agent": agent_spec,
        "repeats": repeats, "seed": seed, "workers": workers,
        "corpus": corpus, "frame_skip": frame_skip, "rounds": rounds,
        "levels": [_item_id(body.make_env(item)) for item in items],
        "planner": {
            "action_memory": planner_cfg.action_memory,
            "observation_memory": planner_cfg.observation_memory,
            "max_parse_retries": planner_cfg.max_parse_retries,
            "max_steps": planner_cfg.max_steps,
        },
    }
    if run_dir:
        run_dir.prepare(resolved)

    server = None
    serve_agent = None
    if interactive:
        server = InteractiveServer(kw["bind"])
        server.start()
        serve_agent = server.agent()
        click.echo(f"interactive endpoint listening on {server.address}")

    def one_episode(item, repeat: int):
        env = body.make_env(item)
        if interactive:
            agent = serve_agent
        else:
            agent = _make_agent(agent_spec, env, mode,
                                _episode_seed(seed, _item_id(env), repeat))
        try:
            cfg = PlannerConfig(
                mode=mode,
                action_memory=planner_cfg.action_memory,
                observation_memory=planner_cfg.observation_memory,
                max_parse_retries=planner_cfg.max_parse_retries,
                max_steps=min(planner_cfg.max_steps, env.max_decisions),
            )
            return run_episode(agent, env, cfg)
        finally:
            if hasattr(agent, "close") and not interactive:
                agent.close()

    results = []
    jobs = [(item, repeat) for item in items for repeat in range(repeats)]
    try:
        if workers == 1:
            for item, repeat in jobs:
                res = one_episode(item, repeat)
                results.append(res)
                if run_dir:
                    run_dir.write_episode(res, repeat)
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = {
                    pool.submit(one_episode, item, repeat): repeat
                    for item, repeat in jobs
                }
                for future in as_completed(futures):
                    res = future.result()
                    results.append(res)
                    if run_dir:
                        run_dir.write_episode(res, futures[future])
    except WireError as exc:
        if results:
            _finish_run(results, spec, run_dir, echo=False)
        raise AgentError(f"agent endpoint failed: {exc}")
    finally:
        if server is not None:
            server.stop()

    report_text = _finish_run(results, spec, run_dir, echo=True)
    click.echo(report_text)


def _finish_run(results, spec, run_dir, echo: bool) -> str:
    report = aggregate(results, spec)
    grouped = group_scores(results)
    if min(len(v) for v in grouped.values()) >= 1:
        try:
            report.best_of = best_of_curve(grouped)
        except ValueError:
            pass
    text = render_report(report)
    if run_dir:
        run_dir.write_report(report, text)
    return text


@cli.command("score-web")
@click.argument("gt_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("gen_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--weights", "weights_path", default=None, type=click.Path())
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
def cmd_score_web(gt_dir: str, gen_dir: str, weights_path: Optional[str],
                  out_path: Optional[str]):
    """Score generated page snapshots against ground truth."""
    try:
        gt_pages = load_snapshot_dir(gt_dir)
    except (OSError, ValueError, KeyError) as exc:
        raise CorpusError(f"cannot load ground-truth snapshots: {exc}")
    if not gt_pages:
        raise CorpusError("ground-truth snapshot directory is empty")
    gen_pages = load_snapshot_dir(gen_dir, lenient=True)

    weights = ScoreWeights()
    weights_source = "defaults"
    if weights_path:
        try:
            data = json.loads(Path(weights_path).read_text())
            weights = ScoreWeights(
                alpha=dict(data.get("alpha", {})),
                default_alpha=float(data.get("default_alpha", 1.0)),
                beta=float(data.get("beta", 0.5)),
            )
            weights_source = weights_path
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read weights file: {exc}")

    report = aes(gen_pages, gt_pages, weights=weights)
    payload = {
        "aes": report.aes,
        "buckets": report.buckets,
        "weights": weights_source,
        "pages": [
            {"action_id": p.action_id, "s_act": p.s_act, "cause": p.cause}
            for p in report.pages
        ],
    }
    text = json.dumps(payload, indent=2)
    if out_path:
        Path(out_path).write_text(text + "\n")
    click.echo(text)


@cli.command("report")
@click.argument("run_dir", type=click.Path(exists=True, file_okay=False))
def cmd_report(run_dir: str):
    """Re-aggregate a run directory and print its report."""
    rd = RunDirectory(run_dir)
    try:
        results = rd.load_episodes()
    except (OSError, ValueError, KeyError) as exc:
        raise CorpusError(f"cannot load episodes: {exc}")
    if not results:
        raise CorpusError(f"no episode files under {run_dir}")
    config = rd.load_config() or {}
    spec = RunSpec(
        environment=config.get("env", results[0].env),
        mode=PlannerMode(config.get("mode", results[0].mode.value)),
        repeats=int(config.get("repeats", 1)),
    )
    text = _finish_run(results, spec, rd, echo=True)
    click.echo(text)


@cli.command("serve")
@click.option("--env", "env_name", required=True, type=click.Choice(ENVS))
@click.option("--mode", "mode_name", default="online")
@click.option("--corpus", default=None, type=click.Path())
@click.option("--out", "out_dir", default=None, type=click.Path(file_okay=False))
@click.option("--repeats", type=int, default=1)
@click.option("--limit", type=int, default=None)
@click.option("--levels", "level_ids", default=None)
@click.option("--bind", default=None)
@click.option("--config", "config_path", default=None, type=click.Path())
@click.pass_context
def cmd_serve(ctx, **kw):
    """Serve interactive human-play episodes over HTTP."""
    ctx.invoke(
        cmd_run,
        env_name=kw["env_name"],
        mode_name=kw["mode_name"],
        agent_spec="interactive",
        corpus=kw["corpus"],
        out_dir=kw["out_dir"],
        repeats=kw["repeats"],
        seed=0,
        workers=1,
        limit=kw["limit"],
        level_ids=kw["level_ids"],
        action_memory=None,
        observation_memory=None,
        retries=None,
        max_steps=None,
        rounds=None,
        frame_skip=None,
        images=None,
        bind=kw["bind"],
        config_path=kw["config_path"],
    )


def main(argv: Optional[list[str]] = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except (ConfigError, AgentError, CorpusError) as exc:
        click.echo(f"error: {exc}", err=True)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
