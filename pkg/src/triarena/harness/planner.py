"""Episode drivers for the two planner protocols.

One-shot mode queries the agent once with the initial observation and
replays the returned action sequence. Stepwise mode queries once per
decision under a rolling context window: the last AM agent outputs are
kept as chat history, and only the most recent OM observations carry a
real frame (older slots show a textual placeholder). Replies that fail
to parse are retried up to the configured budget with identical
prompts; a decision whose replies never parse consumes its slot without
touching the environment.
"""

from __future__ import annotations

from typing import Optional, Protocol

from .envbase import Environment
from .parsing import ParseError
from .prompts import IMAGE_PLACEHOLDER, continue_text, fill_template
from .types import (
    EpisodeResult,
    Observation,
    PlannerConfig,
    PlannerMode,
    PromptSet,
    Transcript,
    Turn,
    classify_errors,
)


class Agent(Protocol):
    def act(self, context: list[Turn]) -> str: ...


def _begin_hook(agent: Agent, env: Environment, mode: PlannerMode, prompts: PromptSet) -> None:
    hook = getattr(agent, "begin_episode", None)
    if hook is not None:
        hook(env.name, mode.value, prompts)


def _end_hook(agent: Agent, score: float) -> None:
    hook = getattr(agent, "end_episode", None)
    if hook is not None:
        hook(score)


def _episode_result(
    env: Environment,
    mode: PlannerMode,
    transcript: Transcript,
    rewards: list[float],
    steps: int,
    agent_calls: int,
) -> EpisodeResult:
    return EpisodeResult(
        env=env.name,
        mode=mode,
        level_id=env.level_id(),
        score=env.score(),
        total_reward=sum(rewards),
        steps=steps,
        decisions=len(transcript.actions),
        agent_calls=agent_calls,
        transcript=transcript,
        errors=classify_errors(transcript.actions) if transcript.actions else None,
        info={},
    )


def _global_context(prompts: PromptSet, obs: Observation, env: Environment) -> list[Turn]:
    fields = {
        "SYSTEM PROMPT": prompts.system_prompt,
        "INITIAL FRAME": obs.text,
        "TASK DESCIPTION": prompts.task_prompt,
        **env.template_fields(),
    }
    text = fill_template(prompts.io_prompt, fields)
    if prompts.cot_prompt:
        text = text + "\n\n" + prompts.cot_prompt
    return [Turn(role="user", text=text, observation_step=1, image=obs.image, image_mime=obs.image_mime)]


def run_global(
    agent: Agent,
    env: Environment,
    prompts: Optional[PromptSet] = None,
    cfg: Optional[PlannerConfig] = None,
) -> EpisodeResult:
    """Query the agent once, then replay its whole action sequence."""
    cfg = cfg or PlannerConfig(mode=PlannerMode.GLOBAL)
    prompts = prompts or env.prompt_set(PlannerMode.GLOBAL)
    _begin_hook(agent, env, PlannerMode.GLOBAL, prompts)
    obs = env.reset()
    context = _global_context(prompts, obs, env)
    transcript = Transcript(contexts=[context])

    actions: Optional[list[str]] = None
    agent_calls = 0
    for _ in range(1 + cfg.max_parse_retries):
        reply = agent.act(context)
        agent_calls += 1
        transcript.raw_outputs.append(reply)
        try:
            actions = env.parse_global(reply)
            break
        except ParseError:
            continue

    rewards: list[float] = []
    steps = 0
    if actions is None:
        transcript.actions.append(None)
    else:
        transcript.actions.extend(actions)
        limit = min(len(actions), cfg.max_steps, env.max_decisions)
        for action in actions[:limit]:
            _, reward, done = env.step(action)
            rewards.append(reward)
            steps += 1
            if done:
                break
    result = _episode_result(env, PlannerMode.GLOBAL, transcript, rewards, steps, agent_calls)
    _end_hook(agent, result.score)
    return result


def build_online_context(
    prompts: PromptSet,
    observations: list[Observation],
    outputs: list[str],
    t: int,
    cfg: PlannerConfig,
) -> list[Turn]:
    """Context window for decision step t (1-based).

    Retains the last min(t-1, AM) agent outputs as chat history and
    attaches a real frame to the last min(t, OM) observation slots; the
    system prompt and format block ride on the oldest retained turn.
    """
    am_eff = min(t - 1, cfg.action_memory)
    om_eff = min(t, cfg.observation_memory)
    first = t - am_eff
    cont = continue_text()
    turns: list[Turn] = []
    for s in range(first, t + 1):
        obs = observations[s - 1]
        real = s > t - om_eff
        frame_text = obs.text if real else IMAGE_PLACEHOLDER
        if s == first:
            head = prompts.system_prompt
            if prompts.task_prompt:
                head = head + "\n\n" + prompts.task_prompt
            tail = prompts.io_prompt
            if prompts.cot_prompt:
                tail = prompts.cot_prompt + "\n\n" + tail
            text = head + "\n" + frame_text + "\n\n" + tail
        else:
            text = cont + "\n" + frame_text
        turns.append(
            Turn(
                role="user",
                text=text,
                observation_step=s if real else None,
                image=obs.image if real else None,
                image_mime=obs.image_mime,
            )
        )
        if s < t:
            turns.append(Turn(role="agent", text=outputs[s - 1]))
    return turns


def _single_context(prompts: PromptSet, obs: Observation, env: Environment, step: int) -> list[Turn]:
    fields = {
        "SYSTEM PROMPT": prompts.system_prompt,
        "TASK DESCIPTION": prompts.task_prompt,
        "RANDER FEEDBACK IMAGE": obs.text,
        **env.template_fields(),
    }
    text = fill_template(prompts.io_prompt, fields)
    return [Turn(role="user", text=text, observation_step=step, image=obs.image, image_mime=obs.image_mime)]


def run_online(
    agent: Agent,
    env: Environment,
    prompts: Optional[PromptSet] = None,
    cfg: Optional[PlannerConfig] = None,
) -> EpisodeResult:
    """Query the agent once per decision until done or the step cap."""
    cfg = cfg or PlannerConfig(mode=PlannerMode.ONLINE, max_steps=env.max_decisions)
    prompts = prompts or env.prompt_set(PlannerMode.ONLINE)
    _begin_hook(agent, env, PlannerMode.ONLINE, prompts)
    obs = env.reset()
    observations = [obs]
    outputs: list[str] = []  # final reply per decision, parsed or not
    transcript = Transcript()
    rewards: list[float] = []
    steps = 0
    agent_calls = 0

    for t in range(1, min(cfg.max_steps, env.max_decisions) + 1):
        if env.context_style == "single":
            context = _single_context(prompts, observations[-1], env, t)
        else:
            context = build_online_context(prompts, observations, outputs, t, cfg)
        transcript.contexts.append(context)

        reply = ""
        action: Optional[str] = None
        for _ in range(1 + cfg.max_parse_retries):
            reply = agent.act(context)
            agent_calls += 1
            transcript.raw_outputs.append(reply)
            try:
                action = env.parse_online(reply)
                break
            except ParseError:
                continue
        outputs.append(reply)
        transcript.actions.append(action)

        if action is None:
            observations.append(observations[-1])
            continue
        next_obs, reward, done = env.step(action)
        rewards.append(reward)
        steps += 1
        observations.append(next_obs)
        if done:
            break
    result = _episode_result(env, PlannerMode.ONLINE, transcript, rewards, steps, agent_calls)
    _end_hook(agent, result.score)
    return result


def run_episode(
    agent: Agent,
    env: Environment,
    cfg: PlannerConfig,
    prompts: Optional[PromptSet] = None,
) -> EpisodeResult:
    if cfg.mode is PlannerMode.GLOBAL:
        return run_global(agent, env, prompts, cfg)
    return run_online(agent, env, prompts, cfg)
