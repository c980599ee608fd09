/**
 * Human play panel.
 *
 * Drives one interactive episode against the harness serve endpoint:
 * polls the event log, renders each observation (image and text), and
 * posts the player's chosen action back. Online mode exposes one
 * control per action and posts each decision immediately; Global mode
 * shows only the initial observation and collects the whole action
 * sequence before a single submission. Environments without a fixed
 * vocabulary get a free-form reply box.
 */

import {
  ActMessage,
  EpisodeEndMessage,
  EpisodeStartMessage,
  ObserveMessage,
  PlannerMode,
  WireMessage,
  actMessage,
  wireViolations,
} from "./wire.js";

export const ACTION_VOCABS: Record<string, string[]> = {
  sokoban: ["Up", "Down", "Left", "Right"],
  football: [
    "action_idle",
    "action_left",
    "action_top_left",
    "action_top",
    "action_top_right",
    "action_right",
    "action_bottom_right",
    "action_bottom",
    "action_bottom_left",
    "action_long_pass",
    "action_high_pass",
    "action_short_pass",
    "action_shot",
    "action_sprint",
    "action_release_sprint",
    "action_dribble",
    "action_release_dribble",
    "action_release_direction",
  ],
};

export const IMAGE_PLACEHOLDER = "image not available.";

export interface PanelOptions {
  fetchFn?: typeof fetch;
  /** Event poll interval; the panel long-polls the /events log. */
  pollMs?: number;
  /** Extra or overriding env -> action vocabulary entries. */
  vocabs?: Record<string, string[]>;
  /** Poll automatically (default). Off, the caller drives poll() itself. */
  autoStart?: boolean;
}

export interface PanelHandle {
  /** Stop polling; the server keeps any partial episode. */
  stop(): void;
  /** One poll step: fetch new events and apply them. Returns false after the session ended. */
  poll(): Promise<boolean>;
  readonly status: string;
}

/** Format one chosen action the way the online parser expects it. */
export function formatSingleAction(token: string): string {
  return `# action\n${token}`;
}

/** Format a full action sequence the way the global parser expects it. */
export function formatActionSequence(tokens: string[]): string {
  return `# Actions\n${tokens.join(", ")}`;
}

export function createHumanPlayPanel(
  root: HTMLElement,
  endpoint: string,
  opts: PanelOptions = {},
): PanelHandle {
  const doc = root.ownerDocument;
  const fetchFn = opts.fetchFn ?? fetch;
  const pollMs = opts.pollMs ?? 250;
  const vocabs = { ...ACTION_VOCABS, ...(opts.vocabs ?? {}) };
  const base = endpoint.replace(/\/+$/, "");

  const el = (tag: string, className: string): HTMLElement => {
    const node = doc.createElement(tag);
    node.className = className;
    root.appendChild(node);
    return node;
  };
  const header = el("div", "tri-header");
  const statusLine = el("div", "tri-status");
  const scoreLine = el("div", "tri-score");
  const image = el("img", "tri-image") as HTMLImageElement;
  const imageNote = el("div", "tri-image-note");
  const observation = el("pre", "tri-observation");
  const controls = el("div", "tri-controls");
  const sequenceLine = el("div", "tri-sequence");
  scoreLine.textContent = "score: -";
  statusLine.textContent = "connecting";

  let cursor = 0;
  let stopped = false;
  let ended = false;
  let mode: PlannerMode = "Online";
  let pendingDecision = false;
  let sequence: string[] = [];
  let submitted = false;
  let timer: ReturnType<typeof setTimeout> | null = null;

  const setStatus = (text: string) => {
    statusLine.textContent = text;
  };

  const post = async (text: string): Promise<void> => {
    const message: ActMessage = actMessage(text);
    const violations = wireViolations(message);
    if (violations.length > 0) {
      throw new Error(`refusing to post invalid message: ${violations.join("; ")}`);
    }
    const response = await fetchFn(`${base}/act`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(message),
    });
    if (!response.ok) {
      const body = await response.text();
      setStatus(`act rejected: ${body}`);
    }
  };

  const setControlsEnabled = (enabled: boolean) => {
    for (const button of Array.from(controls.querySelectorAll("button, textarea"))) {
      (button as HTMLButtonElement).disabled = !enabled;
    }
  };

  const buildControls = (env: string) => {
    controls.textContent = "";
    const vocab = vocabs[env];
    if (!vocab) {
      // free-form reply, e.g. webui code blocks
      const box = doc.createElement("textarea");
      box.className = "tri-freeform";
      const send = doc.createElement("button");
      send.className = "tri-send";
      send.textContent = "send";
      send.addEventListener("click", () => {
        void post(box.value);
        pendingDecision = false;
        setControlsEnabled(false);
      });
      controls.appendChild(box);
      controls.appendChild(send);
    } else if (mode === "Online") {
      for (const token of vocab) {
        const button = doc.createElement("button");
        button.className = "tri-action";
        button.textContent = token;
        button.addEventListener("click", () => {
          if (!pendingDecision) return;
          pendingDecision = false;
          setControlsEnabled(false);
          void post(formatSingleAction(token));
        });
        controls.appendChild(button);
      }
    } else {
      // Global: compose the full sequence, then submit once
      for (const token of vocab) {
        const button = doc.createElement("button");
        button.className = "tri-action";
        button.textContent = token;
        button.addEventListener("click", () => {
          if (submitted) return;
          sequence.push(token);
          sequenceLine.textContent = sequence.join(", ");
        });
        controls.appendChild(button);
      }
      const undo = doc.createElement("button");
      undo.className = "tri-undo";
      undo.textContent = "undo";
      undo.addEventListener("click", () => {
        if (submitted) return;
        sequence.pop();
        sequenceLine.textContent = sequence.join(", ");
      });
      controls.appendChild(undo);
      const submit = doc.createElement("button");
      submit.className = "tri-submit";
      submit.textContent = "submit";
      submit.addEventListener("click", () => {
        if (submitted || sequence.length === 0) return;
        submitted = true;
        setControlsEnabled(false);
        void post(formatActionSequence(sequence));
      });
      controls.appendChild(submit);
    }
    setControlsEnabled(false);
  };

  const showObservation = (msg: ObserveMessage) => {
    if (msg.image) {
      image.src = `data:${msg.mime ?? "image/png"};base64,${msg.image}`;
      image.style.display = "";
      imageNote.textContent = "";
    } else {
      image.removeAttribute("src");
      image.style.display = "none";
      imageNote.textContent = IMAGE_PLACEHOLDER;
    }
    observation.textContent = msg.text;
    setStatus(`decision ${msg.step}: your move`);
    pendingDecision = true;
    setControlsEnabled(true);
  };

  const apply = (raw: unknown) => {
    const violations = wireViolations(raw);
    if (violations.length > 0) return; // ignore anything non-conforming
    const msg = raw as WireMessage;
    switch (msg.type) {
      case "episode_start": {
        const start = msg as EpisodeStartMessage;
        mode = start.mode;
        header.textContent = `${start.env} (${start.mode})`;
        buildControls(start.env);
        setStatus("episode started");
        break;
      }
      case "observe":
        showObservation(msg as ObserveMessage);
        break;
      case "act":
        pendingDecision = false;
        break;
      case "episode_end": {
        const end = msg as EpisodeEndMessage;
        scoreLine.textContent = `score: ${end.score}`;
        setStatus("episode complete");
        ended = true;
        break;
      }
    }
  };

  const poll = async (): Promise<boolean> => {
    if (stopped || ended) return false;
    let payload: { events: unknown[]; next: number };
    try {
      const response = await fetchFn(`${base}/events?since=${cursor}`);
      payload = (await response.json()) as { events: unknown[]; next: number };
    } catch {
      setStatus("disconnected");
      stopped = true;
      return false;
    }
    for (const event of payload.events) apply(event);
    cursor = payload.next;
    return !ended;
  };

  const loop = async () => {
    const alive = await poll();
    if (alive && !stopped) {
      timer = setTimeout(() => void loop(), pollMs);
    }
  };
  if (opts.autoStart ?? true) {
    timer = setTimeout(() => void loop(), 0);
  }

  return {
    stop() {
      stopped = true;
      if (timer !== null) clearTimeout(timer);
    },
    poll,
    get status() {
      return statusLine.textContent ?? "";
    },
  };
}
