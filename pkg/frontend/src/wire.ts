/**
 * Agent wire protocol messages, as consumed from the harness endpoint.
 *
 * Four message types flow through an episode: episode_start, observe
 * (the harness awaits a reply), act, and episode_end. The validator
 * mirrors the harness schema so the panel can refuse to emit a
 * non-conforming message before it reaches the network.
 */

export type PlannerMode = "Global" | "Online";

export interface PromptSet {
  system_prompt: string;
  task_prompt: string;
  cot_prompt: string;
  io_prompt: string;
}

export interface EpisodeStartMessage {
  type: "episode_start";
  env: string;
  mode: PlannerMode;
  prompts: PromptSet;
}

export interface ObserveMessage {
  type: "observe";
  step: number;
  text: string;
  image: string | null;
  mime: string | null;
}

export interface ActMessage {
  type: "act";
  text: string;
}

export interface EpisodeEndMessage {
  type: "episode_end";
  score: number;
}

export type WireMessage =
  | EpisodeStartMessage
  | ObserveMessage
  | ActMessage
  | EpisodeEndMessage;

export function actMessage(text: string): ActMessage {
  return { type: "act", text };
}

const PROMPT_KEYS: (keyof PromptSet)[] = [
  "system_prompt",
  "task_prompt",
  "cot_prompt",
  "io_prompt",
];

function checkKeys(value: Record<string, unknown>, allowed: string[], errors: string[]): void {
  for (const key of Object.keys(value)) {
    if (!allowed.includes(key)) errors.push(`unexpected field ${key}`);
  }
}

/**
 * Structural validation of one wire message. Returns a list of
 * violations; an empty list means the message conforms.
 */
export function wireViolations(value: unknown): string[] {
  const errors: string[] = [];
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    return ["message is not an object"];
  }
  const msg = value as Record<string, unknown>;
  switch (msg.type) {
    case "episode_start": {
      checkKeys(msg, ["type", "env", "mode", "prompts"], errors);
      if (typeof msg.env !== "string") errors.push("env must be a string");
      if (msg.mode !== "Global" && msg.mode !== "Online") {
        errors.push("mode must be Global or Online");
      }
      const prompts = msg.prompts;
      if (typeof prompts !== "object" || prompts === null || Array.isArray(prompts)) {
        errors.push("prompts must be an object");
      } else {
        const p = prompts as Record<string, unknown>;
        checkKeys(p, PROMPT_KEYS, errors);
        for (const key of PROMPT_KEYS) {
          if (typeof p[key] !== "string") errors.push(`prompts.${key} must be a string`);
        }
      }
      break;
    }
    case "observe":
      checkKeys(msg, ["type", "step", "text", "image", "mime"], errors);
      if (!Number.isInteger(msg.step) || (msg.step as number) < 1) {
        errors.push("step must be an integer >= 1");
      }
      if (typeof msg.text !== "string") errors.push("text must be a string");
      if (msg.image !== null && typeof msg.image !== "string") {
        errors.push("image must be a string or null");
      }
      if (msg.mime !== null && typeof msg.mime !== "string") {
        errors.push("mime must be a string or null");
      }
      break;
    case "act":
      checkKeys(msg, ["type", "text"], errors);
      if (typeof msg.text !== "string") errors.push("text must be a string");
      break;
    case "episode_end":
      checkKeys(msg, ["type", "score"], errors);
      if (typeof msg.score !== "number" || Number.isNaN(msg.score)) {
        errors.push("score must be a number");
      }
      break;
    default:
      errors.push(`unknown message type ${JSON.stringify(msg.type)}`);
  }
  return errors;
}

export function assertWireMessage(value: unknown): WireMessage {
  const errors = wireViolations(value);
  if (errors.length > 0) {
    throw new Error(`invalid wire message: ${errors.join("; ")}`);
  }
  return value as WireMessage;
}
