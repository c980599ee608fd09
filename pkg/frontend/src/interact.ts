/**
 * Interaction script runner.
 *
 * Scripts execute in order against a live page session; each script
 * yields one snapshot named by its action id, captured after a fixed
 * settle delay. A selector that fails to resolve aborts only its own
 * script: the failed action is recorded as an InteractionError page and
 * later scripts still run.
 */

import { ExtractionSpec, DEFAULT_VIEWPORT, snapshotWindow } from "./extract.js";
import { PageSnapshot } from "./snapshot.js";

export type InteractionEvent = "click" | "input" | "scroll";

export interface InteractionStep {
  /** CSS selector; resolves to the first match, by class/id/name. */
  selector: string;
  event: InteractionEvent;
  /** Text entered by an input step. */
  value?: string;
  /** Scroll offset in pixels for a scroll step. */
  amount?: number;
}

export interface InteractionScript {
  actionId: string;
  steps: InteractionStep[];
}

export interface RunOptions {
  /** Post-event settle delay in ms, recorded in each action snapshot. */
  settleMs?: number;
}

export const DEFAULT_SETTLE_MS = 50;

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

function dispatch(el: Element, step: InteractionStep, win: Window): void {
  const W = win as unknown as typeof globalThis;
  switch (step.event) {
    case "click":
      el.dispatchEvent(new W.MouseEvent("click", { bubbles: true, cancelable: true }));
      break;
    case "input": {
      const field = el as HTMLInputElement;
      if ("value" in field) field.value = step.value ?? "";
      el.dispatchEvent(new W.Event("input", { bubbles: true }));
      el.dispatchEvent(new W.Event("change", { bubbles: true }));
      break;
    }
    case "scroll":
      (el as HTMLElement).scrollTop = step.amount ?? 0;
      el.dispatchEvent(new W.Event("scroll"));
      break;
    default:
      throw new Error(`unknown interaction event ${String(step.event)}`);
  }
}

/**
 * Capture the initial snapshot, then one snapshot per script in script
 * order. When the initial capture is not OK the scripts are skipped and
 * only the failed initial page is returned.
 */
export async function runInteractions(
  win: Window,
  scripts: InteractionScript[],
  spec: ExtractionSpec,
  opts: RunOptions = {},
): Promise<PageSnapshot[]> {
  const seen = new Set<string>(["initial"]);
  for (const script of scripts) {
    if (seen.has(script.actionId)) {
      throw new Error(`duplicate or reserved action id ${script.actionId}`);
    }
    seen.add(script.actionId);
  }
  const settleMs = opts.settleMs ?? DEFAULT_SETTLE_MS;
  const viewport = spec.viewport ?? DEFAULT_VIEWPORT;

  const pages: PageSnapshot[] = [snapshotWindow(win, spec, "initial")];
  if (pages[0].status !== "OK") return pages;

  for (const script of scripts) {
    let failed = false;
    for (const step of script.steps) {
      const el = win.document.querySelector(step.selector);
      if (!el) {
        failed = true;
        break;
      }
      dispatch(el, step, win);
    }
    await sleep(settleMs);
    if (failed) {
      pages.push({
        actionId: script.actionId,
        status: "InteractionError",
        viewport: { w: viewport.w, h: viewport.h },
        elements: [],
      });
    } else {
      pages.push({ ...snapshotWindow(win, spec, script.actionId), settleMs });
    }
  }
  return pages;
}

/**
 * Parse the structured-text form in which scripts are stored alongside
 * corpus pages: a JSON array of {action_id, steps: [{selector, event,
 * value?, amount?}]}. Throws on malformed input.
 */
export function parseInteractionScripts(text: string): InteractionScript[] {
  const data: unknown = JSON.parse(text);
  if (!Array.isArray(data)) throw new Error("interaction scripts: expected a JSON array");
  return data.map((item, index) => {
    if (typeof item !== "object" || item === null) {
      throw new Error(`interaction scripts: entry ${index} is not an object`);
    }
    const { action_id, steps } = item as Record<string, unknown>;
    if (typeof action_id !== "string" || action_id.length === 0) {
      throw new Error(`interaction scripts: entry ${index} has a bad action_id`);
    }
    if (!Array.isArray(steps)) {
      throw new Error(`interaction scripts: entry ${index} has no steps array`);
    }
    const parsed: InteractionStep[] = steps.map((step, stepIndex) => {
      const s = step as Record<string, unknown>;
      if (typeof s.selector !== "string" || s.selector.length === 0) {
        throw new Error(`interaction scripts: ${action_id} step ${stepIndex} has a bad selector`);
      }
      if (s.event !== "click" && s.event !== "input" && s.event !== "scroll") {
        throw new Error(`interaction scripts: ${action_id} step ${stepIndex} has a bad event`);
      }
      const out: InteractionStep = { selector: s.selector, event: s.event };
      if (typeof s.value === "string") out.value = s.value;
      if (typeof s.amount === "number") out.amount = s.amount;
      return out;
    });
    return { actionId: action_id, steps: parsed };
  });
}
