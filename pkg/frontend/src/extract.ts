/**
 * DOM snapshot extraction.
 *
 * Walks a rendered document and emits one ElementSnapshot per visible
 * element: bounding box in page pixels, the configured attribute values
 * (computed styles, HTML attributes, or normalized text), child counts,
 * and the atomic-element markers carried by ground-truth pages. Pages
 * without markers produce plain candidate elements, so the same walk
 * serves both ground-truth capture and generated-page capture.
 */

import { BBox, ElementSnapshot, PageSnapshot } from "./snapshot.js";

export interface ExtractionSpec {
  /** Attribute names captured on every element. */
  attributes: string[];
  /** Marker attribute naming the filter attribute of an atom. */
  filterAttr?: string;
  /** Marker attribute listing the evaluated attributes of an atom. */
  evalAttr?: string;
  /** Fixed per-corpus viewport; bboxes are only comparable at one size. */
  viewport?: { w: number; h: number };
}

export const DEFAULT_FILTER_ATTR = "data-filter-by";
export const DEFAULT_EVAL_ATTR = "data-evalby";
export const DEFAULT_VIEWPORT: { w: number; h: number } = { w: 1280, h: 800 };

// Tags that never render; their subtrees are metadata, not content.
const SKIPPED_TAGS = new Set([
  "base", "head", "link", "meta", "noscript", "script", "style", "template", "title",
]);

// Names read from the HTML attribute before falling back to computed style.
const HTML_VALUE_ATTRS = new Set([
  "alt", "class", "href", "id", "name", "placeholder", "src", "type", "value",
]);

function pxLength(value: string): number | null {
  const match = /^(-?\d+(?:\.\d+)?)px$/.exec(value.trim());
  return match ? Number(match[1]) : null;
}

function isHidden(style: CSSStyleDeclaration): boolean {
  const visibility = style.getPropertyValue("visibility");
  return (
    style.getPropertyValue("display") === "none" ||
    visibility === "hidden" ||
    visibility === "collapse"
  );
}

function inHiddenSubtree(el: Element, win: Window): boolean {
  for (let node: Element | null = el; node; node = node.parentElement) {
    if (isHidden(win.getComputedStyle(node))) return true;
  }
  return false;
}

/**
 * Box from explicit absolute/fixed positioning styles, for DOM
 * implementations without a layout engine. Offsets accumulate through
 * the positioned-ancestor chain, matching how absolute positioning
 * resolves in a real browser. Returns null when the element carries no
 * explicit geometry.
 */
function staticBox(el: Element, win: Window): { x: number; y: number; w: number; h: number } | null {
  const style = win.getComputedStyle(el);
  const position = style.getPropertyValue("position");
  if (position !== "absolute" && position !== "fixed") return null;
  const x = pxLength(style.getPropertyValue("left"));
  const y = pxLength(style.getPropertyValue("top"));
  const w = pxLength(style.getPropertyValue("width"));
  const h = pxLength(style.getPropertyValue("height"));
  if (x === null || y === null || w === null || h === null) return null;
  let offsetX = 0;
  let offsetY = 0;
  if (position === "absolute") {
    for (let p = el.parentElement; p && p.tagName.toLowerCase() !== "body"; p = p.parentElement) {
      if (win.getComputedStyle(p).getPropertyValue("position") !== "static") {
        const parentBox = staticBox(p, win);
        if (parentBox) {
          offsetX = parentBox.x;
          offsetY = parentBox.y;
        }
        break;
      }
    }
  }
  return { x: offsetX + x, y: offsetY + y, w, h };
}

function measure(el: Element, win: Window): BBox | null {
  const rect = el.getBoundingClientRect();
  if (rect.width > 0 && rect.height > 0) {
    return [rect.left + win.scrollX, rect.top + win.scrollY, rect.width, rect.height];
  }
  // Layoutless environments report zero rects; fall back to explicit geometry.
  if (rect.width === 0 && rect.height === 0 && rect.left === 0 && rect.top === 0) {
    const box = staticBox(el, win);
    if (box && box.w > 0 && box.h > 0) return [box.x, box.y, box.w, box.h];
  }
  return null;
}

function normalizedText(el: Element): string {
  return (el.textContent ?? "").replace(/\s+/g, " ").trim();
}

function attributeValue(el: Element, name: string, win: Window): string | null {
  if (name === "text") return normalizedText(el);
  if (HTML_VALUE_ATTRS.has(name)) {
    const raw = el.getAttribute(name);
    if (raw !== null) return raw;
  }
  const value = win.getComputedStyle(el).getPropertyValue(name);
  return value === "" ? null : value;
}

function parseMarkers(
  el: Element,
  spec: ExtractionSpec,
): { filterBy: string | null; evalBy: string[] } {
  const evalRaw = el.getAttribute(spec.evalAttr ?? DEFAULT_EVAL_ATTR);
  const filterRaw = el.getAttribute(spec.filterAttr ?? DEFAULT_FILTER_ATTR);
  const evalBy = (evalRaw ?? "")
    .split(",")
    .map((name) => name.trim())
    .filter((name) => name.length > 0);
  const filterBy = filterRaw === null || filterRaw.trim() === "" ? null : filterRaw.trim();
  return { filterBy, evalBy };
}

function captureElement(el: Element, spec: ExtractionSpec, win: Window): ElementSnapshot | null {
  const bbox = measure(el, win);
  if (bbox === null) return null;
  const { filterBy, evalBy } = parseMarkers(el, spec);
  const attributes: Record<string, string> = {};
  const required = new Set(evalBy);
  if (filterBy !== null) required.add(filterBy);
  for (const name of new Set([...spec.attributes, ...required])) {
    const value = attributeValue(el, name, win);
    // marker-named attributes must exist for the scorer; empty is a value
    if (value !== null) attributes[name] = value;
    else if (required.has(name)) attributes[name] = "";
  }
  return {
    tag: el.tagName.toLowerCase(),
    bbox,
    children: el.childElementCount,
    filterBy,
    evalBy,
    attributes,
  };
}

/**
 * Capture a snapshot of an already-loaded window.
 *
 * Elements appear in document order; hidden elements and elements
 * without measurable geometry are skipped. A page yielding no elements
 * counts as a failed render and is scored 0 downstream.
 */
export function snapshotWindow(
  win: Window,
  spec: ExtractionSpec,
  actionId = "initial",
): PageSnapshot {
  const viewport = spec.viewport ?? DEFAULT_VIEWPORT;
  const body = win.document.body;
  const elements: ElementSnapshot[] = [];
  if (body) {
    const walk: Element[] = [body, ...Array.from(body.querySelectorAll("*"))];
    for (const el of walk) {
      if (SKIPPED_TAGS.has(el.tagName.toLowerCase())) continue;
      if (inHiddenSubtree(el, win)) continue;
      const captured = captureElement(el, spec, win);
      if (captured) elements.push(captured);
    }
  }
  return {
    actionId,
    status: elements.length > 0 ? "OK" : "RenderError",
    viewport: { w: viewport.w, h: viewport.h },
    elements,
  };
}

export type PageLoader = (url: string) => Promise<Window>;

/** Browser loader: a detached iframe sized to the extraction viewport. */
export function iframeLoader(host: Document, viewport = DEFAULT_VIEWPORT): PageLoader {
  return (url) =>
    new Promise((resolve, reject) => {
      const frame = host.createElement("iframe");
      frame.width = String(viewport.w);
      frame.height = String(viewport.h);
      frame.style.position = "absolute";
      frame.style.left = "-10000px";
      frame.addEventListener("load", () => {
        const win = frame.contentWindow;
        if (win) resolve(win as unknown as Window);
        else reject(new Error("iframe produced no window"));
      });
      frame.addEventListener("error", () => reject(new Error(`failed to load ${url}`)));
      frame.src = url;
      host.body.appendChild(frame);
    });
}

function withTimeout<T>(promise: Promise<T>, ms: number): Promise<T> {
  return new Promise((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error(`page load timed out after ${ms}ms`)), ms);
    promise.then(
      (value) => { clearTimeout(timer); resolve(value); },
      (err) => { clearTimeout(timer); reject(err); },
    );
  });
}

export interface ExtractOptions {
  loader?: PageLoader;
  timeoutMs?: number;
  actionId?: string;
}

/**
 * Load a page and capture its snapshot. Load or compile failure (and
 * timeout) produces a RenderError snapshot instead of throwing, so one
 * broken page costs only its own score.
 */
export async function extractSnapshot(
  url: string,
  spec: ExtractionSpec,
  opts: ExtractOptions = {},
): Promise<PageSnapshot> {
  const viewport = spec.viewport ?? DEFAULT_VIEWPORT;
  const actionId = opts.actionId ?? "initial";
  const loader = opts.loader ?? iframeLoader(globalThis.document, viewport);
  try {
    const win = await withTimeout(loader(url), opts.timeoutMs ?? 10_000);
    return snapshotWindow(win, spec, actionId);
  } catch {
    return { actionId, status: "RenderError", viewport: { w: viewport.w, h: viewport.h }, elements: [] };
  }
}
