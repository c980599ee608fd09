/**
 * Page snapshot document format.
 *
 * One JSON document per captured page:
 *
 *   {"action_id": ..., "status": ..., "viewport": {"w": ..., "h": ...},
 *    "elements": [{"tag": ..., "bbox": [x, y, w, h], "children": ...,
 *                  "filter_by": ..., "eval_by": [...], "attributes": {...}}]}
 *
 * This format is the contract between the toolkit and the scorer; the
 * serializer here emits exactly this shape and the parser rejects
 * documents that violate it.
 */

export type PageStatus = "OK" | "ParseError" | "RenderError" | "InteractionError";

export const PAGE_STATUSES: readonly PageStatus[] = [
  "OK",
  "ParseError",
  "RenderError",
  "InteractionError",
];

/** [x, y, w, h] in page pixels. */
export type BBox = [number, number, number, number];

export interface ElementSnapshot {
  tag: string;
  bbox: BBox;
  /** Number of child elements. */
  children: number;
  /** Attribute used to pre-filter match candidates; ground-truth atoms only. */
  filterBy: string | null;
  /** Attributes scored by the evaluator; non-empty marks the element atomic. */
  evalBy: string[];
  attributes: Record<string, string>;
}

export interface PageSnapshot {
  actionId: string;
  status: PageStatus;
  viewport: { w: number; h: number };
  elements: ElementSnapshot[];
  /** Post-event settle delay used when this page was captured, if any. */
  settleMs?: number;
}

export function isAtomic(element: ElementSnapshot): boolean {
  return element.evalBy.length > 0;
}

function checkElement(element: ElementSnapshot, index: number): void {
  const [, , w, h] = element.bbox;
  if (w < 0 || h < 0) {
    throw new Error(`element ${index}: bbox has negative extent`);
  }
  if (element.filterBy !== null && !(element.filterBy in element.attributes)) {
    throw new Error(`element ${index}: filter_by attribute ${element.filterBy} missing from attributes`);
  }
  for (const name of element.evalBy) {
    if (!(name in element.attributes)) {
      throw new Error(`element ${index}: eval_by attribute ${name} missing from attributes`);
    }
  }
}

/** Validate snapshot invariants; throws with a description of the violation. */
export function checkSnapshot(page: PageSnapshot): void {
  if (page.status === "OK" && page.elements.length === 0) {
    throw new Error("OK page must have at least one element");
  }
  page.elements.forEach(checkElement);
}

export function snapshotToDocument(page: PageSnapshot): Record<string, unknown> {
  checkSnapshot(page);
  const doc: Record<string, unknown> = {
    action_id: page.actionId,
    status: page.status,
    viewport: { w: page.viewport.w, h: page.viewport.h },
    elements: page.elements.map((element) => ({
      tag: element.tag,
      bbox: [...element.bbox],
      children: element.children,
      filter_by: element.filterBy,
      eval_by: [...element.evalBy],
      attributes: { ...element.attributes },
    })),
  };
  if (page.settleMs !== undefined) {
    doc.settle_ms = page.settleMs;
  }
  return doc;
}

export function serializeSnapshot(page: PageSnapshot): string {
  return JSON.stringify(snapshotToDocument(page), null, 2) + "\n";
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function badDocument(reason: string): never {
  throw new Error(`malformed snapshot document: ${reason}`);
}

/** Parse and validate one snapshot document; throws on malformed input. */
export function documentToSnapshot(doc: unknown): PageSnapshot {
  if (!isRecord(doc)) badDocument("not an object");
  const { action_id, status, viewport, elements } = doc;
  if (typeof action_id !== "string" || action_id.length === 0) badDocument("bad action_id");
  if (typeof status !== "string" || !PAGE_STATUSES.includes(status as PageStatus)) {
    badDocument(`bad status ${JSON.stringify(status)}`);
  }
  if (!isRecord(viewport)) badDocument("bad viewport");
  const { w, h } = viewport;
  if (!Number.isInteger(w) || !Number.isInteger(h) || (w as number) < 1 || (h as number) < 1) {
    badDocument("bad viewport size");
  }
  if (!Array.isArray(elements)) badDocument("elements is not an array");

  const parsed: ElementSnapshot[] = elements.map((item, index) => {
    if (!isRecord(item)) badDocument(`element ${index} is not an object`);
    const { tag, bbox, children, filter_by, eval_by, attributes } = item;
    if (typeof tag !== "string" || tag.length === 0) badDocument(`element ${index}: bad tag`);
    if (!Array.isArray(bbox) || bbox.length !== 4 || bbox.some((v) => typeof v !== "number")) {
      badDocument(`element ${index}: bad bbox`);
    }
    if (!Number.isInteger(children) || (children as number) < 0) {
      badDocument(`element ${index}: bad children count`);
    }
    if (filter_by !== null && typeof filter_by !== "string") {
      badDocument(`element ${index}: bad filter_by`);
    }
    if (!Array.isArray(eval_by) || eval_by.some((v) => typeof v !== "string")) {
      badDocument(`element ${index}: bad eval_by`);
    }
    if (!isRecord(attributes)) badDocument(`element ${index}: bad attributes`);
    const attrs: Record<string, string> = {};
    for (const [name, value] of Object.entries(attributes)) {
      if (typeof value !== "string" && typeof value !== "number") {
        badDocument(`element ${index}: attribute ${name} is not a string or number`);
      }
      attrs[name] = String(value);
    }
    return {
      tag,
      bbox: bbox as BBox,
      children: children as number,
      filterBy: filter_by as string | null,
      evalBy: eval_by as string[],
      attributes: attrs,
    };
  });

  const page: PageSnapshot = {
    actionId: action_id,
    status: status as PageStatus,
    viewport: { w: w as number, h: h as number },
    elements: parsed,
  };
  if (typeof doc.settle_ms === "number") {
    page.settleMs = doc.settle_ms;
  }
  checkSnapshot(page);
  return page;
}

export function parseSnapshot(text: string): PageSnapshot {
  return documentToSnapshot(JSON.parse(text));
}
