export {
  BBox,
  ElementSnapshot,
  PAGE_STATUSES,
  PageSnapshot,
  PageStatus,
  checkSnapshot,
  documentToSnapshot,
  isAtomic,
  parseSnapshot,
  serializeSnapshot,
  snapshotToDocument,
} from "./snapshot.js";
export {
  DEFAULT_EVAL_ATTR,
  DEFAULT_FILTER_ATTR,
  DEFAULT_VIEWPORT,
  ExtractOptions,
  ExtractionSpec,
  PageLoader,
  extractSnapshot,
  iframeLoader,
  snapshotWindow,
} from "./extract.js";
export {
  DEFAULT_SETTLE_MS,
  InteractionEvent,
  InteractionScript,
  InteractionStep,
  RunOptions,
  parseInteractionScripts,
  runInteractions,
} from "./interact.js";
export {
  ActMessage,
  EpisodeEndMessage,
  EpisodeStartMessage,
  ObserveMessage,
  PlannerMode,
  PromptSet,
  WireMessage,
  actMessage,
  assertWireMessage,
  wireViolations,
} from "./wire.js";
export {
  ACTION_VOCABS,
  IMAGE_PLACEHOLDER,
  PanelHandle,
  PanelOptions,
  createHumanPlayPanel,
  formatActionSequence,
  formatSingleAction,
} from "./panel.js";
