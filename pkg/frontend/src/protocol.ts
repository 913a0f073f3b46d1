/**
 * Wire codec for the board service: one JSON object per line, both ways.
 *
 * Event lines are assembled only here so everything the UI emits is
 * schema-exact; the server rejects unknown fields outright. Notification
 * parsing is strict for the mirror reason: a line this client cannot
 * interpret is a bug to surface, not to skip.
 *
 * The server serializes with compact separators and object keys in a fixed
 * order. Since JSON.parse keeps key order and every value in a snapshot
 * layout is an integer or a clean ASCII string, JSON.stringify of a parsed
 * layout reproduces the server's canonical bytes. canonicalJson below
 * depends on that.
 */

export type BracketType = "text" | "image" | "video";
export type ButtonKind = "repeat_last" | "read_all";
export type DiodeMode = "with_diodes" | "without_diodes";

export const ROWS = 16;
export const COLS = 12;
export const CELL_PX = 130;
export const CANVAS_PX = { width: 1560, height: 2080 } as const;

export const NOMINAL_OHMS: Record<BracketType, number> = {
  text: 330,
  image: 1000,
  video: 3300,
};

/** [row, col], row 0..15 top to bottom, col 0..11 left to right. */
export type Cell = readonly [number, number];

export class ProtocolError extends Error {}

function checkCell(cell: Cell): void {
  const [row, col] = cell;
  if (!Number.isInteger(row) || !Number.isInteger(col)) {
    throw new ProtocolError(`cell must be two integers, got [${row},${col}]`);
  }
  if (row < 0 || row >= ROWS || col < 0 || col >= COLS) {
    throw new ProtocolError(`cell [${row},${col}] is outside the ${ROWS}x${COLS} grid`);
  }
}

// ---------------------------------------------------------------- events

export function cornerDownLine(ts: number, cell: Cell, resistanceOhms: number): string {
  checkCell(cell);
  if (!Number.isFinite(resistanceOhms) || resistanceOhms <= 0) {
    throw new ProtocolError(`resistance must be a positive number, got ${resistanceOhms}`);
  }
  return JSON.stringify({
    type: "corner_down",
    ts,
    cell: [cell[0], cell[1]],
    resistance_ohms: resistanceOhms,
  });
}

export function cornerUpLine(ts: number, cell: Cell): string {
  checkCell(cell);
  return JSON.stringify({ type: "corner_up", ts, cell: [cell[0], cell[1]] });
}

export function buttonLine(ts: number, kind: ButtonKind): string {
  if (kind !== "repeat_last" && kind !== "read_all") {
    throw new ProtocolError(`unknown button kind ${JSON.stringify(kind)}`);
  }
  return JSON.stringify({ type: "button", ts, kind });
}

export function setDiodeModeLine(ts: number, mode: DiodeMode): string {
  if (mode !== "with_diodes" && mode !== "without_diodes") {
    throw new ProtocolError(`unknown diode mode ${JSON.stringify(mode)}`);
  }
  return JSON.stringify({ type: "set_diode_mode", ts, mode });
}

export function setSeedLine(ts: number, seed: number): string {
  // the wire allows u64 but doubles only hold 53 bits exactly
  if (!Number.isSafeInteger(seed) || seed < 0) {
    throw new ProtocolError(`seed must be a non-negative safe integer, got ${seed}`);
  }
  return JSON.stringify({ type: "set_seed", ts, seed });
}

// ---------------------------------------------------------- notifications

export type LayoutEventKind =
  | "bracket_placed"
  | "bracket_resized"
  | "bracket_moved"
  | "bracket_removed"
  | "misalignment_warning"
  | "partial_placement";

const LAYOUT_EVENT_KINDS: ReadonlySet<string> = new Set([
  "bracket_placed",
  "bracket_resized",
  "bracket_moved",
  "bracket_removed",
  "misalignment_warning",
  "partial_placement",
]);

export interface LayoutEventPayload {
  kind: LayoutEventKind;
  id?: number;
  bracket_type?: BracketType;
  span?: [number, number, number, number];
  old_span?: [number, number, number, number];
  cells?: [number, number][];
}

export interface BracketRecord {
  id: number;
  type: BracketType;
  top: number;
  left: number;
  bottom: number;
  right: number;
  px: { x: number; y: number; width: number; height: number };
}

export interface Layout {
  canvas: { width: number; height: number };
  brackets: BracketRecord[];
}

export interface LayoutEventNotification {
  tick: number;
  kind: "layout_event";
  event: LayoutEventPayload;
}

export interface UtteranceNotification {
  tick: number;
  kind: "utterance";
  text: string;
  est_duration_s: number;
  trigger: string;
}

export interface SnapshotNotification {
  tick: number;
  kind: "snapshot";
  layout: Layout;
}

export interface HtmlNotification {
  tick: number;
  kind: "html";
  document: string;
}

export interface AnomalyNotification {
  tick: number;
  kind: "anomaly";
  anomaly: { source: string; reason: string; detail: string; cell: [number, number] | null };
}

export type Notification =
  | LayoutEventNotification
  | UtteranceNotification
  | SnapshotNotification
  | HtmlNotification
  | AnomalyNotification;

function fail(why: string): never {
  throw new ProtocolError(`bad notification: ${why}`);
}

function isRecord(v: unknown): v is Record<string, unknown> {
  return typeof v === "object" && v !== null && !Array.isArray(v);
}

function wantString(obj: Record<string, unknown>, key: string): string {
  const v = obj[key];
  if (typeof v !== "string") fail(`field '${key}' must be a string`);
  return v;
}

function wantNumber(obj: Record<string, unknown>, key: string): number {
  const v = obj[key];
  if (typeof v !== "number" || !Number.isFinite(v)) fail(`field '${key}' must be a number`);
  return v;
}

function checkLayout(v: unknown): asserts v is Layout {
  if (!isRecord(v) || !isRecord(v.canvas) || !Array.isArray(v.brackets)) {
    fail("layout must have canvas and brackets");
  }
  for (const b of v.brackets) {
    if (!isRecord(b) || typeof b.id !== "number" || typeof b.type !== "string" || !isRecord(b.px)) {
      fail("malformed bracket record");
    }
  }
}

export function parseNotification(line: string): Notification {
  let obj: unknown;
  try {
    obj = JSON.parse(line);
  } catch {
    fail("not valid JSON");
  }
  if (!isRecord(obj)) fail("not an object");
  const tick = obj.tick;
  if (typeof tick !== "number" || !Number.isInteger(tick) || tick < 0) {
    fail("field 'tick' must be a non-negative integer");
  }
  const kind = obj.kind;
  switch (kind) {
    case "layout_event": {
      const event = obj.event;
      if (!isRecord(event) || !LAYOUT_EVENT_KINDS.has(String(event.kind))) {
        fail("unknown layout event kind");
      }
      return obj as unknown as LayoutEventNotification;
    }
    case "utterance":
      wantString(obj, "text");
      wantNumber(obj, "est_duration_s");
      wantString(obj, "trigger");
      return obj as unknown as UtteranceNotification;
    case "snapshot":
      checkLayout(obj.layout);
      return obj as unknown as SnapshotNotification;
    case "html":
      wantString(obj, "document");
      return obj as unknown as HtmlNotification;
    case "anomaly": {
      const a = obj.anomaly;
      if (!isRecord(a)) fail("field 'anomaly' must be an object");
      wantString(a, "source");
      wantString(a, "reason");
      wantString(a, "detail");
      return obj as unknown as AnomalyNotification;
    }
    default:
      fail(`unknown kind ${JSON.stringify(kind)}`);
  }
}

/** Compact JSON matching the server's canonical form (integer-valued layouts). */
export function canonicalJson(value: unknown): string {
  return JSON.stringify(value);
}
