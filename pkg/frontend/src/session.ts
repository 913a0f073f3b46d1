/**
 * Client session state. The transport delivers notification lines; the
 * session folds them into a caption log, the latest layout snapshot, and the
 * engine-rendered HTML. Gestures go the other way as raw corner events.
 *
 * The server stays authoritative: local bracket models adopt whatever the
 * layout events say, and the preview pane only ever shows the HTML document
 * the engine rendered. Captions are stored byte-for-byte as received.
 */

import {
  CORNER_ORDER,
  cellKey,
  cornerMoves,
  resizeSpan,
  sameSpan,
  spanCorners,
  type CornerName,
  type RectSpan,
  type VirtualBracket,
} from "./board.js";
import {
  NOMINAL_OHMS,
  buttonLine,
  canonicalJson,
  cornerDownLine,
  cornerUpLine,
  parseNotification,
  setDiodeModeLine,
  setSeedLine,
  type AnomalyNotification,
  type BracketRecord,
  type BracketType,
  type ButtonKind,
  type Cell,
  type DiodeMode,
  type LayoutEventPayload,
  type Layout,
  type Notification,
} from "./protocol.js";
import type { Transport } from "./transport.js";

export interface Caption {
  tick: number;
  text: string;
  estDurationS: number;
  trigger: string;
  /** ms between the line arriving on the wire and this entry existing. */
  latencyMs: number;
}

export class NotConnectedError extends Error {}

interface Waiter {
  pred: (n: Notification) => boolean;
  resolve: (n: Notification) => void;
  reject: (e: Error) => void;
  timer: ReturnType<typeof setTimeout>;
}

function spanFromList(v: [number, number, number, number]): RectSpan {
  return { top: v[0], left: v[1], bottom: v[2], right: v[3] };
}

export class UiSession {
  readonly captions: Caption[] = [];
  readonly log: Notification[] = [];
  readonly anomalies: AnomalyNotification[] = [];
  snapshot: Layout | null = null;
  /** Canonical bytes of the latest snapshot, comparable to replay output. */
  snapshotJson: string | null = null;
  html: string | null = null;
  connected = false;
  /** Optional narration hook, off unless assigned (see speech.ts). */
  speech: ((text: string) => void) | null = null;

  private readonly models = new Map<number, VirtualBracket>();
  private readonly looseCorners = new Map<string, BracketType>();
  private nextLocalId = 1;
  private readonly now: () => number;
  private readonly t0: number;
  private waiters: Waiter[] = [];
  private listeners: ((n: Notification) => void)[] = [];

  constructor(private readonly transport: Transport, opts: { now?: () => number } = {}) {
    this.now = opts.now ?? (() => Date.now());
    this.t0 = this.now();
    transport.onOpen(() => {
      this.connected = true;
    });
    transport.onClose(() => {
      this.connected = false;
      for (const w of this.waiters.splice(0)) {
        clearTimeout(w.timer);
        w.reject(new Error("connection closed while waiting"));
      }
    });
    transport.onLine((line, at) => this.handleLine(line, at));
  }

  /** Session-relative timestamp in seconds, stamped onto emitted events. */
  private ts(): number {
    return (this.now() - this.t0) / 1000;
  }

  private send(line: string): void {
    if (!this.connected) throw new NotConnectedError("not connected; action blocked");
    this.transport.send(line);
  }

  // ------------------------------------------------------------- gestures

  /** Snap a bracket down: four corner touchdowns at the type's nominal code. */
  placeBracket(type: BracketType, span: RectSpan): VirtualBracket {
    const corners = spanCorners(span);
    const lines = CORNER_ORDER.map((n) => cornerDownLine(this.ts(), corners[n], NOMINAL_OHMS[type]));
    lines.forEach((l) => this.send(l));
    const model: VirtualBracket = {
      localId: this.nextLocalId++,
      serverId: null,
      type,
      span,
      attached: new Set(CORNER_ORDER.map((n) => cellKey(corners[n]))),
      grabbed: null,
    };
    this.models.set(model.localId, model);
    return model;
  }

  /** One stray corner, for sloppy placements the engine should flag. */
  dropCorner(type: BracketType, cell: Cell): void {
    this.send(cornerDownLine(this.ts(), cell, NOMINAL_OHMS[type]));
    this.looseCorners.set(cellKey(cell), type);
  }

  liftCorner(cell: Cell): void {
    this.send(cornerUpLine(this.ts(), cell));
    this.looseCorners.delete(cellKey(cell));
  }

  /**
   * Drag one corner to a new cell. Lifts every corner the reshape moves,
   * then drops them at their new positions, well inside the engine's grace
   * window, so the engine sees an adjustment rather than a removal.
   */
  dragResize(bracket: VirtualBracket, corner: CornerName, cell: Cell): void {
    const next = resizeSpan(bracket.span, corner, cell);
    const { ups, downs } = cornerMoves(bracket.span, next);
    for (const c of ups) this.send(cornerUpLine(this.ts(), c));
    for (const c of downs) this.send(cornerDownLine(this.ts(), c, NOMINAL_OHMS[bracket.type]));
    for (const c of ups) bracket.attached.delete(cellKey(c));
    for (const c of downs) bracket.attached.add(cellKey(c));
    bracket.span = next;
    bracket.grabbed = null;
  }

  /** Lift all four corners; the engine answers with a removal event. */
  removeBracket(bracket: VirtualBracket): void {
    const corners = spanCorners(bracket.span);
    for (const n of CORNER_ORDER) this.send(cornerUpLine(this.ts(), corners[n]));
    bracket.attached.clear();
  }

  pressButton(kind: ButtonKind): void {
    this.send(buttonLine(this.ts(), kind));
  }

  setDiodeMode(mode: DiodeMode): void {
    this.send(setDiodeModeLine(this.ts(), mode));
  }

  setSeed(seed: number): void {
    this.send(setSeedLine(this.ts(), seed));
  }

  // ---------------------------------------------------------------- state

  brackets(): VirtualBracket[] {
    return [...this.models.values()].sort((a, b) => (a.serverId ?? 1e9) - (b.serverId ?? 1e9));
  }

  lastCaption(): Caption | null {
    return this.captions.length > 0 ? this.captions[this.captions.length - 1] : null;
  }

  /** Called after every notification has been folded into session state. */
  onNotification(cb: (n: Notification) => void): void {
    this.listeners.push(cb);
  }

  /** Model for a snapshot record, e.g. a bracket another client placed. */
  adoptBracket(rec: BracketRecord): VirtualBracket {
    for (const m of this.models.values()) {
      if (m.serverId === rec.id) return m;
    }
    const span: RectSpan = { top: rec.top, left: rec.left, bottom: rec.bottom, right: rec.right };
    const corners = spanCorners(span);
    const model: VirtualBracket = {
      localId: this.nextLocalId++,
      serverId: rec.id,
      type: rec.type,
      span,
      attached: new Set(CORNER_ORDER.map((n) => cellKey(corners[n]))),
      grabbed: null,
    };
    this.models.set(model.localId, model);
    return model;
  }

  /** Position in the notification log, for waitSince. */
  mark(): number {
    return this.log.length;
  }

  /**
   * Like waitFor, but first scans notifications already received at or
   * after log position `from`. One engine tick usually arrives as a single
   * chunk, so by the time a waiter for its utterance resolves, the same
   * tick's snapshot and html are in the log already; scanning from a mark
   * taken before the gesture makes waiting for them race-free.
   */
  waitSince(
    from: number,
    pred: (n: Notification) => boolean,
    timeoutMs = 5000,
  ): Promise<Notification> {
    for (let i = from; i < this.log.length; i++) {
      const n = this.log[i];
      if (pred(n)) return Promise.resolve(n);
    }
    return this.waitFor(pred, timeoutMs);
  }

  /** Resolves with the first notification matching `pred` from now on. */
  waitFor(pred: (n: Notification) => boolean, timeoutMs = 5000): Promise<Notification> {
    return new Promise((resolve, reject) => {
      const timer = setTimeout(() => {
        this.waiters = this.waiters.filter((w) => w.timer !== timer);
        const tail = this.log
          .slice(-3)
          .map((n) => n.kind)
          .join(", ");
        reject(new Error(`timed out after ${timeoutMs}ms; last notifications: ${tail || "none"}`));
      }, timeoutMs);
      this.waiters.push({ pred, resolve, reject, timer });
    });
  }

  private handleLine(line: string, receivedAtMs: number): void {
    const n = parseNotification(line);
    this.log.push(n);
    switch (n.kind) {
      case "utterance": {
        this.captions.push({
          tick: n.tick,
          text: n.text,
          estDurationS: n.est_duration_s,
          trigger: n.trigger,
          latencyMs: this.now() - receivedAtMs,
        });
        this.speech?.(n.text);
        break;
      }
      case "snapshot":
        this.snapshot = n.layout;
        this.snapshotJson = canonicalJson(n.layout);
        break;
      case "html":
        this.html = n.document;
        break;
      case "anomaly":
        this.anomalies.push(n);
        break;
      case "layout_event":
        this.applyLayoutEvent(n.event);
        break;
    }
    const ready = this.waiters.filter((w) => w.pred(n));
    this.waiters = this.waiters.filter((w) => !w.pred(n));
    for (const w of ready) {
      clearTimeout(w.timer);
      w.resolve(n);
    }
    for (const cb of this.listeners) cb(n);
  }

  private applyLayoutEvent(ev: LayoutEventPayload): void {
    if (ev.kind === "bracket_placed" && ev.span && ev.id !== undefined) {
      const span = spanFromList(ev.span);
      for (const m of this.models.values()) {
        if (m.serverId === null && sameSpan(m.span, span)) {
          m.serverId = ev.id;
          return;
        }
      }
      // assembled from loose corners (e.g. after a misalignment fix)
      const corners = spanCorners(span);
      const attached = new Set<string>();
      for (const name of CORNER_ORDER) {
        const key = cellKey(corners[name]);
        if (this.looseCorners.delete(key)) attached.add(key);
      }
      this.models.set(this.nextLocalId, {
        localId: this.nextLocalId++,
        serverId: ev.id,
        type: (ev.bracket_type ?? "text") as BracketType,
        span,
        attached,
        grabbed: null,
      });
    } else if ((ev.kind === "bracket_resized" || ev.kind === "bracket_moved") && ev.span) {
      const span = spanFromList(ev.span);
      for (const m of this.models.values()) {
        if (m.serverId === ev.id) m.span = span;
      }
    } else if (ev.kind === "bracket_removed") {
      for (const [key, m] of this.models) {
        if (m.serverId === ev.id) this.models.delete(key);
      }
    }
  }
}
