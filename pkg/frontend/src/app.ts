// Browser shell: a clickable virtual baseboard on the left, live captions
// and the engine-rendered page preview on the right. Connects to the board
// service through the WebSocket line bridge (bridge.mjs).

import {
  GestureError,
  resizeSpan,
  spanOfRecord,
  type CornerName,
  type RectSpan,
} from "./board.js";
import { COLS, ROWS, type BracketType, type Cell } from "./protocol.js";
import { UiSession } from "./session.js";
import { makeSpeaker } from "./speech.js";
import { WebSocketTransport } from "./transport.js";

const UI_CELL = 32; // screen pixels per connector cell

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
};

const urlInput = $<HTMLInputElement>("server-url");
const connectBtn = $<HTMLButtonElement>("connect");
const statusEl = $("status");
const gridEl = $("grid");
const captionsEl = $("captions");
const previewEl = $<HTMLIFrameElement>("preview");
const speechToggle = $<HTMLInputElement>("speech-toggle");
const messageEl = $("message");

let session: UiSession | null = null;
let armed: BracketType | null = null;

type Drag =
  | { mode: "place"; type: BracketType; anchor: Cell; current: Cell }
  | { mode: "resize"; serverId: number; corner: CornerName; current: Cell };
let drag: Drag | null = null;

function say(text: string): void {
  messageEl.textContent = text;
}

function cellFromMouse(ev: MouseEvent): Cell {
  const rect = gridEl.getBoundingClientRect();
  const col = Math.min(COLS - 1, Math.max(0, Math.floor((ev.clientX - rect.left) / UI_CELL)));
  const row = Math.min(ROWS - 1, Math.max(0, Math.floor((ev.clientY - rect.top) / UI_CELL)));
  return [row, col];
}

function dragSpan(a: Cell, b: Cell): RectSpan {
  return {
    top: Math.min(a[0], b[0]),
    left: Math.min(a[1], b[1]),
    bottom: Math.max(a[0], b[0]),
    right: Math.max(a[1], b[1]),
  };
}

function spanStyle(el: HTMLElement, span: RectSpan): void {
  el.style.left = `${span.left * UI_CELL}px`;
  el.style.top = `${span.top * UI_CELL}px`;
  el.style.width = `${(span.right - span.left + 1) * UI_CELL}px`;
  el.style.height = `${(span.bottom - span.top + 1) * UI_CELL}px`;
}

function render(): void {
  gridEl.querySelectorAll(".bracket, .ghost").forEach((n) => n.remove());
  const layout = session?.snapshot;
  if (layout) {
    for (const rec of layout.brackets) {
      const div = document.createElement("div");
      div.className = `bracket type-${rec.type}`;
      div.dataset.id = String(rec.id);
      spanStyle(div, spanOfRecord(rec));
      div.title = `${rec.type} #${rec.id} (double-click lifts it off)`;
      const label = document.createElement("span");
      label.textContent = `${rec.type} #${rec.id}`;
      div.appendChild(label);
      for (const corner of ["topLeft", "topRight", "bottomLeft", "bottomRight"] as const) {
        const h = document.createElement("div");
        h.className = `handle ${corner}`;
        h.dataset.corner = corner;
        h.dataset.id = String(rec.id);
        div.appendChild(h);
      }
      gridEl.appendChild(div);
    }
  }
  if (drag) {
    const d = drag;
    const ghost = document.createElement("div");
    ghost.className = "ghost";
    if (d.mode === "place") {
      spanStyle(ghost, dragSpan(d.anchor, d.current));
    } else {
      const rec = layout?.brackets.find((b) => b.id === d.serverId);
      if (rec) {
        try {
          spanStyle(ghost, resizeSpan(spanOfRecord(rec), d.corner, d.current));
        } catch {
          spanStyle(ghost, spanOfRecord(rec)); // invalid target, show the old shape
        }
      }
    }
    gridEl.appendChild(ghost);
  }
}

function renderCaptions(): void {
  if (!session) return;
  captionsEl.replaceChildren(
    ...session.captions
      .slice(-40)
      .reverse()
      .map((c) => {
        const li = document.createElement("li");
        li.textContent = c.text;
        li.title = `tick ${c.tick}, ~${c.estDurationS.toFixed(1)}s spoken`;
        return li;
      }),
  );
}

function connect(): void {
  const transport = new WebSocketTransport(urlInput.value);
  session = new UiSession(transport);
  transport.onOpen(() => {
    statusEl.textContent = "connected";
    statusEl.className = "ok";
  });
  transport.onClose(() => {
    statusEl.textContent = "disconnected";
    statusEl.className = "bad";
  });
  session.onNotification((n) => {
    if (n.kind === "snapshot") render();
    if (n.kind === "utterance") renderCaptions();
    if (n.kind === "html" && session?.html != null) {
      // the preview is the engine's document verbatim, never a local render
      previewEl.srcdoc = session.html;
    }
    if (n.kind === "anomaly") say(`anomaly: ${n.anomaly.reason} (${n.anomaly.detail})`);
  });
  speechToggle.onchange = () => {
    if (!session) return;
    session.speech = speechToggle.checked ? makeSpeaker() : null;
    if (speechToggle.checked && session.speech === null) {
      say("speech synthesis is not available in this browser");
      speechToggle.checked = false;
    }
  };
}

connectBtn.onclick = connect;

document.querySelectorAll<HTMLButtonElement>("#palette button").forEach((btn) => {
  btn.onclick = () => {
    armed = btn.dataset.type as BracketType;
    document
      .querySelectorAll("#palette button")
      .forEach((b) => b.classList.toggle("armed", b === btn));
    say(`drag on the board to place a ${armed} bracket (at least 2x2)`);
  };
});

gridEl.addEventListener("mousedown", (ev) => {
  if (!session?.connected) return;
  const target = ev.target as HTMLElement;
  if (target.classList.contains("handle")) {
    drag = {
      mode: "resize",
      serverId: Number(target.dataset.id),
      corner: target.dataset.corner as CornerName,
      current: cellFromMouse(ev),
    };
  } else if (armed && !target.closest(".bracket")) {
    const cell = cellFromMouse(ev);
    drag = { mode: "place", type: armed, anchor: cell, current: cell };
  }
  render();
  ev.preventDefault();
});

gridEl.addEventListener("mousemove", (ev) => {
  if (!drag) return;
  drag.current = cellFromMouse(ev);
  render();
});

window.addEventListener("mouseup", () => {
  if (!drag || !session) return;
  const done = drag;
  drag = null;
  try {
    if (done.mode === "place") {
      const span = dragSpan(done.anchor, done.current);
      session.placeBracket(done.type, span);
      say(`placed a ${done.type} bracket, waiting for the board to confirm`);
    } else {
      const rec = session.snapshot?.brackets.find((b) => b.id === done.serverId);
      if (rec) {
        session.dragResize(session.adoptBracket(rec), done.corner, done.current);
        say("adjusting...");
      }
    }
  } catch (e) {
    if (e instanceof GestureError) say(e.message);
    else throw e;
  }
  render();
});

gridEl.addEventListener("dblclick", (ev) => {
  if (!session?.connected) return;
  const el = (ev.target as HTMLElement).closest<HTMLElement>(".bracket");
  if (!el) return;
  const rec = session.snapshot?.brackets.find((b) => b.id === Number(el.dataset.id));
  if (rec) {
    session.removeBracket(session.adoptBracket(rec));
    say(`lifting ${rec.type} #${rec.id} off the board`);
  }
});

$("btn-repeat").onclick = () => session?.connected && session.pressButton("repeat_last");
$("btn-readall").onclick = () => session?.connected && session.pressButton("read_all");

// static grid lines
gridEl.style.width = `${COLS * UI_CELL}px`;
gridEl.style.height = `${ROWS * UI_CELL}px`;
gridEl.style.backgroundSize = `${UI_CELL}px ${UI_CELL}px`;
