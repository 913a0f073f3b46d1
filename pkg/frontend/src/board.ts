/**
 * Virtual bracket geometry and gesture decomposition.
 *
 * A gesture never talks to the engine in semantic terms. Placing is four
 * corner touchdowns, resizing lifts the corners that move and drops them at
 * their new cells, removal lifts everything. The engine has to reconstruct
 * the rectangle from raw contacts exactly as it would for the real board.
 */

import { COLS, ROWS, type BracketType, type Cell } from "./protocol.js";

export interface RectSpan {
  top: number;
  left: number;
  bottom: number;
  right: number;
}

export type CornerName = "topLeft" | "topRight" | "bottomLeft" | "bottomRight";

export const CORNER_ORDER: readonly CornerName[] = [
  "topLeft",
  "topRight",
  "bottomLeft",
  "bottomRight",
];

export class GestureError extends Error {}

/** Bounds plus the physical floor: a bracket spans at least 2x2 connectors. */
export function checkSpan(span: RectSpan): void {
  const { top, left, bottom, right } = span;
  for (const v of [top, left, bottom, right]) {
    if (!Number.isInteger(v)) throw new GestureError(`span values must be integers: ${JSON.stringify(span)}`);
  }
  if (top < 0 || left < 0 || bottom >= ROWS || right >= COLS) {
    throw new GestureError(`span ${JSON.stringify(span)} leaves the ${ROWS}x${COLS} grid`);
  }
  if (bottom < top + 1 || right < left + 1) {
    throw new GestureError(`span ${JSON.stringify(span)} is smaller than the 2x2 minimum`);
  }
}

export function spanCorners(span: RectSpan): Record<CornerName, Cell> {
  return {
    topLeft: [span.top, span.left],
    topRight: [span.top, span.right],
    bottomLeft: [span.bottom, span.left],
    bottomRight: [span.bottom, span.right],
  };
}

/** The span after dragging one corner to a new cell. Throws when the drag
 * would invert the rectangle, shrink it below 2x2, or leave the grid. */
export function resizeSpan(span: RectSpan, corner: CornerName, cell: Cell): RectSpan {
  const [row, col] = cell;
  const next = { ...span };
  if (corner === "topLeft" || corner === "topRight") next.top = row;
  else next.bottom = row;
  if (corner === "topLeft" || corner === "bottomLeft") next.left = col;
  else next.right = col;
  checkSpan(next);
  return next;
}

export const cellKey = (cell: Cell): string => `${cell[0]},${cell[1]}`;

/** Corner cells to lift and to drop when a span changes shape. Unchanged
 * corners stay put and appear in neither list. */
export function cornerMoves(before: RectSpan, after: RectSpan): { ups: Cell[]; downs: Cell[] } {
  const old = CORNER_ORDER.map((n) => spanCorners(before)[n]);
  const now = CORNER_ORDER.map((n) => spanCorners(after)[n]);
  const oldKeys = new Set(old.map(cellKey));
  const nowKeys = new Set(now.map(cellKey));
  return {
    ups: old.filter((c) => !nowKeys.has(cellKey(c))),
    downs: now.filter((c) => !oldKeys.has(cellKey(c))),
  };
}

/**
 * Client-side model of one bracket. `span` follows the latest server event
 * (placements and resizes echo back through layout events), `attached`
 * tracks which corner cells this client currently holds down, `grabbed` is
 * UI drag state.
 */
export interface VirtualBracket {
  localId: number;
  serverId: number | null;
  type: BracketType;
  span: RectSpan;
  attached: Set<string>;
  grabbed: CornerName | null;
}

export function sameSpan(a: RectSpan, b: RectSpan): boolean {
  return a.top === b.top && a.left === b.left && a.bottom === b.bottom && a.right === b.right;
}

export function spanOfRecord(rec: { top: number; left: number; bottom: number; right: number }): RectSpan {
  return { top: rec.top, left: rec.left, bottom: rec.bottom, right: rec.right };
}
