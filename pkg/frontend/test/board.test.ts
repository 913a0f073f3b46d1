import { describe, expect, it } from "vitest";

import {
  GestureError,
  checkSpan,
  cornerMoves,
  resizeSpan,
  spanCorners,
  type RectSpan,
} from "../src/board.js";

const span = (top: number, left: number, bottom: number, right: number): RectSpan => ({
  top,
  left,
  bottom,
  right,
});

describe("spanCorners", () => {
  it("names the four corner cells", () => {
    expect(spanCorners(span(2, 3, 4, 6))).toEqual({
      topLeft: [2, 3],
      topRight: [2, 6],
      bottomLeft: [4, 3],
      bottomRight: [4, 6],
    });
  });
});

describe("checkSpan", () => {
  it("accepts the whole board and the 2x2 floor", () => {
    checkSpan(span(0, 0, 15, 11));
    checkSpan(span(14, 10, 15, 11));
  });

  it.each([
    ["1 row tall", span(3, 3, 3, 6)],
    ["1 col wide", span(3, 3, 6, 3)],
    ["inverted", span(4, 3, 2, 6)],
    ["below the grid", span(14, 0, 16, 2)],
    ["left of the grid", span(0, -1, 2, 2)],
  ])("rejects a span %s", (_name, bad) => {
    expect(() => checkSpan(bad)).toThrow(GestureError);
  });
});

describe("resizeSpan", () => {
  it("dragging bottomRight grows both dimensions", () => {
    expect(resizeSpan(span(2, 3, 4, 6), "bottomRight", [6, 8])).toEqual(span(2, 3, 6, 8));
  });

  it("dragging topLeft moves the opposite pair of edges", () => {
    expect(resizeSpan(span(2, 3, 4, 6), "topLeft", [0, 1])).toEqual(span(0, 1, 4, 6));
  });

  it("allows shrinking exactly to the 2x2 floor", () => {
    expect(resizeSpan(span(2, 3, 4, 6), "bottomRight", [3, 4])).toEqual(span(2, 3, 3, 4));
  });

  it("blocks shrinking past the floor and dragging through the bracket", () => {
    expect(() => resizeSpan(span(2, 3, 4, 6), "bottomRight", [2, 4])).toThrow(GestureError);
    expect(() => resizeSpan(span(2, 3, 4, 6), "topLeft", [4, 6])).toThrow(GestureError);
  });

  it("blocks dragging off the grid", () => {
    expect(() => resizeSpan(span(2, 3, 4, 6), "bottomRight", [16, 8])).toThrow(GestureError);
  });
});

describe("cornerMoves", () => {
  it("a two-axis resize moves three corners", () => {
    const { ups, downs } = cornerMoves(span(2, 3, 4, 6), span(2, 3, 6, 8));
    expect(ups).toEqual([
      [2, 6],
      [4, 3],
      [4, 6],
    ]);
    expect(downs).toEqual([
      [2, 8],
      [6, 3],
      [6, 8],
    ]);
  });

  it("a single-axis resize moves two corners", () => {
    const { ups, downs } = cornerMoves(span(2, 3, 4, 6), span(2, 3, 4, 9));
    expect(ups).toEqual([
      [2, 6],
      [4, 6],
    ]);
    expect(downs).toEqual([
      [2, 9],
      [4, 9],
    ]);
  });

  it("identical spans move nothing", () => {
    expect(cornerMoves(span(2, 3, 4, 6), span(2, 3, 4, 6))).toEqual({ ups: [], downs: [] });
  });

  it("two opposite-corner drags translate the bracket", () => {
    // drag bottomRight two columns over, then topLeft after it: the engine
    // sees two resizes, the net shape is the original translated by (0,2)
    const step1 = resizeSpan(span(2, 3, 4, 6), "bottomRight", [4, 8]);
    const step2 = resizeSpan(step1, "topLeft", [2, 5]);
    expect(step2).toEqual(span(2, 5, 4, 8));
  });
});
