import { describe, expect, it } from "vitest";

import { Canvas2DLike, paint, segmentCounts } from "../src/canvas";
import type { Drawlist, Primitive } from "../src/types";
import { ViewState } from "../src/view-state";

class RecordingContext implements Canvas2DLike {
  calls: string[] = [];
  strokeStyle = "";
  fillStyle = "";
  lineWidth = 1;
  globalAlpha = 1;

  clearRect() {
    this.calls.push("clearRect");
  }
  beginPath() {
    this.calls.push("beginPath");
  }
  moveTo() {
    this.calls.push("moveTo");
  }
  lineTo() {
    this.calls.push("lineTo");
  }
  arc() {
    this.calls.push("arc");
  }
  closePath() {
    this.calls.push("closePath");
  }
  stroke() {
    this.calls.push(`stroke:${this.strokeStyle}`);
  }
  fill() {
    this.calls.push(`fill:${this.fillStyle}`);
  }
  fillRect() {
    this.calls.push("fillRect");
  }
}

function polyline(caseId: number, label: string, points: [number, number][]): Primitive {
  return {
    kind: "polyline",
    role: "case-line",
    ref: caseId,
    label,
    stroke: "#ff0000",
    stroke_width: 1,
    opacity: 0.8,
    points,
  };
}

function drawlist(prims: Primitive[]): Drawlist {
  return { viewport: [0, 0, 10, 10], primitives: prims };
}

function freshView(): ViewState {
  const view = new ViewState();
  view.visibleClasses.add("A");
  view.visibleClasses.add("B");
  return view;
}

describe("paint", () => {
  it("draws every visible case", () => {
    const ctx = new RecordingContext();
    const list = drawlist([
      polyline(0, "A", [[0, 0], [1, 1]]),
      polyline(1, "B", [[0, 0], [2, 2]]),
    ]);
    const stats = paint(ctx, list, freshView(), { width: 100, height: 100 });
    expect(stats.casesDrawn).toBe(2);
    expect(ctx.calls.filter((c) => c.startsWith("stroke")).length).toBe(2);
  });

  it("class filter suppresses hidden classes", () => {
    const ctx = new RecordingContext();
    const view = freshView();
    view.toggleClass("B");
    const list = drawlist([
      polyline(0, "A", [[0, 0], [1, 1]]),
      polyline(1, "B", [[0, 0], [2, 2]]),
    ]);
    const stats = paint(ctx, list, view, { width: 100, height: 100 });
    expect(stats.casesDrawn).toBe(1);
    expect(stats.suppressedSkipped).toBe(1);
  });

  it("neighbor overlay draws exactly the neighbors, highlighted", () => {
    const ctx = new RecordingContext();
    const view = freshView();
    view.setNeighborOverlay("A", [1, 2, 3]);
    const list = drawlist(
      [0, 1, 2, 3, 4].map((id) => polyline(id, "A", [[0, 0], [id, id]])),
    );
    const stats = paint(ctx, list, view, { width: 100, height: 100 });
    expect(stats.neighborHighlights).toBe(3);
    expect(stats.casesDrawn).toBe(3);
    const strokes = ctx.calls.filter((c) => c.startsWith("stroke"));
    expect(strokes).toEqual([
      "stroke:#ff9900",
      "stroke:#ff9900",
      "stroke:#ff9900",
    ]);
  });

  it("suppressed primitives never reach the context", () => {
    const ctx = new RecordingContext();
    const view = freshView();
    view.toggleClass("A");
    paint(ctx, drawlist([polyline(0, "A", [[0, 0], [1, 1]])]), view, {
      width: 10,
      height: 10,
    });
    expect(ctx.calls.filter((c) => c !== "clearRect")).toEqual([]);
  });
});

describe("segmentCounts", () => {
  it("counts polyline segments per case", () => {
    const counts = segmentCounts(
      drawlist([
        polyline(0, "A", [[0, 0], [1, 1], [2, 2]]),
        polyline(1, "A", [[0, 0], [1, 1], [2, 2], [0, 0]]),
      ]),
    );
    expect(counts.get(0)).toBe(2);
    expect(counts.get(1)).toBe(3);
  });

  it("counts styled segments individually", () => {
    const seg: Primitive = {
      kind: "line",
      role: "case-segment",
      ref: 7,
      x1: 0,
      y1: 0,
      x2: 1,
      y2: 1,
      stroke: "#000000",
    };
    const counts = segmentCounts(drawlist([seg, { ...seg }, { ...seg }]));
    expect(counts.get(7)).toBe(3);
  });
});
