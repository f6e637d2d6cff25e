import { describe, expect, it } from "vitest";

import type { GeometryResponse } from "../src/types";
import { ViewState } from "../src/view-state";

function geometry(revision: number): GeometryResponse {
  return {
    revision,
    axes: [],
    layout: {
      mode: "concentric",
      center: [0, 0],
      closed: false,
      axis_centers: null,
      z_step: 1,
      radius_factor: 1,
    },
    classes: [
      { label: "A", color: "#ff0000" },
      { label: "B", color: "#00aa00" },
    ],
    metrics: {},
    drawlist: { viewport: [0, 0, 1, 1], primitives: [] },
  };
}

describe("ViewState.adopt", () => {
  it("never lets the rendered revision run ahead of the server", () => {
    const view = new ViewState();
    expect(view.adopt(geometry(3))).toBe(true);
    expect(view.revision).toBe(3);
    expect(view.adopt(geometry(2))).toBe(false); // stale document ignored
    expect(view.revision).toBe(3);
    expect(view.adopt(geometry(4))).toBe(true);
  });

  it("initializes the class filter once", () => {
    const view = new ViewState();
    view.adopt(geometry(1));
    expect([...view.visibleClasses].sort()).toEqual(["A", "B"]);
    view.toggleClass("A");
    view.adopt(geometry(2));
    expect([...view.visibleClasses]).toEqual(["B"]);
  });
});

describe("viewport transform", () => {
  it("round-trips screen and world coordinates", () => {
    const view = new ViewState();
    view.viewport = { x: -3, y: 2, scale: 50 };
    const [px, py] = view.worldToScreen(1.25, -0.75);
    const [wx, wy] = view.screenToWorld(px, py);
    expect(wx).toBeCloseTo(1.25, 12);
    expect(wy).toBeCloseTo(-0.75, 12);
  });

  it("zoom keeps the anchor point fixed", () => {
    const view = new ViewState();
    view.viewport = { x: 0, y: 0, scale: 80 };
    const before = view.screenToWorld(200, 150);
    view.zoomBy(1.5, 200, 150);
    const after = view.screenToWorld(200, 150);
    expect(after[0]).toBeCloseTo(before[0], 10);
    expect(after[1]).toBeCloseTo(before[1], 10);
  });
});

describe("neighbor overlay state", () => {
  it("sets and clears atomically", () => {
    const view = new ViewState();
    view.setNeighborOverlay("A", [1, 2, 3]);
    expect(view.neighborPrediction).toBe("A");
    expect(view.neighborIds).toEqual([1, 2, 3]);
    view.clearNeighborOverlay();
    expect(view.neighborPrediction).toBeNull();
    expect(view.neighborIds).toEqual([]);
  });
});
