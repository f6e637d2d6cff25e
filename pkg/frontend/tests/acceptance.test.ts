/** Contract tests against the live analysis server.
 *
 * These are the front-end acceptance checks: the drag-rotate patch, the
 * closed-contour segment delta, the neighbor overlay count, and the
 * occlusion-removal metric shown in the UI all have to agree with what
 * the server reports.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { Canvas2DLike, paint, segmentCounts } from "../src/canvas";
import { SessionController } from "../src/controller";
import { DEG, dragRotatePatch } from "../src/gestures";
import { ViewState } from "../src/view-state";
import { RunningServer, irisCsv, startServer } from "./server";

const PORT = 8471;

let server: RunningServer;
let api: ApiClient;
let view: ViewState;
let controller: SessionController;

class NullContext implements Canvas2DLike {
  strokeStyle = "";
  fillStyle = "";
  lineWidth = 1;
  globalAlpha = 1;
  clearRect() {}
  beginPath() {}
  moveTo() {}
  lineTo() {}
  arc() {}
  closePath() {}
  stroke() {}
  fill() {}
  fillRect() {}
}

beforeAll(async () => {
  server = await startServer(PORT);
  api = new ApiClient(server.baseUrl);
  view = new ViewState();
  controller = new SessionController(api, view);
  await api.loadDatasetCsv(irisCsv(), "species");
  await controller.refresh();
}, 60_000);

afterAll(() => {
  server?.stop();
});

describe("drag-rotate", () => {
  it("a 90-degree drag commits a rotation delta of pi/2 within the snap", async () => {
    const axis = view.geometry!.axes.find((a) => a.position === 1)!;
    const before = axis.rotation;
    const [cx, cy] = view.geometry!.layout.center;
    const [scx, scy] = view.worldToScreen(cx, cy);
    // start at the ring's north point, end due east, slightly noisy
    const radiusPx = axis.radius * view.viewport.scale;
    const patch = dragRotatePatch(
      { axis, centerX: scx, centerY: scy, startX: scx + 0.7, startY: scy - radiusPx },
      scx + radiusPx,
      scy + 0.9,
    );
    const outcome = await controller.commitAxes({ patches: [patch] });
    expect(outcome).toBe("applied");
    const after = view.geometry!.axes.find((a) => a.position === 1)!.rotation;
    expect(Math.abs(after - before - Math.PI / 2)).toBeLessThanOrEqual(DEG + 1e-9);
  });

  it("a stale revision is refetched, not merged", async () => {
    const staleRevision = view.revision;
    await controller.commitAxes({ patches: [{ position: 0, rotation: 0.1 }] });
    const outcome = await controller.commitAxes({
      revision: staleRevision, // deliberately behind
      patches: [{ position: 0, rotation: 0.2 }],
    });
    expect(outcome).toBe("stale-retry");
    expect(view.geometry!.axes.find((a) => a.position === 0)!.rotation).toBeCloseTo(0.1, 12);
  });
});

describe("closed-contour toggle", () => {
  it("changes every case's segment count by exactly one", async () => {
    const before = segmentCounts(view.geometry!.drawlist);
    const wasClosed = view.geometry!.layout.closed;
    await controller.toggleClosedContour();
    const after = segmentCounts(view.geometry!.drawlist);
    expect(after.size).toBe(before.size);
    for (const [caseId, count] of before) {
      expect(after.get(caseId)).toBe(count + (wasClosed ? -1 : 1));
    }
    await controller.toggleClosedContour(); // restore
  });
});

describe("neighbor overlay", () => {
  it("k = 3 highlights exactly 3 polylines", async () => {
    const neighbors = await controller.neighborOverlay(0, 3);
    expect(neighbors).toHaveLength(3);
    const stats = paint(new NullContext(), view.geometry!.drawlist, view, {
      width: 1200,
      height: 800,
    });
    expect(stats.neighborHighlights).toBe(3);
    expect(stats.casesDrawn).toBe(3);
    view.clearNeighborOverlay();
  });

  it("rejects k outside the offered set", async () => {
    await expect(controller.neighborOverlay(0, 4)).rejects.toThrow(/k must be one of/);
  });
});

describe("occlusion removal toggle", () => {
  it("the displayed metric equals the server's", async () => {
    await controller.toggleOcclusionRemoval(100, 3);
    expect(view.orActive).toBe(true);
    const displayed = view.orMetrics!;
    expect(displayed.segments_after).toBeLessThan(displayed.segments_before);
    const geometry = await api.geometry();
    expect(geometry.metrics.segments_before).toBe(displayed.segments_before);
    expect(geometry.metrics.segments_after).toBe(displayed.segments_after);
    // the drawlist reflects the suppression: polylines drop out
    const lines = geometry.drawlist.primitives.filter((p) => p.role === "case-line");
    expect(lines.length).toBe(150 - displayed.suppressed_case_ids.length);
    await controller.toggleOcclusionRemoval(); // back to the full plot
    expect(view.orActive).toBe(false);
    expect(view.orMetrics).toBeNull();
  });
});

describe("case tools", () => {
  it("straighten renders the selected case collinear through the center", async () => {
    view.selectedCaseIds.clear();
    view.selectedCaseIds.add(3);
    await controller.straightenSelected("rotation");
    const poly = view.geometry!.drawlist.primitives.find(
      (p) => p.role === "case-line" && p.ref === 3,
    )!;
    const [cx, cy] = view.geometry!.layout.center;
    // collinearity of the SERVER-drawn points: cross products vanish
    for (const [x, y] of poly.points!) {
      const [x0, y0] = poly.points![poly.points!.length - 1];
      const cross = (x - cx) * (y0 - cy) - (y - cy) * (x0 - cx);
      expect(Math.abs(cross)).toBeLessThan(1e-9);
    }
    expect(poly.stroke).toBe("#ffff00"); // straightened case is highlighted
  });

  it("mean case arrives from the server and is selectable", async () => {
    const id = await controller.insertMeanCase("setosa");
    expect(id).toBeGreaterThanOrEqual(150);
    const lines = view.geometry!.drawlist.primitives.filter(
      (p) => p.role === "case-line",
    );
    expect(lines.some((p) => p.ref === id)).toBe(true);
  });

  it("SVG export streams the server's bytes", async () => {
    const svg = await controller.exportSvg();
    expect(svg.startsWith("<?xml")).toBe(true);
    expect(svg).toContain("case-line");
  });
});
