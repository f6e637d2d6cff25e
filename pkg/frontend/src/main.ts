/** Browser bootstrap: canvas, toolbar, and pointer wiring. */

import { ApiClient } from "./api";
import { paint, segmentCounts } from "./canvas";
import { SessionController } from "./controller";
import {
  DragRotate,
  dragRotatePatch,
  hitTestRing,
  radiusPatch,
  reorderAfterDrag,
  reverseTogglePatch,
  spanPatch,
} from "./gestures";
import { NEIGHBOR_K_CHOICES } from "./types";
import { ViewState } from "./view-state";

const view = new ViewState();
const api = new ApiClient("");
const controller = new SessionController(api, view);

const canvas = document.getElementById("plot") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const status = document.getElementById("status")!;

function repaint(): void {
  const geometry = view.geometry;
  if (!geometry) return;
  const stats = paint(ctx, geometry.drawlist, view, {
    width: canvas.width,
    height: canvas.height,
  });
  const metrics = view.orMetrics
    ? ` | segments ${view.orMetrics.segments_before} -> ${view.orMetrics.segments_after}`
    : "";
  const segments = segmentCounts(geometry.drawlist);
  const total = [...segments.values()].reduce((a, b) => a + b, 0);
  status.textContent =
    `revision ${view.revision} | ${stats.casesDrawn} cases drawn, ` +
    `${total} segments${metrics}`;
}

async function refreshAndPaint(): Promise<void> {
  await controller.refresh();
  repaint();
}

// --- pointer handling -------------------------------------------------

let drag: DragRotate | null = null;
let panning: { x: number; y: number } | null = null;

canvas.addEventListener("pointerdown", (ev) => {
  const geometry = view.geometry;
  if (!geometry) return;
  const [wx, wy] = view.screenToWorld(ev.offsetX, ev.offsetY);
  const [cx, cy] = geometry.layout.center;
  const position = hitTestRing(geometry.axes, cx, cy, wx, wy, 0.25);
  if (position !== null && !ev.shiftKey) {
    const axis = geometry.axes.find((a) => a.position === position)!;
    const [scx, scy] = view.worldToScreen(cx, cy);
    drag = { axis, centerX: scx, centerY: scy, startX: ev.offsetX, startY: ev.offsetY };
  } else {
    panning = { x: ev.offsetX, y: ev.offsetY };
  }
});

canvas.addEventListener("pointermove", (ev) => {
  if (panning) {
    view.panBy(ev.offsetX - panning.x, ev.offsetY - panning.y);
    panning = { x: ev.offsetX, y: ev.offsetY };
    repaint();
  }
});

canvas.addEventListener("pointerup", async (ev) => {
  if (drag) {
    const patch = dragRotatePatch(drag, ev.offsetX, ev.offsetY, ev.altKey);
    drag = null;
    const outcome = await controller.commitAxes({ patches: [patch] });
    if (outcome === "stale-retry") {
      status.textContent = "view was stale; refreshed, drag again to apply";
    }
    repaint();
  }
  panning = null;
});

canvas.addEventListener("wheel", (ev) => {
  ev.preventDefault();
  view.zoomBy(ev.deltaY < 0 ? 1.1 : 1 / 1.1, ev.offsetX, ev.offsetY);
  repaint();
});

canvas.addEventListener("dblclick", (ev) => {
  // select the nearest case vertex
  const geometry = view.geometry;
  if (!geometry) return;
  const [wx, wy] = view.screenToWorld(ev.offsetX, ev.offsetY);
  let best: { id: number; d: number } | null = null;
  for (const prim of geometry.drawlist.primitives) {
    if (prim.role !== "vertex-dot" || typeof prim.ref !== "number") continue;
    const d = Math.hypot(prim.cx! - wx, prim.cy! - wy);
    if (best === null || d < best.d) best = { id: prim.ref, d };
  }
  if (best) {
    view.selectedCaseIds.clear();
    view.selectedCaseIds.add(best.id);
    status.textContent = `selected case ${best.id}`;
  }
});

// --- toolbar ----------------------------------------------------------

function button(id: string, handler: () => void | Promise<void>): void {
  document.getElementById(id)?.addEventListener("click", () => {
    Promise.resolve(handler())
      .then(repaint)
      .catch((err) => (status.textContent = String(err)));
  });
}

button("load", async () => {
  const input = document.getElementById("file") as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) throw new Error("choose a CSV file first");
  await api.loadDatasetCsv(await file.text());
  view.revision = -1;
  view.visibleClasses.clear();
  await controller.refresh();
  rebuildClassFilter();
});

function ringAt(position: number) {
  const axis = view.geometry?.axes.find((a) => a.position === position);
  if (!axis) throw new Error(`no ring at position ${position}`);
  return axis;
}

function selectedRing() {
  return ringAt(Number((document.getElementById("ring-pos") as HTMLInputElement).value));
}

button("closed", () => controller.toggleClosedContour().then(() => undefined));
button("reverse", async () => {
  await controller.commitAxes({ patches: [reverseTogglePatch(selectedRing())] });
});
button("apply-radius", async () => {
  const radius = Number((document.getElementById("ring-radius") as HTMLInputElement).value);
  await controller.commitAxes({ patches: [radiusPatch(selectedRing(), radius)] });
});
button("apply-span", async () => {
  const span = Number((document.getElementById("ring-span") as HTMLInputElement).value);
  await controller.commitAxes({ patches: [spanPatch(selectedRing(), span)] });
});
button("move-ring", async () => {
  const from = Number((document.getElementById("ring-pos") as HTMLInputElement).value);
  const to = Number((document.getElementById("ring-to") as HTMLInputElement).value);
  const order = reorderAfterDrag(view.geometry!.axes, from, to);
  await controller.commitAxes({ order });
});
button("straighten", () => controller.straightenSelected("rotation").then(() => undefined));
button("straighten-radius", () => controller.straightenSelected("radius").then(() => undefined));
button("mean-case", async () => {
  const label = (document.getElementById("class-name") as HTMLInputElement).value;
  const id = await controller.insertMeanCase(label);
  view.selectedCaseIds.clear();
  view.selectedCaseIds.add(id);
});
button("neighbors", async () => {
  const [caseId] = view.selectedCaseIds;
  if (caseId === undefined) throw new Error("double-click a case first");
  const k = Number((document.getElementById("k-choice") as HTMLSelectElement).value);
  await controller.neighborOverlay(caseId, k);
});
button("clear-neighbors", () => view.clearNeighborOverlay());
button("or-toggle", () => controller.toggleOcclusionRemoval(100));
button("export-svg", async () => {
  const svg = await controller.exportSvg();
  const blob = new Blob([svg], { type: "image/svg+xml" });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = "concentric.svg";
  a.click();
});

function populateKChoices(): void {
  const select = document.getElementById("k-choice") as HTMLSelectElement;
  for (const k of NEIGHBOR_K_CHOICES) {
    const option = document.createElement("option");
    option.value = String(k);
    option.textContent = `k = ${k}`;
    if (k === 3) option.selected = true;
    select.appendChild(option);
  }
}

/** One toggle button per class; every class starts visible. */
function rebuildClassFilter(): void {
  const host = document.getElementById("class-filter")!;
  host.innerHTML = "";
  for (const cls of view.geometry?.classes ?? []) {
    const toggle = document.createElement("button");
    toggle.textContent = cls.label;
    toggle.style.borderBottom = `3px solid ${cls.color}`;
    toggle.style.opacity = view.visibleClasses.has(cls.label) ? "1" : "0.4";
    toggle.onclick = () => {
      view.toggleClass(cls.label);
      rebuildClassFilter();
      repaint();
    };
    host.appendChild(toggle);
  }
}

populateKChoices();
refreshAndPaint()
  .then(rebuildClassFilter)
  .catch(() => {
    status.textContent = "no dataset loaded yet; upload a CSV to begin";
  });
