/** Drawlist painter.
 *
 * Consumes the server's primitive stream verbatim and applies only the
 * viewport transform; every coordinate, angle and radius was computed
 * server-side.  The 2D context is abstracted behind the subset of
 * methods used, so tests can run against a recording fake.
 */

import type { Drawlist, Primitive } from "./types";
import type { ViewState } from "./view-state";

export interface Canvas2DLike {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  closePath(): void;
  stroke(): void;
  fill(): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  globalAlpha: number;
}

export const HIGHLIGHT_NEIGHBOR = "#ff9900";

export interface PaintOptions {
  width: number;
  height: number;
}

export interface PaintStats {
  casesDrawn: number;
  neighborHighlights: number;
  suppressedSkipped: number;
}

function caseLabelOf(prim: Primitive): string | undefined {
  return prim.label;
}

export function paint(
  ctx: Canvas2DLike,
  drawlist: Drawlist,
  view: ViewState,
  options: PaintOptions,
): PaintStats {
  const stats: PaintStats = { casesDrawn: 0, neighborHighlights: 0, suppressedSkipped: 0 };
  ctx.clearRect(0, 0, options.width, options.height);
  const neighborSet = new Set(view.neighborIds);
  const overlayActive = view.neighborPrediction !== null;

  for (const prim of drawlist.primitives) {
    if (prim.kind === "rect") {
      ctx.fillStyle = prim.fill ?? "#ffffff";
      ctx.globalAlpha = 1;
      ctx.fillRect(0, 0, options.width, options.height);
      continue;
    }
    const isCase = prim.role === "case-line" || prim.role === "case-segment";
    const isVertex = prim.role === "vertex-dot";
    if (isCase || isVertex) {
      const caseId = typeof prim.ref === "number" ? prim.ref : Number(prim.ref);
      const label = caseLabelOf(prim);
      const isNeighbor = neighborSet.has(caseId);
      if (label && view.visibleClasses.size && !view.visibleClasses.has(label) && !isNeighbor) {
        stats.suppressedSkipped += 1;
        continue;
      }
      if (overlayActive && !isNeighbor && prim.stroke !== "#ffff00") {
        // the overlay suppresses everything except neighbors and the
        // already-highlighted (straightened/mean) cases
        stats.suppressedSkipped += 1;
        continue;
      }
      if (isCase) {
        stats.casesDrawn += 1;
        if (isNeighbor) stats.neighborHighlights += 1;
      }
    }
    drawPrimitive(ctx, prim, view, neighborSet);
  }
  return stats;
}

function drawPrimitive(
  ctx: Canvas2DLike,
  prim: Primitive,
  view: ViewState,
  neighborSet: Set<number>,
): void {
  const scale = view.viewport.scale;
  const stroke =
    typeof prim.ref === "number" && neighborSet.has(prim.ref) && prim.role !== "ring"
      ? HIGHLIGHT_NEIGHBOR
      : prim.stroke ?? null;
  ctx.globalAlpha = prim.opacity ?? 1;
  ctx.lineWidth = (prim.stroke_width ?? 1) * 0.02 * scale;

  switch (prim.kind) {
    case "circle": {
      const [cx, cy] = view.worldToScreen(prim.cx!, prim.cy!);
      ctx.beginPath();
      ctx.arc(cx, cy, prim.r! * scale, 0, 2 * Math.PI);
      if (prim.fill) {
        ctx.fillStyle = prim.fill;
        ctx.fill();
      }
      if (stroke) {
        ctx.strokeStyle = stroke;
        ctx.stroke();
      }
      break;
    }
    case "line": {
      const [x1, y1] = view.worldToScreen(prim.x1!, prim.y1!);
      const [x2, y2] = view.worldToScreen(prim.x2!, prim.y2!);
      ctx.beginPath();
      ctx.moveTo(x1, y1);
      ctx.lineTo(x2, y2);
      if (stroke) {
        ctx.strokeStyle = stroke;
        ctx.stroke();
      }
      break;
    }
    case "polyline":
    case "polygon": {
      const points = prim.points ?? [];
      if (points.length === 0) break;
      ctx.beginPath();
      const [x0, y0] = view.worldToScreen(points[0][0], points[0][1]);
      ctx.moveTo(x0, y0);
      for (let i = 1; i < points.length; i++) {
        const [x, y] = view.worldToScreen(points[i][0], points[i][1]);
        ctx.lineTo(x, y);
      }
      if (prim.kind === "polygon") ctx.closePath();
      if (stroke) {
        ctx.strokeStyle = stroke;
        ctx.stroke();
      }
      break;
    }
    case "arc": {
      const [cx, cy] = view.worldToScreen(prim.cx!, prim.cy!);
      // server angles are clockwise from north; canvas arcs run from the
      // +x axis, so shift by -pi/2
      const a0 = prim.theta1! - Math.PI / 2;
      const a1 = prim.theta2! - Math.PI / 2;
      ctx.beginPath();
      ctx.arc(cx, cy, prim.r! * scale, Math.min(a0, a1), Math.max(a0, a1));
      if (stroke) {
        ctx.strokeStyle = stroke;
        ctx.stroke();
      }
      break;
    }
    default:
      break;
  }
}

/** Per-case segment counts from the drawlist (used by tests and the
 * status bar; counting is bookkeeping, not geometry). */
export function segmentCounts(drawlist: Drawlist): Map<number, number> {
  const counts = new Map<number, number>();
  for (const prim of drawlist.primitives) {
    const caseId = typeof prim.ref === "number" ? prim.ref : Number(prim.ref);
    if (prim.role === "case-line" && prim.points) {
      counts.set(caseId, (counts.get(caseId) ?? 0) + prim.points.length - 1);
    } else if (prim.role === "case-segment") {
      counts.set(caseId, (counts.get(caseId) ?? 0) + 1);
    }
  }
  return counts;
}
