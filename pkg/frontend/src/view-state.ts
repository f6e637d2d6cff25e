/** Client-side view state: a mirror of the server revision plus purely
 * presentational state (selection, class filter, viewport, overlays).
 *
 * Invariants: the rendered drawlist's revision never exceeds the server
 * revision we have seen, and a pending axis edit is either committed in
 * one request or discarded, never partially applied. */

import type { GeometryResponse, OrMetrics } from "./types";

export interface Viewport {
  x: number;
  y: number;
  scale: number; // canvas pixels per world unit
}

export class ViewState {
  revision = -1;
  geometry: GeometryResponse | null = null;
  selectedCaseIds = new Set<number>();
  visibleClasses = new Set<string>();
  neighborIds: number[] = [];
  neighborPrediction: string | null = null;
  orMetrics: OrMetrics | null = null;
  orActive = false;
  viewport: Viewport = { x: 0, y: 0, scale: 80 };

  /** Adopt a fresh server document; stale documents are ignored. */
  adopt(geometry: GeometryResponse): boolean {
    if (geometry.revision < this.revision) return false;
    this.revision = geometry.revision;
    this.geometry = geometry;
    if (this.visibleClasses.size === 0) {
      for (const cls of geometry.classes) this.visibleClasses.add(cls.label);
    }
    return true;
  }

  toggleClass(label: string): void {
    if (this.visibleClasses.has(label)) this.visibleClasses.delete(label);
    else this.visibleClasses.add(label);
  }

  setNeighborOverlay(prediction: string, neighborIds: number[]): void {
    this.neighborPrediction = prediction;
    this.neighborIds = [...neighborIds];
  }

  clearNeighborOverlay(): void {
    this.neighborPrediction = null;
    this.neighborIds = [];
  }

  /** Pan/zoom is the only transform the client applies to geometry. */
  worldToScreen(x: number, y: number): [number, number] {
    return [(x - this.viewport.x) * this.viewport.scale, (y - this.viewport.y) * this.viewport.scale];
  }

  screenToWorld(px: number, py: number): [number, number] {
    return [px / this.viewport.scale + this.viewport.x, py / this.viewport.scale + this.viewport.y];
  }

  zoomBy(factor: number, anchorPx: number, anchorPy: number): void {
    const [wx, wy] = this.screenToWorld(anchorPx, anchorPy);
    this.viewport.scale *= factor;
    this.viewport.x = wx - anchorPx / this.viewport.scale;
    this.viewport.y = wy - anchorPy / this.viewport.scale;
  }

  panBy(dxPx: number, dyPx: number): void {
    this.viewport.x -= dxPx / this.viewport.scale;
    this.viewport.y -= dyPx / this.viewport.scale;
  }
}
