/** Gesture interpretation: pointer movements become axis patches.
 *
 * The only math here converts pointer positions into the angle delta a
 * drag represents; all resulting geometry comes back from the server.
 * Angles follow the server convention: clockwise from the north point.
 */

import type { AxisDto, AxisPatch } from "./types";

export const DEG = Math.PI / 180;

/** Angle of a point around a center, clockwise from north. */
export function pointerAngle(cx: number, cy: number, px: number, py: number): number {
  // screen y grows downward; north is straight up from the center
  return Math.atan2(px - cx, -(py - cy));
}

function wrapPi(angle: number): number {
  let a = angle % (2 * Math.PI);
  if (a > Math.PI) a -= 2 * Math.PI;
  if (a <= -Math.PI) a += 2 * Math.PI;
  return a;
}

/** Snap to whole degrees unless the modifier asks for free rotation. */
export function snapAngle(delta: number, free = false): number {
  if (free) return delta;
  return Math.round(delta / DEG) * DEG;
}

export interface DragRotate {
  axis: AxisDto;
  centerX: number;
  centerY: number;
  startX: number;
  startY: number;
}

/** Patch for a completed drag-rotate gesture. */
export function dragRotatePatch(
  drag: DragRotate,
  endX: number,
  endY: number,
  free = false,
): AxisPatch {
  const start = pointerAngle(drag.centerX, drag.centerY, drag.startX, drag.startY);
  const end = pointerAngle(drag.centerX, drag.centerY, endX, endY);
  const delta = snapAngle(wrapPi(end - start), free);
  return { position: drag.axis.position, rotation: drag.axis.rotation + delta };
}

/** Patch toggling one axis's direction between clockwise and counter. */
export function reverseTogglePatch(axis: AxisDto): AxisPatch {
  return { position: axis.position, direction: axis.direction === 1 ? -1 : 1 };
}

/** Radius slider: absolute radius for one axis. */
export function radiusPatch(axis: AxisDto, radius: number): AxisPatch {
  return { position: axis.position, radius };
}

/** Span slider: fraction of the circumference in (0, 1]. */
export function spanPatch(axis: AxisDto, span: number): AxisPatch {
  return { position: axis.position, span };
}

/** Reorder by dragging ring `from` onto ring `to`; returns the new
 * attribute order, innermost first. */
export function reorderAfterDrag(axes: AxisDto[], from: number, to: number): number[] {
  const byPosition = [...axes].sort((a, b) => a.position - b.position);
  const attrs = byPosition.map((a) => a.attr);
  const [moved] = attrs.splice(from, 1);
  attrs.splice(to, 0, moved);
  return attrs;
}

/** Find the ring whose circle passes nearest to a world point; used to
 * decide which axis a drag grabs.  Returns its position or null. */
export function hitTestRing(
  axes: AxisDto[],
  centerX: number,
  centerY: number,
  wx: number,
  wy: number,
  tolerance: number,
): number | null {
  const distance = Math.hypot(wx - centerX, wy - centerY);
  let best: { position: number; miss: number } | null = null;
  for (const axis of axes) {
    const miss = Math.abs(distance - axis.radius);
    if (miss <= tolerance && (best === null || miss < best.miss)) {
      best = { position: axis.position, miss };
    }
  }
  return best ? best.position : null;
}
