import { describe, expect, it } from "vitest";

import {
  DEG,
  dragRotatePatch,
  hitTestRing,
  pointerAngle,
  reorderAfterDrag,
  reverseTogglePatch,
  snapAngle,
} from "../src/gestures";
import type { AxisDto } from "../src/types";

function axis(position: number, rotation = 0, direction: 1 | -1 = 1): AxisDto {
  return {
    attr: position,
    position,
    radius: position + 1,
    rotation,
    direction,
    span: 1,
    arc_valued: false,
  };
}

describe("pointerAngle", () => {
  it("is zero at north and grows clockwise", () => {
    expect(pointerAngle(0, 0, 0, -5)).toBeCloseTo(0, 12);
    expect(pointerAngle(0, 0, 5, 0)).toBeCloseTo(Math.PI / 2, 12);
    expect(pointerAngle(0, 0, 0, 5)).toBeCloseTo(Math.PI, 12);
    expect(pointerAngle(0, 0, -5, 0)).toBeCloseTo(-Math.PI / 2, 12);
  });
});

describe("snapAngle", () => {
  it("snaps to whole degrees", () => {
    expect(snapAngle(89.6 * DEG)).toBeCloseTo(90 * DEG, 12);
    expect(snapAngle(0.4 * DEG)).toBeCloseTo(0, 12);
  });

  it("free rotation skips the snap", () => {
    expect(snapAngle(89.6 * DEG, true)).toBeCloseTo(89.6 * DEG, 12);
  });
});

describe("dragRotatePatch", () => {
  it("a quarter-turn drag yields a delta of pi/2 within the snap", () => {
    const patch = dragRotatePatch(
      { axis: axis(1, 0.25), centerX: 100, centerY: 100, startX: 100, startY: 40 },
      160, // a hair past due east to exercise the snap
      100.5,
    );
    expect(patch.position).toBe(1);
    const delta = (patch.rotation ?? 0) - 0.25;
    expect(Math.abs(delta - Math.PI / 2)).toBeLessThanOrEqual(DEG + 1e-12);
    expect(delta / DEG).toBeCloseTo(Math.round(delta / DEG), 9); // snapped
  });

  it("wraps across the seam instead of spinning the long way", () => {
    const patch = dragRotatePatch(
      { axis: axis(0), centerX: 0, centerY: 0, startX: -1, startY: -100 },
      1,
      -100,
    );
    expect(Math.abs(patch.rotation ?? 1)).toBeLessThan(2 * DEG);
  });
});

describe("reverseTogglePatch", () => {
  it("flips the direction", () => {
    expect(reverseTogglePatch(axis(2, 0, 1)).direction).toBe(-1);
    expect(reverseTogglePatch(axis(2, 0, -1)).direction).toBe(1);
  });
});

describe("reorderAfterDrag", () => {
  it("moves one ring and keeps the rest in order", () => {
    const axes = [axis(0), axis(1), axis(2), axis(3)];
    expect(reorderAfterDrag(axes, 0, 3)).toEqual([1, 2, 3, 0]);
    expect(reorderAfterDrag(axes, 2, 0)).toEqual([2, 0, 1, 3]);
  });
});

describe("hitTestRing", () => {
  it("grabs the nearest ring within tolerance", () => {
    const axes = [axis(0), axis(1), axis(2)];
    expect(hitTestRing(axes, 0, 0, 0, -2.1, 0.25)).toBe(1); // radius 2
    expect(hitTestRing(axes, 0, 0, 2.95, 0, 0.25)).toBe(2); // radius 3
    expect(hitTestRing(axes, 0, 0, 8, 0, 0.25)).toBeNull();
  });
});
