import { describe, expect, it } from "vitest";

import {
  ASSIGN_MARGIN,
  MARKER_PALETTE,
  MAX_ASSIGN_DISTANCE,
  channelSpread,
  classifyPixel,
} from "../src/palette";

function dist(a: readonly number[], b: readonly number[]): number {
  return Math.hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

describe("marker palette", () => {
  it("has 33 distinct colors", () => {
    expect(MARKER_PALETTE).toHaveLength(33);
    const seen = new Set(MARKER_PALETTE.map((c) => c.join(",")));
    expect(seen.size).toBe(33);
  });

  it("keeps every pair at least 85 apart", () => {
    for (let i = 0; i < MARKER_PALETTE.length; i++) {
      for (let j = i + 1; j < MARKER_PALETTE.length; j++) {
        expect(dist(MARKER_PALETTE[i], MARKER_PALETTE[j])).toBeGreaterThanOrEqual(85);
      }
    }
  });

  it("classifies exact palette colors to their own index", () => {
    MARKER_PALETTE.forEach(([r, g, b], i) => {
      expect(classifyPixel(r, g, b)).toBe(i);
    });
  });

  it("rejects gray background and skeleton pixels", () => {
    expect(classifyPixel(118, 118, 118)).toBe(-1);
    expect(classifyPixel(100, 100, 104)).toBe(-1);
    expect(channelSpread(118, 118, 118)).toBe(0);
  });

  it("rejects pixels far from every color", () => {
    // saturated but outside the assignment radius of any palette entry
    expect(classifyPixel(255, 128, 40)).toBe(-1);
  });

  it("accepts small compression shifts", () => {
    const [r, g, b] = MARKER_PALETTE[5];
    expect(classifyPixel(r - 12, Math.min(255, g + 10), b + 8)).toBe(5);
  });

  it("rejects ambiguous blends between two palette colors", () => {
    // halfway between (0,0,255) and (0,0,170): nearest is ~42 away on both
    // sides, failing the margin test even inside the distance cap
    const probe = classifyPixel(0, 0, 212);
    expect(probe).toBe(-1);
    expect(MAX_ASSIGN_DISTANCE).toBeGreaterThan(212 - 170 - 5);
    expect(ASSIGN_MARGIN).toBeGreaterThan(1);
  });
});
