/**
 * Marker palette for instrumented recordings.
 *
 * Each of the 33 pose landmarks is tagged with one saturated RGB color,
 * chosen so that every pair is at least 85 apart in RGB space and every
 * color survives MJPEG compression distinguishably. Index order matches
 * the standard 33-point landmark convention (0 = nose ... 32 =
 * right_foot_index). The fixture renderer (tools/render_fixture.py)
 * mirrors this table.
 */

export type Rgb = readonly [number, number, number];

export const MARKER_PALETTE: readonly Rgb[] = [
  [255, 0, 0],
  [0, 255, 255],
  [0, 0, 170],
  [85, 255, 0],
  [255, 85, 255],
  [255, 170, 85],
  [0, 170, 85],
  [85, 85, 255],
  [170, 0, 170],
  [85, 255, 170],
  [170, 85, 0],
  [170, 255, 85],
  [255, 255, 0],
  [0, 0, 255],
  [0, 85, 170],
  [0, 85, 255],
  [0, 170, 0],
  [0, 170, 170],
  [0, 170, 255],
  [0, 255, 0],
  [0, 255, 85],
  [0, 255, 170],
  [85, 0, 170],
  [85, 0, 255],
  [85, 170, 0],
  [85, 170, 255],
  [85, 255, 85],
  [85, 255, 255],
  [170, 0, 0],
  [170, 0, 85],
  [170, 0, 255],
  [170, 85, 255],
  [170, 170, 0],
];

/** Pixels with a channel spread below this are background or skeleton. */
export const MIN_CHANNEL_SPREAD = 96;

/** Pixels farther than this from every palette color are ignored. */
export const MAX_ASSIGN_DISTANCE = 40;

/** Required ratio between the second-nearest and nearest palette color. */
export const ASSIGN_MARGIN = 2;

export function channelSpread(r: number, g: number, b: number): number {
  return Math.max(r, g, b) - Math.min(r, g, b);
}

/**
 * Nearest palette index for a pixel, or -1 when the pixel is not a
 * believable marker sample: too gray, too far from every color, or
 * ambiguous between two colors.
 */
export function classifyPixel(r: number, g: number, b: number): number {
  if (channelSpread(r, g, b) < MIN_CHANNEL_SPREAD) {
    return -1;
  }
  let best = -1;
  let bestDist = Infinity;
  let secondDist = Infinity;
  for (let i = 0; i < MARKER_PALETTE.length; i++) {
    const [pr, pg, pb] = MARKER_PALETTE[i];
    const dr = r - pr;
    const dg = g - pg;
    const db = b - pb;
    const d = dr * dr + dg * dg + db * db;
    if (d < bestDist) {
      secondDist = bestDist;
      bestDist = d;
      best = i;
    } else if (d < secondDist) {
      secondDist = d;
    }
  }
  if (bestDist > MAX_ASSIGN_DISTANCE * MAX_ASSIGN_DISTANCE) {
    return -1;
  }
  if (bestDist * ASSIGN_MARGIN > secondDist) {
    return -1;
  }
  return best;
}
