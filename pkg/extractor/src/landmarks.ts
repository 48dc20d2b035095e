/**
 * The landmark interchange format consumed by the scoring pipeline
 * (version "mnmdtw-landmarks/1"): a header plus one array of 33 records
 * per frame, x/y in pixel coordinates, z and visibility optional.
 *
 * Every document is validated against the same schema rules the scorer
 * applies before it is written to disk.
 */

import { rename, writeFile, unlink } from "node:fs/promises";
import { dirname, join } from "node:path";

export const LANDMARKS_VERSION = "mnmdtw-landmarks/1";
export const LANDMARK_COUNT = 33;

export class SchemaError extends Error {}

export interface LandmarkRecord {
  x: number;
  y: number;
  z: number | null;
  visibility: number | null;
}

export interface LandmarkHeader {
  version: typeof LANDMARKS_VERSION;
  fps: number;
  landmark_count: typeof LANDMARK_COUNT;
  label: string | null;
  source: string | null;
}

export interface LandmarkDocument {
  header: LandmarkHeader;
  frames: LandmarkRecord[][];
}

function isFiniteNumber(v: unknown): v is number {
  return typeof v === "number" && Number.isFinite(v);
}

/** Schema check mirroring the scorer's reader; throws SchemaError. */
export function validateDocument(doc: LandmarkDocument): void {
  const { header, frames } = doc;
  if (header.version !== LANDMARKS_VERSION) {
    throw new SchemaError(`unsupported version ${JSON.stringify(header.version)}`);
  }
  if (header.landmark_count !== LANDMARK_COUNT) {
    throw new SchemaError(`landmark_count must be ${LANDMARK_COUNT}`);
  }
  if (!isFiniteNumber(header.fps) || header.fps <= 0) {
    throw new SchemaError(`fps must be a positive number, got ${header.fps}`);
  }
  if (frames.length < 2) {
    throw new SchemaError(`at least 2 frames required, got ${frames.length}`);
  }
  frames.forEach((frame, i) => {
    if (frame.length !== LANDMARK_COUNT) {
      throw new SchemaError(
        `frame ${i}: expected ${LANDMARK_COUNT} landmarks, got ${frame.length}`,
      );
    }
    frame.forEach((lm, l) => {
      if (!isFiniteNumber(lm.x) || !isFiniteNumber(lm.y)) {
        throw new SchemaError(`frame ${i}: landmark ${l}: x/y must be finite numbers`);
      }
      if (lm.z !== null && !isFiniteNumber(lm.z)) {
        throw new SchemaError(`frame ${i}: landmark ${l}: z must be a number or null`);
      }
      if (lm.visibility !== null) {
        if (!isFiniteNumber(lm.visibility) || lm.visibility < 0 || lm.visibility > 1) {
          throw new SchemaError(
            `frame ${i}: landmark ${l}: visibility must be in [0, 1] or null`,
          );
        }
      }
    });
  });
}

/** Format like printf %.9g: 9 significant digits, no trailing zeros. */
export function g9(v: number): string {
  if (Number.isInteger(v) && Math.abs(v) < 1e9) {
    return String(v);
  }
  return String(Number(v.toPrecision(9)));
}

function renderRecord(lm: LandmarkRecord): string {
  const z = lm.z === null ? "null" : g9(lm.z);
  const vis = lm.visibility === null ? "null" : g9(lm.visibility);
  return `{"x": ${g9(lm.x)}, "y": ${g9(lm.y)}, "z": ${z}, "visibility": ${vis}}`;
}

/** Serialize a validated document in the canonical one-frame-per-line layout. */
export function renderDocument(doc: LandmarkDocument): string {
  const { header, frames } = doc;
  const head =
    `{"version": "${LANDMARKS_VERSION}", "fps": ${g9(header.fps)}, ` +
    `"landmark_count": ${LANDMARK_COUNT}, "label": ${JSON.stringify(header.label)}, ` +
    `"source": ${JSON.stringify(header.source)}}`;
  const lines = frames.map((f) => "    [" + f.map(renderRecord).join(", ") + "]");
  return `{\n  "header": ${head},\n  "frames": [\n${lines.join(",\n")}\n  ]\n}\n`;
}

/** Validate, then write atomically (temp file + rename). */
export async function writeDocument(doc: LandmarkDocument, path: string): Promise<void> {
  validateDocument(doc);
  const tmp = join(dirname(path) || ".", `.tmp-landmarks-${process.pid}~`);
  try {
    await writeFile(tmp, renderDocument(doc), "utf8");
    await rename(tmp, path);
  } catch (err) {
    await unlink(tmp).catch(() => undefined);
    throw err;
  }
}
