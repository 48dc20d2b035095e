/**
 * Pose detector backends.
 *
 * "marker": classical color-marker tracking for instrumented recordings
 * (each landmark tagged with one palette color; the detector returns the
 * centroid of every color's pixels). Deterministic, dependency-light,
 * used by the test suite.
 *
 * "mediapipe": the pose-landmarker model via @mediapipe/tasks-vision.
 * Requires a .task model asset on disk (pass --model); landmarks are
 * scaled from normalized to pixel coordinates.
 */

import { readFile } from "node:fs/promises";

import { LANDMARK_COUNT, LandmarkRecord } from "./landmarks.js";
import { classifyPixel } from "./palette.js";

export class DetectorError extends Error {}

export interface DecodedFrame {
  width: number;
  height: number;
  /** RGBA, 4 bytes per pixel, row-major. */
  rgba: Uint8Array;
}

export interface PoseDetector {
  /** One full 33-landmark set, or null when no pose is found. */
  detect(frame: DecodedFrame, frameIndex: number): Promise<LandmarkRecord[] | null>;
  close(): Promise<void>;
}

export type ModelComplexity = "lite" | "full" | "heavy";

export function parseComplexity(raw: string): ModelComplexity {
  const byNumber: Record<string, ModelComplexity> = { "0": "lite", "1": "full", "2": "heavy" };
  if (raw in byNumber) {
    return byNumber[raw];
  }
  if (raw === "lite" || raw === "full" || raw === "heavy") {
    return raw;
  }
  throw new DetectorError(`unknown model complexity ${JSON.stringify(raw)}; use 0|1|2 or lite|full|heavy`);
}

/** Centroid-of-color-markers detector; a frame counts as detected only
 * when every one of the 33 markers is visible.
 *
 * Classification runs in two passes: pixels are labeled with their
 * nearest palette color, then eroded to 4-neighbor consensus. The
 * erosion discards compression ringing at marker edges (whose blend
 * toward the background can pass close to a darker palette color),
 * leaving only marker cores, which track the drawn centers to
 * sub-pixel accuracy. */
export class MarkerDetector implements PoseDetector {
  async detect(frame: DecodedFrame): Promise<LandmarkRecord[] | null> {
    const { width, height, rgba } = frame;
    const labels = new Int16Array(width * height);
    let p = 0;
    for (let q = 0; q < labels.length; q++, p += 4) {
      labels[q] = classifyPixel(rgba[p], rgba[p + 1], rgba[p + 2]);
    }

    const sumX = new Float64Array(LANDMARK_COUNT);
    const sumY = new Float64Array(LANDMARK_COUNT);
    const count = new Uint32Array(LANDMARK_COUNT);
    for (let y = 1; y < height - 1; y++) {
      const row = y * width;
      for (let x = 1; x < width - 1; x++) {
        const idx = labels[row + x];
        if (
          idx >= 0 &&
          labels[row + x - 1] === idx &&
          labels[row + x + 1] === idx &&
          labels[row + x - width] === idx &&
          labels[row + x + width] === idx
        ) {
          sumX[idx] += x;
          sumY[idx] += y;
          count[idx] += 1;
        }
      }
    }

    const landmarks: LandmarkRecord[] = [];
    for (let i = 0; i < LANDMARK_COUNT; i++) {
      if (count[i] === 0) {
        return null;
      }
      landmarks.push({
        x: sumX[i] / count[i],
        y: sumY[i] / count[i],
        z: null,
        visibility: 1,
      });
    }
    return landmarks;
  }

  async close(): Promise<void> {}
}

export interface MediaPipeOptions {
  modelPath: string | undefined;
  complexity: ModelComplexity;
}

/** Lazily construct the pose-landmarker; fails with an actionable message
 * when the model asset or runtime support is missing. */
export async function createMediaPipeDetector(options: MediaPipeOptions): Promise<PoseDetector> {
  if (!options.modelPath) {
    throw new DetectorError(
      "the mediapipe backend needs a model asset: pass --model path/to/" +
        `pose_landmarker_${options.complexity}.task (or use --backend marker ` +
        "for instrumented recordings)",
    );
  }
  let modelAssetBuffer: Uint8Array;
  try {
    modelAssetBuffer = await readFile(options.modelPath);
  } catch (err) {
    throw new DetectorError(`cannot read model asset ${options.modelPath}: ${err}`);
  }

  let tasksVision: typeof import("@mediapipe/tasks-vision");
  try {
    tasksVision = await import("@mediapipe/tasks-vision");
  } catch (err) {
    throw new DetectorError(`@mediapipe/tasks-vision is not installed: ${err}`);
  }
  const { FilesetResolver, PoseLandmarker } = tasksVision;
  const wasmDir = new URL(
    "../node_modules/@mediapipe/tasks-vision/wasm",
    import.meta.url,
  ).pathname;
  const vision = await FilesetResolver.forVisionTasks(wasmDir);
  const landmarker = await PoseLandmarker.createFromOptions(vision, {
    baseOptions: { modelAssetBuffer, delegate: "CPU" },
    runningMode: "IMAGE",
    numPoses: 1,
  });

  return {
    async detect(frame: DecodedFrame): Promise<LandmarkRecord[] | null> {
      const image = {
        data: new Uint8ClampedArray(frame.rgba.buffer, frame.rgba.byteOffset, frame.rgba.byteLength),
        width: frame.width,
        height: frame.height,
        colorSpace: "srgb",
      } as ImageData;
      const result = landmarker.detect(image);
      const pose = result.landmarks?.[0];
      if (!pose || pose.length !== LANDMARK_COUNT) {
        return null;
      }
      return pose.map((lm) => ({
        x: lm.x * frame.width,
        y: lm.y * frame.height,
        z: typeof lm.z === "number" && Number.isFinite(lm.z) ? lm.z : null,
        visibility:
          typeof lm.visibility === "number" && Number.isFinite(lm.visibility)
            ? Math.min(1, Math.max(0, lm.visibility))
            : null,
      }));
    },
    async close(): Promise<void> {
      landmarker.close();
    },
  };
}
