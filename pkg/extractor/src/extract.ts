/**
 * Video -> landmark-file extraction pipeline.
 *
 * Decodes a motion-JPEG AVI, runs the pose detector on every frame,
 * drops frames without a detection (counted in the summary), validates
 * the assembled document against the interchange schema and writes it
 * atomically. The frame rate is copied from the video metadata; x/y are
 * emitted in pixel coordinates (the scoring pipeline normalizes
 * downstream).
 */

import { readFile } from "node:fs/promises";
import { basename } from "node:path";

import jpeg from "jpeg-js";

import { parseAvi } from "./avi.js";
import {
  DecodedFrame,
  DetectorError,
  MarkerDetector,
  ModelComplexity,
  PoseDetector,
  createMediaPipeDetector,
} from "./detect.js";
import {
  LANDMARK_COUNT,
  LANDMARKS_VERSION,
  LandmarkDocument,
  LandmarkRecord,
  writeDocument,
} from "./landmarks.js";

export class ExtractionError extends Error {}

export type BackendName = "marker" | "mediapipe";

export interface ExtractionConfig {
  videoPath: string;
  outPath: string;
  backend: BackendName;
  modelComplexity: ModelComplexity;
  modelPath?: string;
  /** Landmarks below this visibility are tallied in a stderr warning. */
  minVisibilityWarn: number;
}

export interface ExtractionSummary {
  framesInVideo: number;
  framesEmitted: number;
  framesDropped: number;
  lowVisibilityLandmarks: number;
  fps: number;
}

export async function makeDetector(config: ExtractionConfig): Promise<PoseDetector> {
  if (config.backend === "marker") {
    return new MarkerDetector();
  }
  return createMediaPipeDetector({
    modelPath: config.modelPath,
    complexity: config.modelComplexity,
  });
}

export async function extract(
  config: ExtractionConfig,
  detector?: PoseDetector,
  log: (line: string) => void = (line) => process.stderr.write(line + "\n"),
): Promise<ExtractionSummary> {
  if (config.minVisibilityWarn < 0 || config.minVisibilityWarn > 1) {
    throw new ExtractionError(
      `min visibility threshold must be in [0, 1], got ${config.minVisibilityWarn}`,
    );
  }
  let raw: Buffer;
  try {
    raw = await readFile(config.videoPath);
  } catch (err) {
    throw new ExtractionError(`cannot read video ${config.videoPath}: ${err}`);
  }
  const video = parseAvi(raw);

  const own = detector === undefined;
  const det = detector ?? (await makeDetector(config));
  const frames: LandmarkRecord[][] = [];
  let dropped = 0;
  let lowVisibility = 0;
  try {
    for (let i = 0; i < video.frames.length; i++) {
      let decoded: jpeg.UintArrRet & { width: number; height: number };
      try {
        decoded = jpeg.decode(video.frames[i], { useTArray: true, maxMemoryUsageInMB: 256 });
      } catch (err) {
        throw new ExtractionError(`frame ${i}: broken JPEG data (${err})`);
      }
      const frame: DecodedFrame = {
        width: decoded.width,
        height: decoded.height,
        rgba: decoded.data,
      };
      const landmarks = await det.detect(frame, i);
      if (landmarks === null) {
        dropped += 1;
        continue;
      }
      if (landmarks.length !== LANDMARK_COUNT) {
        throw new ExtractionError(
          `frame ${i}: detector returned ${landmarks.length} landmarks`,
        );
      }
      for (const lm of landmarks) {
        if (lm.visibility !== null && lm.visibility < config.minVisibilityWarn) {
          lowVisibility += 1;
        }
      }
      frames.push(landmarks);
    }
  } finally {
    if (own) {
      await det.close();
    }
  }

  if (frames.length === 0) {
    throw new ExtractionError(
      `no pose detected in any of the ${video.frames.length} frames of ${config.videoPath}`,
    );
  }
  if (frames.length < 2) {
    throw new ExtractionError(
      `only ${frames.length} frame with a detection; at least 2 are required`,
    );
  }

  const doc: LandmarkDocument = {
    header: {
      version: LANDMARKS_VERSION,
      fps: video.fps,
      landmark_count: LANDMARK_COUNT,
      label: null,
      source: basename(config.videoPath),
    },
    frames,
  };
  await writeDocument(doc, config.outPath);

  const summary: ExtractionSummary = {
    framesInVideo: video.frames.length,
    framesEmitted: frames.length,
    framesDropped: dropped,
    lowVisibilityLandmarks: lowVisibility,
    fps: video.fps,
  };
  log(
    `${config.videoPath}: ${summary.framesEmitted} frame(s) emitted, ` +
      `${summary.framesDropped} dropped (no detection), fps ${video.fps}`,
  );
  if (lowVisibility > 0) {
    log(
      `${config.videoPath}: ${lowVisibility} landmark(s) below visibility ` +
        `${config.minVisibilityWarn}`,
    );
  }
  return summary;
}

export { DetectorError };
