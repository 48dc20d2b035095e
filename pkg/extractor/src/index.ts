export { parseAvi, VideoParseError } from "./avi.js";
export type { MjpegVideo } from "./avi.js";
export {
  MARKER_PALETTE,
  channelSpread,
  classifyPixel,
  MIN_CHANNEL_SPREAD,
  MAX_ASSIGN_DISTANCE,
} from "./palette.js";
export type { Rgb } from "./palette.js";
export {
  MarkerDetector,
  createMediaPipeDetector,
  parseComplexity,
  DetectorError,
} from "./detect.js";
export type { DecodedFrame, PoseDetector, ModelComplexity } from "./detect.js";
export {
  LANDMARKS_VERSION,
  LANDMARK_COUNT,
  SchemaError,
  validateDocument,
  renderDocument,
  writeDocument,
  g9,
} from "./landmarks.js";
export type { LandmarkDocument, LandmarkHeader, LandmarkRecord } from "./landmarks.js";
export { extract, ExtractionError } from "./extract.js";
export type { ExtractionConfig, ExtractionSummary, BackendName } from "./extract.js";
export { main } from "./cli.js";
