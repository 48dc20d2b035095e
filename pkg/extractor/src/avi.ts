/**
 * Minimal RIFF/AVI reader for motion-JPEG videos.
 *
 * Walks the RIFF chunk tree, collects the video stream's compressed
 * frames ("##dc"/"##db" chunks, including ones nested in "rec " lists)
 * and derives the frame rate from the video stream header (falling back
 * to the main AVI header). Only what the extractor needs; not a general
 * AVI demuxer.
 */

export class VideoParseError extends Error {}

export interface MjpegVideo {
  fps: number;
  width: number;
  height: number;
  /** Compressed JPEG bytes, one Buffer per frame, in stream order. */
  frames: Buffer[];
}

const FRAME_CHUNK = /^\d\dd[cb]$/;

function fourcc(buf: Buffer, offset: number): string {
  return buf.toString("latin1", offset, offset + 4);
}

export function parseAvi(buf: Buffer): MjpegVideo {
  if (buf.length < 12 || fourcc(buf, 0) !== "RIFF" || fourcc(buf, 8) !== "AVI ") {
    throw new VideoParseError("not a RIFF/AVI file");
  }

  const frames: Buffer[] = [];
  let microSecPerFrame = 0;
  let width = 0;
  let height = 0;
  let fpsFromStream = 0;
  let pendingVideoStream = false;

  const walk = (start: number, end: number): void => {
    let offset = start;
    while (offset + 8 <= end) {
      const id = fourcc(buf, offset);
      const size = buf.readUInt32LE(offset + 4);
      const body = offset + 8;
      if (body + size > buf.length) {
        throw new VideoParseError(`truncated chunk ${JSON.stringify(id)} at ${offset}`);
      }
      if (id === "LIST") {
        walk(body + 4, body + size); // skip the list type fourcc
      } else if (id === "avih" && size >= 40) {
        microSecPerFrame = buf.readUInt32LE(body);
        width = buf.readUInt32LE(body + 32);
        height = buf.readUInt32LE(body + 36);
      } else if (id === "strh" && size >= 28) {
        pendingVideoStream = fourcc(buf, body) === "vids";
        if (pendingVideoStream) {
          const scale = buf.readUInt32LE(body + 20);
          const rate = buf.readUInt32LE(body + 24);
          if (scale > 0 && rate > 0) {
            fpsFromStream = rate / scale;
          }
        }
      } else if (FRAME_CHUNK.test(id) && size > 0) {
        frames.push(buf.subarray(body, body + size));
      }
      offset = body + size + (size % 2); // chunks are word-aligned
    }
  };

  walk(12, buf.length);

  if (frames.length === 0) {
    throw new VideoParseError("no video frames found");
  }
  let fps = fpsFromStream;
  if (!(fps > 0) && microSecPerFrame > 0) {
    fps = 1_000_000 / microSecPerFrame;
  }
  if (!(fps > 0)) {
    throw new VideoParseError("frame rate missing from AVI headers");
  }
  return { fps, width, height, frames };
}
