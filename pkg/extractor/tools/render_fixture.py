#!/usr/bin/env python3
"""Render marker-instrumented test videos for the extractor.

Reads a landmark file (mnmdtw-landmarks/1, e.g. produced by
`mnmdtw synth`), draws each landmark as a filled circle in its palette
color on a gray background, and writes a motion-JPEG AVI. Face landmarks
are spread out around the head centroid so their markers do not overlap
at video resolution. The palette must stay in sync with src/palette.ts.

Usage:
    python3 tools/render_fixture.py landmarks.json out.avi [--blank-lead 2]
    python3 tools/render_fixture.py --blank-only out.avi
"""

import argparse
import json
import sys

import cv2
import numpy as np

# Mirror of MARKER_PALETTE in src/palette.ts (RGB order).
PALETTE = [
    (255, 0, 0), (0, 255, 255), (0, 0, 170), (85, 255, 0), (255, 85, 255),
    (255, 170, 85), (0, 170, 85), (85, 85, 255), (170, 0, 170), (85, 255, 170),
    (170, 85, 0), (170, 255, 85), (255, 255, 0), (0, 0, 255), (0, 85, 170),
    (0, 85, 255), (0, 170, 0), (0, 170, 170), (0, 170, 255), (0, 255, 0),
    (0, 255, 85), (0, 255, 170), (85, 0, 170), (85, 0, 255), (85, 170, 0),
    (85, 170, 255), (85, 255, 85), (85, 255, 255), (170, 0, 0), (170, 0, 85),
    (170, 0, 255), (170, 85, 255), (170, 170, 0),
]

WIDTH, HEIGHT = 960, 540
SCALE = 0.5  # landmark pixel coords -> video coords
BACKGROUND = (118, 118, 118)
FACE_SPREAD = 3.5
HAND_SPREAD = 5.0
MARKER_RADIUS = 4
HEAD_INDICES = list(range(11))
WRIST_FOR_HAND = {17: 15, 19: 15, 21: 15, 18: 16, 20: 16, 22: 16}

BONES = [
    (11, 12), (11, 23), (12, 24), (23, 24),
    (23, 25), (25, 27), (27, 29), (27, 31),
    (24, 26), (26, 28), (28, 30), (28, 32),
    (11, 13), (13, 15), (12, 14), (14, 16),
]


def blank_frame():
    frame = np.empty((HEIGHT, WIDTH, 3), dtype=np.uint8)
    frame[:] = BACKGROUND[::-1]  # cv2 is BGR
    return frame


def render_frame(points):
    frame = blank_frame()
    for a, b in BONES:
        cv2.line(frame, points[a], points[b], (100, 100, 104), 2, cv2.LINE_AA)
    for idx, (px, py) in enumerate(points):
        r, g, b = PALETTE[idx]
        cv2.circle(frame, (px, py), MARKER_RADIUS, (b, g, r), -1)
    return frame


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("landmarks", nargs="?", help="mnmdtw landmark JSON file")
    parser.add_argument("out", help="output AVI path")
    parser.add_argument("--blank-lead", type=int, default=0,
                        help="number of empty frames before the motion")
    parser.add_argument("--blank-only", action="store_true",
                        help="write a 10-frame blank clip (no landmarks input)")
    args = parser.parse_args()

    if args.blank_only:
        writer = cv2.VideoWriter(
            args.out, cv2.VideoWriter_fourcc(*"MJPG"), 30.0, (WIDTH, HEIGHT)
        )
        for _ in range(10):
            writer.write(blank_frame())
        writer.release()
        print(f"blank clip written to {args.out}", file=sys.stderr)
        return 0

    if not args.landmarks:
        parser.error("landmarks file required unless --blank-only")

    with open(args.landmarks) as handle:
        doc = json.load(handle)
    fps = float(doc["header"]["fps"])
    frames = doc["frames"]

    writer = cv2.VideoWriter(
        args.out, cv2.VideoWriter_fourcc(*"MJPG"), fps, (WIDTH, HEIGHT)
    )
    writer.set(cv2.VIDEOWRITER_PROP_QUALITY, 95)
    for _ in range(args.blank_lead):
        writer.write(blank_frame())
    for frame in frames:
        pos = np.array([[lm["x"], lm["y"]] for lm in frame]) * SCALE
        head_center = pos[HEAD_INDICES].mean(axis=0)
        pos[HEAD_INDICES] = head_center + FACE_SPREAD * (pos[HEAD_INDICES] - head_center)
        for hand, wrist in WRIST_FOR_HAND.items():
            pos[hand] = pos[wrist] + HAND_SPREAD * (pos[hand] - pos[wrist])
        points = [(int(round(x)), int(round(y))) for x, y in pos]
        writer.write(render_frame(points))
    writer.release()
    print(
        f"{len(frames)} motion + {args.blank_lead} blank frame(s) written to {args.out}",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
