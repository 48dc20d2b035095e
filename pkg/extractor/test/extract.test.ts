import { execFile } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { promisify } from "node:util";

import { afterAll, describe, expect, it } from "vitest";

import { main } from "../src/cli";
import { MarkerDetector } from "../src/detect";
import { ExtractionError, extract } from "../src/extract";
import { LandmarkDocument, validateDocument } from "../src/landmarks";

const run = promisify(execFile);
const fixture = (name: string) =>
  fileURLToPath(new URL(`../fixtures/${name}`, import.meta.url));

const workdir = mkdtempSync(join(tmpdir(), "extract-test-"));
afterAll(() => rmSync(workdir, { recursive: true, force: true }));

const silent = () => undefined;

function markerConfig(outPath: string, videoPath = fixture("squat-markers.avi")) {
  return {
    videoPath,
    outPath,
    backend: "marker" as const,
    modelComplexity: "lite" as const,
    minVisibilityWarn: 0.5,
  };
}

describe("extract with the marker backend", () => {
  it("emits a valid landmark document and drops the blank lead-in", async () => {
    const out = join(workdir, "clip.json");
    const summary = await extract(markerConfig(out), new MarkerDetector(), silent);
    expect(summary.framesInVideo).toBe(47);
    expect(summary.framesDropped).toBe(2);
    expect(summary.framesEmitted).toBe(45);
    expect(summary.fps).toBe(30);

    const doc = JSON.parse(readFileSync(out, "utf8")) as LandmarkDocument;
    expect(() => validateDocument(doc)).not.toThrow();
    expect(doc.header.fps).toBe(30);
    expect(doc.header.source).toBe("squat-markers.avi");
    expect(doc.frames).toHaveLength(45);
    for (const lm of doc.frames[0]) {
      expect(lm.x).toBeGreaterThan(0);
      expect(lm.x).toBeLessThan(960);
      expect(lm.y).toBeGreaterThan(0);
      expect(lm.y).toBeLessThan(540);
      expect(lm.visibility).toBe(1);
      expect(lm.z).toBeNull();
    }
  });

  it("is repeatable within the documented 1e-4 tolerance", async () => {
    const first = join(workdir, "rep1.json");
    const second = join(workdir, "rep2.json");
    await extract(markerConfig(first), new MarkerDetector(), silent);
    await extract(markerConfig(second), new MarkerDetector(), silent);

    const a = JSON.parse(readFileSync(first, "utf8")) as LandmarkDocument;
    const b = JSON.parse(readFileSync(second, "utf8")) as LandmarkDocument;
    expect(a.frames).toHaveLength(b.frames.length);
    a.frames.forEach((frame, f) => {
      frame.forEach((lm, l) => {
        expect(Math.abs(lm.x - b.frames[f][l].x)).toBeLessThanOrEqual(1e-4);
        expect(Math.abs(lm.y - b.frames[f][l].y)).toBeLessThanOrEqual(1e-4);
      });
    });
    // deterministic decoding and arithmetic: byte-identical in practice
    expect(readFileSync(first, "utf8")).toBe(readFileSync(second, "utf8"));
  });

  it("fails with a count summary when nothing is detected", async () => {
    const out = join(workdir, "blank.json");
    await expect(
      extract(markerConfig(out, fixture("blank.avi")), new MarkerDetector(), silent),
    ).rejects.toThrow(/no pose detected in any of the 10 frames/);
    expect(existsSync(out)).toBe(false);
  });

  it("tracks the rendered markers to sub-pixel accuracy", async () => {
    // The first motion frame of the fixture starts the squat standing with
    // the nose marker near the image center horizontally.
    const out = join(workdir, "accuracy.json");
    await extract(markerConfig(out), new MarkerDetector(), silent);
    const doc = JSON.parse(readFileSync(out, "utf8")) as LandmarkDocument;
    const nose = doc.frames[0][0];
    expect(Math.abs(nose.x - 480)).toBeLessThan(6); // sway offsets it slightly
    const leftAnkle = doc.frames[0][27];
    const rightAnkle = doc.frames[0][28];
    expect(Math.abs(leftAnkle.x - rightAnkle.x - 80)).toBeLessThan(3); // 0.4 units * 200 px
  });
});

describe("mediapipe backend wiring", () => {
  it("asks for a model asset when none is given", async () => {
    const out = join(workdir, "mp.json");
    await expect(
      extract({ ...markerConfig(out), backend: "mediapipe", modelPath: undefined }, undefined, silent),
    ).rejects.toThrow(/--model/);
    expect(existsSync(out)).toBe(false);
  });

  it("reports an unreadable model asset", async () => {
    const out = join(workdir, "mp2.json");
    await expect(
      extract(
        { ...markerConfig(out), backend: "mediapipe", modelPath: join(workdir, "missing.task") },
        undefined,
        silent,
      ),
    ).rejects.toThrow(/cannot read model asset/);
  });
});

describe("extract CLI", () => {
  it("extracts the bundled clip with exit code 0", async () => {
    const out = join(workdir, "cli.json");
    const code = await main([
      "--video", fixture("squat-markers.avi"),
      "--out", out,
      "--backend", "marker",
    ]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
  });

  it("returns 2 on missing required flags", async () => {
    expect(await main([])).toBe(2);
    expect(await main(["--video", "x.avi"])).toBe(2);
  });

  it("returns 2 on an unknown backend", async () => {
    expect(
      await main(["--video", "x.avi", "--out", "y.json", "--backend", "sorcery"]),
    ).toBe(2);
  });

  it("returns 1 when the video is missing", async () => {
    const code = await main([
      "--video", join(workdir, "nope.avi"),
      "--out", join(workdir, "nope.json"),
      "--backend", "marker",
    ]);
    expect(code).toBe(1);
  });

  it("returns 1 when nothing is detected", async () => {
    const code = await main([
      "--video", fixture("blank.avi"),
      "--out", join(workdir, "blank-cli.json"),
      "--backend", "marker",
    ]);
    expect(code).toBe(1);
  });
});

describe("interop with the scoring pipeline", () => {
  it("extracted landmarks flow through baseline and score", async () => {
    const out = join(workdir, "interop.json");
    await extract(markerConfig(out), new MarkerDetector(), silent);

    const gold = join(workdir, "gold.json");
    const c1 = join(workdir, "c1.json");
    const c2 = join(workdir, "c2.json");
    const base = join(workdir, "base.json");
    const report = join(workdir, "report.json");
    await run("mnmdtw", ["synth", "--preset", "correct", "--seed", "800", "--frames", "45", "--out", gold]);
    await run("mnmdtw", ["synth", "--preset", "correct", "--seed", "801", "--frames", "42", "--out", c1]);
    await run("mnmdtw", ["synth", "--preset", "correct", "--seed", "802", "--frames", "48", "--out", c2]);
    await run("mnmdtw", ["baseline", "--gold", gold, "--controls", c1, c2, "--out", base]);
    await run("mnmdtw", [
      "score", "--gold", gold, "--test", out, "--baseline", base, "--report", report,
    ]);

    const doc = JSON.parse(readFileSync(report, "utf8"));
    const rows = Object.values(doc.scores as Record<string, Record<string, number>>)
      .flatMap((axes) => Object.values(axes));
    expect(rows).toHaveLength(12);
    rows.forEach((v) => expect(Number.isFinite(v)).toBe(true));
  }, 60_000);
});
