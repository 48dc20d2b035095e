#!/usr/bin/env node
/**
 * extract --video V --out F [--complexity N] [--backend marker|mediapipe]
 *         [--model PATH] [--min-visibility-warn X]
 *
 * Exit codes mirror the scoring CLI: 0 success, 1 validation/parse
 * errors, 2 usage errors. Diagnostics go to stderr.
 */

import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { VideoParseError } from "./avi.js";
import { DetectorError, parseComplexity } from "./detect.js";
import { ExtractionError, extract } from "./extract.js";
import { SchemaError } from "./landmarks.js";

const USAGE =
  "usage: mnmdtw-extract --video <file.avi> --out <landmarks.json> " +
  "[--complexity 0|1|2|lite|full|heavy] [--backend marker|mediapipe] " +
  "[--model pose_landmarker.task] [--min-visibility-warn 0.5]";

export async function main(argv: string[]): Promise<number> {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        video: { type: "string" },
        out: { type: "string" },
        complexity: { type: "string", default: "lite" },
        backend: { type: "string", default: "mediapipe" },
        model: { type: "string" },
        "min-visibility-warn": { type: "string", default: "0.5" },
        help: { type: "boolean", default: false },
      },
      allowPositionals: false,
    }));
  } catch (err) {
    process.stderr.write(`usage error: ${(err as Error).message}\n${USAGE}\n`);
    return 2;
  }
  if (values.help) {
    process.stdout.write(USAGE + "\n");
    return 0;
  }
  if (!values.video || !values.out) {
    process.stderr.write(`usage error: --video and --out are required\n${USAGE}\n`);
    return 2;
  }
  if (values.backend !== "marker" && values.backend !== "mediapipe") {
    process.stderr.write(`usage error: unknown backend ${values.backend}\n${USAGE}\n`);
    return 2;
  }
  const minVis = Number(values["min-visibility-warn"]);
  if (!Number.isFinite(minVis)) {
    process.stderr.write(`usage error: --min-visibility-warn must be a number\n`);
    return 2;
  }

  try {
    await extract({
      videoPath: values.video,
      outPath: values.out,
      backend: values.backend,
      modelComplexity: parseComplexity(values.complexity as string),
      modelPath: values.model,
      minVisibilityWarn: minVis,
    });
    return 0;
  } catch (err) {
    if (
      err instanceof ExtractionError ||
      err instanceof VideoParseError ||
      err instanceof DetectorError ||
      err instanceof SchemaError
    ) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    if (err instanceof Error && "code" in err) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
