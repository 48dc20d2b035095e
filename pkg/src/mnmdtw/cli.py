"""Command-line interface: synth, baseline, score and align.

Exit codes: 0 on success, 1 on validation or parse errors, 2 on usage
errors. Diagnostics go to standard error; machine-readable output goes to
files, or to standard output when ``--report -`` is given.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .chart import render_bar_chart
from .formats import (
    ParseError,
    ValidationError,
    atomic_write_text,
    read_baseline,
    read_landmarks,
    render_report_json,
    write_baseline,
    write_landmarks,
    write_report,
)
from .pipeline import DEFAULT_THRESHOLD, compute_baseline, evaluate, synchronize
from .pose import AXES, LANDMARK_NAMES, flatten, z_normalize
from .synth import PRESETS, SquatParams, generate_squat

THRESHOLD_ENV = "MNMDTW_THRESHOLD"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mnmdtw",
        description="Localize movement-execution errors per body part by "
        "layered multi-dimensional dynamic time warping of pose landmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="score a test recording against a gold standard")
    p_score.add_argument("--gold", required=True, help="gold-standard landmark file")
    p_score.add_argument(
        "--test", required=True, action="append",
        help="test landmark file (repeatable; with several tests --report/--plot name directories)",
    )
    p_score.add_argument("--baseline", required=True, help="baseline table file")
    p_score.add_argument(
        "--threshold", type=float, default=None,
        help=f"good/bad score threshold (default {DEFAULT_THRESHOLD}, or ${THRESHOLD_ENV})",
    )
    p_score.add_argument("--report", help="report output: *.json, *.csv or '-' for JSON on stdout")
    p_score.add_argument("--plot", help="SVG bar-chart output path")
    p_score.set_defaults(func=_cmd_score)

    p_base = sub.add_parser("baseline", help="compute baselines from a control cohort")
    p_base.add_argument("--gold", required=True, help="gold-standard landmark file")
    p_base.add_argument("--controls", required=True, nargs="+", help="control landmark files")
    p_base.add_argument("--out", required=True, help="baseline table output path")
    p_base.set_defaults(func=_cmd_baseline)

    p_synth = sub.add_parser("synth", help="generate a synthetic squat recording")
    p_synth.add_argument("--preset", required=True, choices=sorted(PRESETS))
    p_synth.add_argument("--depth", type=float, help="override: knee-bend depth in (0, 1]")
    p_synth.add_argument("--stance", type=float, help="override: stance width multiple (>= 1)")
    p_synth.add_argument("--frames", type=int, help="override: clip length in frames")
    p_synth.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p_synth.add_argument("--out", required=True, help="landmark file output path")
    p_synth.set_defaults(func=_cmd_synth)

    p_align = sub.add_parser("align", help="emit the synchronized 66-channel series")
    p_align.add_argument("--gold", required=True, help="gold-standard landmark file")
    p_align.add_argument("--test", required=True, help="test landmark file")
    p_align.add_argument("--out", required=True, help="CSV output path")
    p_align.set_defaults(func=_cmd_align)

    return parser


def _resolve_threshold(args) -> float:
    if args.threshold is not None:
        value = args.threshold
    elif THRESHOLD_ENV in os.environ:
        raw = os.environ[THRESHOLD_ENV]
        try:
            value = float(raw)
        except ValueError:
            raise _UsageError(f"{THRESHOLD_ENV} must be a positive number, got {raw!r}")
    else:
        return DEFAULT_THRESHOLD
    if not value > 0:
        raise _UsageError(f"threshold must be positive, got {value}")
    return value


class _UsageError(Exception):
    pass


def _report_format(path: str) -> str:
    if path.endswith(".json"):
        return "json"
    if path.endswith(".csv"):
        return "csv"
    raise _UsageError(f"cannot infer report format from {path!r}; use .json or .csv")


def _cmd_score(args) -> int:
    threshold = _resolve_threshold(args)
    tests = args.test
    multi = len(tests) > 1
    if multi and args.report == "-":
        raise _UsageError("--report - is only valid with a single --test")
    if not multi and args.report and args.report != "-":
        _report_format(args.report)  # validate extension before any work

    gold = read_landmarks(args.gold)
    baseline = read_baseline(args.baseline)
    for out_dir in (args.report if multi and args.report else None,
                    args.plot if multi and args.plot else None):
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)

    for test_path in tests:
        test = read_landmarks(test_path)
        report = evaluate(
            test, gold, baseline,
            threshold=threshold,
            test_id=test_path,
            gold_id=args.gold,
        )
        stem = os.path.splitext(os.path.basename(test_path))[0]
        if args.report == "-":
            sys.stdout.write(render_report_json(report))
        elif args.report:
            path = os.path.join(args.report, stem + ".report.json") if multi else args.report
            write_report(report, _report_format(path), path)
        if args.plot:
            path = os.path.join(args.plot, stem + ".svg") if multi else args.plot
            render_bar_chart(report, path)
        for group, ok in report.verdicts.items():
            sx, sy_ = report.scores[(group, "x")], report.scores[(group, "y")]
            print(
                f"{test_path}: {group}: x={sx:.3f} y={sy_:.3f} "
                f"{'good' if ok else 'bad'}",
                file=sys.stderr,
            )
    return 0


def _cmd_baseline(args) -> int:
    gold = read_landmarks(args.gold)
    controls = [read_landmarks(p) for p in args.controls]
    table = compute_baseline(controls, gold, gold_id=args.gold)
    write_baseline(table, args.out)
    print(
        f"baseline over {table.cohort_size} control(s) written to {args.out}",
        file=sys.stderr,
    )
    return 0


def _cmd_synth(args) -> int:
    params = SquatParams(seed=args.seed, **PRESETS[args.preset])
    overrides = {}
    if args.depth is not None:
        overrides["depth"] = args.depth
    if args.stance is not None:
        overrides["stance_width"] = args.stance
    if args.frames is not None:
        overrides["duration_frames"] = args.frames
    if overrides:
        params = replace(params, **overrides)
    seq = generate_squat(params, label=args.preset)
    write_landmarks(seq, args.out)
    print(
        f"{args.preset} clip ({len(seq)} frames, seed {args.seed}) written to {args.out}",
        file=sys.stderr,
    )
    return 0


def _cmd_align(args) -> int:
    gold = z_normalize(read_landmarks(args.gold))
    test = z_normalize(read_landmarks(args.test))
    synced = synchronize(test, gold)
    header = ",".join(f"{name}_{axis}" for name in LANDMARK_NAMES for axis in AXES)
    lines = [header]
    for row in synced.values:
        lines.append(",".join(repr(v) for v in row))
    atomic_write_text(args.out, "\n".join(lines) + "\n")
    print(
        f"synchronized series ({synced.length} x {synced.dims}) written to {args.out}",
        file=sys.stderr,
    )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
