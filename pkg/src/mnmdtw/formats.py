"""File formats: landmark recordings, baseline tables and score reports.

Landmark files are versioned JSON ("mnmdtw-landmarks/1") with one record
per landmark per frame. Writing is canonical: fixed key order, floats at 9
significant digits, one frame per line. Reading a canonical file and
writing it again reproduces the bytes exactly. All writers go through a
temporary file and an atomic rename, so outputs are never partial.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile

import numpy as np

from .pipeline import BaselineTable, ScoreReport
from .pose import AXES, LANDMARK_COUNT, PoseSequence

__all__ = [
    "ParseError",
    "ValidationError",
    "LANDMARKS_VERSION",
    "BASELINE_VERSION",
    "REPORT_VERSION",
    "read_landmarks",
    "write_landmarks",
    "read_baseline",
    "write_baseline",
    "write_report",
    "render_report_json",
    "render_report_csv",
    "atomic_write_text",
]

LANDMARKS_VERSION = "mnmdtw-landmarks/1"
BASELINE_VERSION = "mnmdtw-baseline/1"
REPORT_VERSION = "mnmdtw-report/1"


class ParseError(ValueError):
    """The file is not well-formed (e.g. broken JSON)."""


class ValidationError(ValueError):
    """The file parses but violates the schema."""


def atomic_write_text(path, text: str) -> None:
    """Write text to ``path`` via a temporary file and atomic rename."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(value: float) -> str:
    """Canonical number formatting: 9 significant digits, idempotent."""
    return f"{value:.9g}"


def _fmt_opt(value: float) -> str:
    return "null" if math.isnan(value) else _fmt(value)


def _require_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _require_opt_number(value, where: str) -> float:
    if value is None:
        return math.nan
    return _require_number(value, where)


# ---------------------------------------------------------------------------
# Landmark recordings
# ---------------------------------------------------------------------------

def write_landmarks(seq: PoseSequence, path) -> None:
    """Serialize a sequence to the canonical landmark file form."""
    label = "null" if seq.label is None else json.dumps(seq.label)
    source = "null" if seq.source is None else json.dumps(seq.source)
    header = (
        f'{{"version": "{LANDMARKS_VERSION}", "fps": {_fmt(seq.fps)}, '
        f'"landmark_count": {LANDMARK_COUNT}, "label": {label}, "source": {source}}}'
    )
    lines = []
    for f in range(len(seq)):
        records = []
        for l in range(LANDMARK_COUNT):
            records.append(
                '{"x": %s, "y": %s, "z": %s, "visibility": %s}'
                % (
                    _fmt(seq.xy[f, l, 0]),
                    _fmt(seq.xy[f, l, 1]),
                    _fmt_opt(seq.z[f, l]),
                    _fmt_opt(seq.visibility[f, l]),
                )
            )
        lines.append("    [" + ", ".join(records) + "]")
    text = (
        "{\n"
        f'  "header": {header},\n'
        '  "frames": [\n' + ",\n".join(lines) + "\n  ]\n}\n"
    )
    atomic_write_text(path, text)


def read_landmarks(path) -> PoseSequence:
    """Parse and validate a landmark file.

    Raises:
        ParseError: the file is not valid JSON.
        ValidationError: schema violations, naming the offending frame.
    """
    with open(path, "r", encoding="utf-8") as handle:
        raw = handle.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc

    if not isinstance(doc, dict) or "header" not in doc or "frames" not in doc:
        raise ValidationError(f"{path}: expected an object with 'header' and 'frames'")
    header = doc["header"]
    if not isinstance(header, dict):
        raise ValidationError(f"{path}: header must be an object")
    version = header.get("version")
    if version != LANDMARKS_VERSION:
        raise ValidationError(
            f"{path}: unsupported version {version!r}, expected {LANDMARKS_VERSION!r}"
        )
    if header.get("landmark_count") != LANDMARK_COUNT:
        raise ValidationError(
            f"{path}: landmark_count must be {LANDMARK_COUNT}, "
            f"got {header.get('landmark_count')!r}"
        )
    fps = _require_number(header.get("fps"), f"{path}: header.fps")
    if not fps > 0:
        raise ValidationError(f"{path}: fps must be positive, got {fps}")
    label = header.get("label")
    source = header.get("source")
    for name, value in (("label", label), ("source", source)):
        if value is not None and not isinstance(value, str):
            raise ValidationError(f"{path}: header.{name} must be text or null")

    frames = doc["frames"]
    if not isinstance(frames, list):
        raise ValidationError(f"{path}: frames must be an array")
    if len(frames) < 2:
        raise ValidationError(f"{path}: at least 2 frames required, got {len(frames)}")

    count = len(frames)
    xy = np.empty((count, LANDMARK_COUNT, 2))
    z = np.empty((count, LANDMARK_COUNT))
    vis = np.empty((count, LANDMARK_COUNT))
    for i, frame in enumerate(frames):
        if not isinstance(frame, list) or len(frame) != LANDMARK_COUNT:
            got = len(frame) if isinstance(frame, list) else type(frame).__name__
            raise ValidationError(
                f"{path}: frame {i}: expected {LANDMARK_COUNT} landmarks, got {got}"
            )
        for l, record in enumerate(frame):
            if not isinstance(record, dict):
                raise ValidationError(f"{path}: frame {i}: landmark {l} must be an object")
            where = f"{path}: frame {i}: landmark {l}"
            if "x" not in record or "y" not in record:
                raise ValidationError(f"{where}: x and y are required")
            xv = _require_number(record["x"], f"{where}.x")
            yv = _require_number(record["y"], f"{where}.y")
            if not (math.isfinite(xv) and math.isfinite(yv)):
                raise ValidationError(f"{where}: x/y must be finite")
            zv = _require_opt_number(record.get("z"), f"{where}.z")
            vv = _require_opt_number(record.get("visibility"), f"{where}.visibility")
            if not math.isnan(vv) and not 0.0 <= vv <= 1.0:
                raise ValidationError(f"{where}: visibility must be in [0, 1], got {vv}")
            xy[i, l] = (xv, yv)
            z[i, l] = zv
            vis[i, l] = vv
    try:
        return PoseSequence(xy=xy, z=z, visibility=vis, fps=fps, label=label, source=source)
    except ValueError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Baseline tables
# ---------------------------------------------------------------------------

def write_baseline(table: BaselineTable, path) -> None:
    groups: dict[str, dict[str, float]] = {}
    for (group, axis), value in table.entries.items():
        groups.setdefault(group, {})[axis] = value
    entry_parts = []
    for group, per_axis in groups.items():
        axes = ", ".join(f'"{axis}": {_fmt(per_axis[axis])}' for axis in AXES if axis in per_axis)
        entry_parts.append(f'    "{group}": {{{axes}}}')
    gold_id = "null" if table.gold_id is None else json.dumps(table.gold_id)
    notes = json.dumps(list(table.notes))
    text = (
        "{\n"
        f'  "version": "{BASELINE_VERSION}",\n'
        f'  "cohort_size": {table.cohort_size},\n'
        f'  "gold_id": {gold_id},\n'
        '  "entries": {\n' + ",\n".join(entry_parts) + "\n  },\n"
        f'  "notes": {notes}\n'
        "}\n"
    )
    atomic_write_text(path, text)


def read_baseline(path) -> BaselineTable:
    with open(path, "r", encoding="utf-8") as handle:
        raw = handle.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict) or doc.get("version") != BASELINE_VERSION:
        raise ValidationError(
            f"{path}: expected a baseline file with version {BASELINE_VERSION!r}"
        )
    cohort = doc.get("cohort_size")
    if isinstance(cohort, bool) or not isinstance(cohort, int) or cohort < 1:
        raise ValidationError(f"{path}: cohort_size must be a positive integer")
    entries_doc = doc.get("entries")
    if not isinstance(entries_doc, dict) or not entries_doc:
        raise ValidationError(f"{path}: entries must be a non-empty object")
    entries: dict[tuple[str, str], float] = {}
    for group, per_axis in entries_doc.items():
        if not isinstance(per_axis, dict):
            raise ValidationError(f"{path}: entries.{group} must be an object")
        for axis, value in per_axis.items():
            if axis not in AXES:
                raise ValidationError(f"{path}: entries.{group}: unknown axis {axis!r}")
            v = _require_number(value, f"{path}: entries.{group}.{axis}")
            if not v > 0:
                raise ValidationError(
                    f"{path}: entries.{group}.{axis} must be positive, got {v}"
                )
            entries[(group, axis)] = v
    gold_id = doc.get("gold_id")
    if gold_id is not None and not isinstance(gold_id, str):
        raise ValidationError(f"{path}: gold_id must be text or null")
    notes = doc.get("notes", [])
    if not isinstance(notes, list) or not all(isinstance(n, str) for n in notes):
        raise ValidationError(f"{path}: notes must be an array of strings")
    return BaselineTable(
        entries=entries, cohort_size=cohort, gold_id=gold_id, notes=tuple(notes)
    )


# ---------------------------------------------------------------------------
# Score reports
# ---------------------------------------------------------------------------

def _nested(mapping: dict[tuple[str, str], float]) -> dict[str, dict[str, float]]:
    out: dict[str, dict[str, float]] = {}
    for (group, axis), value in mapping.items():
        out.setdefault(group, {})[axis] = value
    return out


def render_report_json(report: ScoreReport) -> str:
    doc = {
        "version": REPORT_VERSION,
        "gold_id": report.gold_id,
        "test_id": report.test_id,
        "threshold": report.threshold,
        "raw": _nested(report.raw),
        "baseline": _nested(report.baseline),
        "scores": _nested(report.scores),
        "verdicts": {g: ("good" if ok else "bad") for g, ok in report.verdicts.items()},
    }
    return json.dumps(doc, indent=2) + "\n"


def render_report_csv(report: ScoreReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["group", "axis", "raw", "baseline", "score", "verdict"])
    for (group, axis), raw_value in report.raw.items():
        writer.writerow(
            [
                group,
                axis,
                repr(raw_value),
                repr(report.baseline[(group, axis)]),
                repr(report.scores[(group, axis)]),
                "good" if report.verdicts[group] else "bad",
            ]
        )
    return buf.getvalue()


def write_report(report: ScoreReport, format: str, path) -> None:
    """Write a report as JSON or CSV (12 data rows with default groups)."""
    if format == "json":
        atomic_write_text(path, render_report_json(report))
    elif format == "csv":
        atomic_write_text(path, render_report_csv(report))
    else:
        raise ValueError(f"unknown report format {format!r}; use 'json' or 'csv'")
