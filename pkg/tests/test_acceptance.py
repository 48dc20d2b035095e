"""Acceptance gate: one test per release criterion, at stated tolerances.

Run with ``pytest -s tests/test_acceptance.py`` to see one line per
criterion.
"""

import json
import time
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from mnmdtw.cli import main as cli_main
from mnmdtw.dtw import MultiSeries, brute_force_dtw, dtw, ground_distance, path_is_admissible, _squared_cost_matrix
from mnmdtw.pipeline import compute_baseline, evaluate, _raw_scores
from mnmdtw.pose import AXES, DEFAULT_LIMB_GROUPS, PoseSequence, z_normalize
from mnmdtw.synth import SquatParams, generate_cohort, generate_squat, resample

UPPER_GROUPS = ("head", "torso", "left_arm", "right_arm")


def _ok(name: str) -> None:
    print(f"ACCEPTANCE PASS: {name}")


def _path_cost(x, y, pairs) -> float:
    s = _squared_cost_matrix(MultiSeries(x), MultiSeries(y)).tolist()
    total = 0.0
    for i, j in pairs:
        total = total + s[i][j]
    return total


@pytest.fixture(scope="module")
def gold():
    return generate_squat(SquatParams(seed=100), label="gold")


@pytest.fixture(scope="module")
def baseline(gold):
    controls = generate_cohort(SquatParams(seed=101), 5, seed_stride=1)
    return compute_baseline(controls, gold)


def test_oracle_equivalence_500_pairs():
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    for _ in range(500):
        dims = int(rng.integers(1, 4))
        m, n = int(rng.integers(1, 7)), int(rng.integers(1, 7))
        x = rng.integers(-3, 4, size=(m, dims)).astype(float)
        y = rng.integers(-3, 4, size=(n, dims)).astype(float)
        fast = dtw(x, y)
        slow = brute_force_dtw(x, y)
        assert _path_cost(x, y, fast.path.pairs) == _path_cost(x, y, slow.path.pairs)
        if slow.distance == 0.0:
            assert fast.distance == 0.0
        else:
            assert abs(fast.distance - slow.distance) <= 1e-12 * slow.distance
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    _ok(f"oracle equivalence over 500 randomized pairs ({elapsed:.1f}s)")


def test_dtw_metric_adjacent_properties():
    rng = np.random.default_rng(7)
    failures = 0
    for _ in range(200):
        dims = int(rng.integers(1, 4))
        m, n = int(rng.integers(1, 7)), int(rng.integers(1, 7))
        x = rng.integers(-3, 4, size=(m, dims)).astype(float)
        y = rng.integers(-3, 4, size=(n, dims)).astype(float)

        ident = dtw(x, x)
        if ident.distance != 0.0 or ident.path.pairs != tuple((i, i) for i in range(m)):
            failures += 1
        if dtw(x, y).distance != dtw(y, x).distance:
            failures += 1
        r = dtw(x, y)
        if not path_is_admissible(r.path.pairs, m, n):
            failures += 1
        if r.distance < ground_distance(x[0], y[0]) - 1e-12:
            failures += 1
    assert failures == 0
    _ok("identity, symmetry, admissibility, first-pair bound: 0 failures / 200 pairs")


def test_normalization_suite():
    rng = np.random.default_rng(17)
    for seed in range(5):
        seq = generate_squat(SquatParams(seed=seed))
        normed = z_normalize(seq)
        mean = normed.xy.mean(axis=0)
        std = normed.xy.std(axis=0)
        constant = seq.xy.std(axis=0) == 0.0
        assert np.abs(mean).max() < 1e-9
        assert np.abs(np.where(constant, 1.0, std) - 1.0).max() < 1e-9
        twice = z_normalize(normed)
        assert np.abs(twice.xy - normed.xy).max() < 1e-9
    # also on unstructured data
    seq = PoseSequence(xy=rng.normal(300.0, 25.0, size=(40, 33, 2)))
    normed = z_normalize(seq)
    assert np.abs(normed.xy.mean(axis=0)).max() < 1e-9
    assert np.abs(normed.xy.std(axis=0) - 1.0).max() < 1e-9
    _ok("z-normalization: |mean| < 1e-9, |std-1| < 1e-9, idempotent within 1e-9")


def test_grouping_suite():
    sizes = {"head": 22, "torso": 8, "left_arm": 10, "right_arm": 10, "left_leg": 8, "right_leg": 8}
    seen: set[int] = set()
    for name in DEFAULT_LIMB_GROUPS.names:
        cols = {
            c for i in DEFAULT_LIMB_GROUPS.indices(name) for c in (2 * i, 2 * i + 1)
        }
        assert len(cols) == sizes[name]
        assert not (cols & seen)
        seen |= cols
    assert seen == set(range(66))
    _ok("limb grouping partitions 66 columns disjointly (22/8/10/10/8/8)")


def test_correct_case_calibration(gold, baseline):
    start = time.perf_counter()
    heldout = generate_cohort(SquatParams(seed=201), 5, seed_stride=1)
    for clip in heldout:
        report = evaluate(clip, gold, baseline)
        values = list(report.scores.values())
        assert len(values) == 12
        assert min(values) >= 0.2 and max(values) <= 3.0, values
        assert 0.5 <= float(np.mean(values)) <= 2.0
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _ok(f"correct-case calibration: 5 held-out clips, scores near 1 ({elapsed:.1f}s)")


def test_mistake1_localization(gold, baseline):
    report = evaluate(generate_squat(SquatParams(stance_width=1.6, seed=301)), gold, baseline)
    leg_x = [report.scores[("left_leg", "x")], report.scores[("right_leg", "x")]]
    upper = [report.scores[(g, a)] for g in UPPER_GROUPS for a in AXES]
    assert min(leg_x) > max(upper)
    assert all(v > 2.0 for v in leg_x)
    _ok(
        f"mistake-1: leg x scores {leg_x[0]:.2f}/{leg_x[1]:.2f} dominate "
        f"upper-body max {max(upper):.2f}"
    )


def test_mistake2_height_gradient(gold, baseline):
    report = evaluate(generate_squat(SquatParams(depth=0.5, seed=302)), gold, baseline)
    legs_y = float(
        np.mean([report.scores[("left_leg", "y")], report.scores[("right_leg", "y")]])
    )
    torso_y = report.scores[("torso", "y")]
    head_y = report.scores[("head", "y")]
    assert legs_y < torso_y < head_y
    assert head_y > 2.0
    _ok(f"mistake-2: y gradient legs {legs_y:.2f} < torso {torso_y:.2f} < head {head_y:.2f}")


def test_monotone_error_response():
    gold_still = z_normalize(generate_squat(SquatParams(jitter_std=0.0)))
    raws = []
    for stance in (1.0, 1.2, 1.4, 1.6):
        clip = generate_squat(SquatParams(stance_width=stance, jitter_std=0.0))
        raws.append(
            _raw_scores(z_normalize(clip), gold_still, DEFAULT_LIMB_GROUPS)[("left_leg", "x")]
        )
    assert all(a < b for a, b in zip(raws, raws[1:])), raws
    _ok(
        "monotone stance response: left-leg x raw "
        + " < ".join(f"{v:.2f}" for v in raws)
    )


def test_tempo_robustness(gold, baseline):
    clip = generate_squat(SquatParams(seed=401))
    worst = 0.0
    for factor in (0.85, 1.15):
        report = evaluate(resample(clip, factor), gold, baseline)
        worst = max(worst, max(report.scores.values()))
    assert worst < 1.5
    _ok(f"tempo robustness: +/-15% resampling, worst score {worst:.2f} < 1.5")


def test_end_to_end_cli(tmp_path):
    d = tmp_path

    def run(*args):
        return cli_main(list(args))

    gold = d / "gold.json"
    assert run("synth", "--preset", "correct", "--seed", "100", "--out", str(gold)) == 0
    controls = []
    for i, frames in enumerate((55, 58, 61, 64, 67)):
        c = d / f"control{i}.json"
        assert run(
            "synth", "--preset", "correct", "--seed", str(101 + i),
            "--frames", str(frames), "--out", str(c),
        ) == 0
        controls.append(str(c))
    base = d / "baseline.json"
    assert run("baseline", "--gold", str(gold), "--controls", *controls, "--out", str(base)) == 0
    test = d / "mistake1.json"
    assert run("synth", "--preset", "mistake1", "--seed", "301", "--out", str(test)) == 0

    report = d / "report.csv"
    chart = d / "chart.svg"
    assert run(
        "score", "--gold", str(gold), "--test", str(test),
        "--baseline", str(base), "--report", str(report), "--plot", str(chart),
    ) == 0

    rows = report.read_text().strip().split("\n")
    assert len(rows) == 1 + 12
    assert ET.parse(chart).getroot().tag == "{http://www.w3.org/2000/svg}svg"

    first_report = report.read_bytes()
    first_chart = chart.read_bytes()
    assert run(
        "score", "--gold", str(gold), "--test", str(test),
        "--baseline", str(base), "--report", str(report), "--plot", str(chart),
    ) == 0
    assert report.read_bytes() == first_report
    assert chart.read_bytes() == first_chart
    _ok("end-to-end CLI: synth -> baseline -> score -> report+chart, byte-identical rerun")
