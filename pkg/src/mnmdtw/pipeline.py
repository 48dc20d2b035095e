"""Two-layer limb scoring: synchronize globally, then score per limb.

Layer one aligns a test recording to the gold standard over all 66
channels and collapses it onto the gold timeline. Layer two runs DTW per
limb group and axis between the synchronized test and the gold, yielding
12 raw distances. Raw distances divided by control-cohort baselines give
the normalized scores; 1.0 and below reads as consistent with correct
execution.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .dtw import MultiSeries, dtw, project_onto_reference
from .pose import AXES, DEFAULT_LIMB_GROUPS, LimbGroupMap, PoseSequence, flatten, select_group, z_normalize

__all__ = [
    "BaselineTable",
    "ScoreReport",
    "DegenerateBaselineWarning",
    "DEFAULT_THRESHOLD",
    "DEFAULT_BASELINE_EPSILON",
    "synchronize",
    "score",
    "compute_baseline",
    "normalize_raw_scores",
    "evaluate",
]

DEFAULT_THRESHOLD = 1.0
DEFAULT_BASELINE_EPSILON = 1e-9


class DegenerateBaselineWarning(UserWarning):
    """A baseline mean was zero and was replaced by the epsilon floor."""


@dataclass(frozen=True)
class BaselineTable:
    """Average raw distances of a control cohort, per (group, axis).

    All baselines are strictly positive; a zero cohort mean is replaced by
    an epsilon floor at construction time by :func:`compute_baseline` and
    recorded in ``notes``.
    """

    entries: dict[tuple[str, str], float]
    cohort_size: int
    gold_id: str | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.cohort_size < 1:
            raise ValueError("cohort_size must be positive")
        for key, value in self.entries.items():
            if not value > 0:
                raise ValueError(f"baseline for {key} must be positive, got {value}")

    def value(self, group: str, axis: str) -> float:
        try:
            return self.entries[(group, axis)]
        except KeyError:
            raise ValueError(f"missing baseline entry for ({group!r}, {axis!r})") from None


@dataclass(frozen=True)
class ScoreReport:
    """Per-limb, per-axis normalized scores for one test recording.

    ``scores`` equals ``raw / baseline`` entry-wise; ``verdicts`` marks a
    group good when both of its axis scores are at or below the threshold.
    """

    gold_id: str
    test_id: str
    threshold: float
    raw: dict[tuple[str, str], float]
    baseline: dict[tuple[str, str], float]
    scores: dict[tuple[str, str], float]
    verdicts: dict[str, bool]

    @property
    def group_names(self) -> tuple[str, ...]:
        return tuple(self.verdicts.keys())


def synchronize(test: PoseSequence, gold: PoseSequence) -> MultiSeries:
    """Align a test recording onto the gold timeline, all 66 channels.

    Both sequences must already be z-normalized. The output has exactly as
    many rows as the gold recording; each row is the mean of the test
    frames matched to that gold frame by the optimal alignment.
    """
    gold_m = flatten(gold)
    test_m = flatten(test)
    result = dtw(gold_m, test_m)
    return project_onto_reference(result.path, test_m, gold_m.length)


def score(
    synced_test: MultiSeries,
    gold: MultiSeries,
    group_map: LimbGroupMap = DEFAULT_LIMB_GROUPS,
) -> dict[tuple[str, str], float]:
    """Raw per-group, per-axis DTW distances between two aligned matrices.

    Both inputs are 66-channel flattened matrices of equal length (as
    produced by :func:`synchronize` and :func:`~mnmdtw.pose.flatten`).
    Returns one distance per (group, axis), 12 values with the default
    grouping, in group-map order with axis x before y.
    """
    if synced_test.dims != gold.dims:
        raise ValueError(f"dimension mismatch: {synced_test.dims} vs {gold.dims}")
    if synced_test.length != gold.length:
        raise ValueError(
            f"length mismatch: {synced_test.length} vs {gold.length}; "
            "synchronize the test first"
        )
    raw: dict[tuple[str, str], float] = {}
    for name in group_map.names:
        for axis in AXES:
            a = select_group(synced_test, name, axis, group_map)
            b = select_group(gold, name, axis, group_map)
            raw[(name, axis)] = dtw(a, b).distance
    return raw


def _raw_scores(
    test_norm: PoseSequence,
    gold_norm: PoseSequence,
    group_map: LimbGroupMap,
) -> dict[tuple[str, str], float]:
    synced = synchronize(test_norm, gold_norm)
    return score(synced, flatten(gold_norm), group_map)


def compute_baseline(
    controls: list[PoseSequence],
    gold: PoseSequence,
    group_map: LimbGroupMap = DEFAULT_LIMB_GROUPS,
    *,
    epsilon: float = DEFAULT_BASELINE_EPSILON,
    gold_id: str | None = None,
) -> BaselineTable:
    """Average raw distances of a control cohort against the gold standard.

    Each control is normalized, synchronized and scored like a test clip;
    the baseline per (group, axis) is the arithmetic mean over controls.
    A mean of exactly zero (e.g. a control identical to the gold) is
    replaced by ``epsilon`` with a :class:`DegenerateBaselineWarning`.

    Raises:
        ValueError: on an empty control list.
    """
    if not controls:
        raise ValueError("control cohort must not be empty")
    gold_norm = z_normalize(gold)
    totals: dict[tuple[str, str], float] = {}
    for control in controls:
        raw = _raw_scores(z_normalize(control), gold_norm, group_map)
        for key, value in raw.items():
            totals[key] = totals.get(key, 0.0) + value

    entries: dict[tuple[str, str], float] = {}
    notes: list[str] = []
    for key, total in totals.items():
        mean = total / len(controls)
        if mean == 0.0:
            mean = epsilon
            notes.append(f"zero baseline for {key[0]}.{key[1]} replaced by {epsilon:g}")
        entries[key] = mean
    if notes:
        warnings.warn(
            f"{len(notes)} degenerate baseline(s) replaced by epsilon {epsilon:g}",
            DegenerateBaselineWarning,
            stacklevel=2,
        )
    return BaselineTable(
        entries=entries,
        cohort_size=len(controls),
        gold_id=gold_id if gold_id is not None else gold.label,
        notes=tuple(notes),
    )


def normalize_raw_scores(
    raw: dict[tuple[str, str], float],
    baseline: BaselineTable,
) -> dict[tuple[str, str], float]:
    """Divide raw distances by their baseline entries, key by key."""
    return {key: value / baseline.value(*key) for key, value in raw.items()}


def evaluate(
    test: PoseSequence,
    gold: PoseSequence,
    baseline: BaselineTable,
    group_map: LimbGroupMap = DEFAULT_LIMB_GROUPS,
    threshold: float = DEFAULT_THRESHOLD,
    *,
    test_id: str | None = None,
    gold_id: str | None = None,
) -> ScoreReport:
    """Run the full pipeline on one test clip and report normalized scores.

    Normalizes both recordings, synchronizes the test to the gold, scores
    every limb group and axis, and divides by the baselines. A group's
    verdict is good when both of its axis scores are at or below
    ``threshold``.

    Raises:
        ValueError: if the baseline table lacks an entry for any
            (group, axis) pair of the group map, or threshold is not
            positive.
    """
    if not threshold > 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    for name in group_map.names:
        for axis in AXES:
            baseline.value(name, axis)

    raw = _raw_scores(z_normalize(test), z_normalize(gold), group_map)
    scores = normalize_raw_scores(raw, baseline)
    verdicts = {
        name: max(scores[(name, axis)] for axis in AXES) <= threshold
        for name in group_map.names
    }
    return ScoreReport(
        gold_id=gold_id if gold_id is not None else (gold.label or "gold"),
        test_id=test_id if test_id is not None else (test.label or "test"),
        threshold=threshold,
        raw=raw,
        baseline={key: baseline.value(*key) for key in raw},
        scores=scores,
        verdicts=verdicts,
    )
