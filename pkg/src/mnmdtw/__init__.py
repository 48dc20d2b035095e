"""Per-limb movement-error localization via layered multi-dimensional DTW.

A test recording of 33 pose landmarks is standardized per channel,
synchronized to a gold-standard recording with a first 66-channel DTW,
then scored per limb group and axis with a second DTW. Scores are
normalized by control-cohort baselines; values at or below 1.0 read as
consistent with correct execution.
"""

from .chart import render_bar_chart, render_bar_chart_svg
from .dtw import (
    AlignmentPath,
    DtwResult,
    MultiSeries,
    brute_force_dtw,
    dtw,
    ground_distance,
    path_is_admissible,
    project_onto_reference,
)
from .formats import (
    ParseError,
    ValidationError,
    read_baseline,
    read_landmarks,
    render_report_csv,
    render_report_json,
    write_baseline,
    write_landmarks,
    write_report,
)
from .pipeline import (
    BaselineTable,
    DegenerateBaselineWarning,
    ScoreReport,
    compute_baseline,
    evaluate,
    normalize_raw_scores,
    score,
    synchronize,
)
from .pose import (
    AXES,
    DEFAULT_LIMB_GROUPS,
    LANDMARK_COUNT,
    LANDMARK_NAMES,
    ConstantChannelWarning,
    Landmark,
    LimbGroupMap,
    PoseSequence,
    flatten,
    select_group,
    z_normalize,
)
from .synth import PRESETS, SquatParams, generate_cohort, generate_squat, resample

__version__ = "0.1.0"

__all__ = [
    "AXES",
    "AlignmentPath",
    "BaselineTable",
    "ConstantChannelWarning",
    "DEFAULT_LIMB_GROUPS",
    "DegenerateBaselineWarning",
    "DtwResult",
    "LANDMARK_COUNT",
    "LANDMARK_NAMES",
    "Landmark",
    "LimbGroupMap",
    "MultiSeries",
    "PRESETS",
    "ParseError",
    "PoseSequence",
    "ScoreReport",
    "SquatParams",
    "ValidationError",
    "brute_force_dtw",
    "compute_baseline",
    "dtw",
    "evaluate",
    "flatten",
    "generate_cohort",
    "generate_squat",
    "ground_distance",
    "normalize_raw_scores",
    "path_is_admissible",
    "project_onto_reference",
    "read_baseline",
    "read_landmarks",
    "render_bar_chart",
    "render_bar_chart_svg",
    "render_report_csv",
    "render_report_json",
    "resample",
    "score",
    "select_group",
    "synchronize",
    "write_baseline",
    "write_landmarks",
    "write_report",
    "z_normalize",
]
