"""Landmark-sequence data model, channel normalization and limb grouping.

A recording is a :class:`PoseSequence`: per frame, 33 body landmarks in
camera coordinates (x, y mandatory; z and visibility carried for
round-tripping but never used in any distance). Landmarks are grouped
into six limb groups; the default grouping is :data:`DEFAULT_LIMB_GROUPS`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .dtw import MultiSeries

__all__ = [
    "LANDMARK_COUNT",
    "LANDMARK_NAMES",
    "AXES",
    "Landmark",
    "PoseSequence",
    "LimbGroupMap",
    "DEFAULT_LIMB_GROUPS",
    "ConstantChannelWarning",
    "z_normalize",
    "flatten",
    "select_group",
]

LANDMARK_COUNT = 33

#: Landmark index names, standard 33-point full-body convention.
LANDMARK_NAMES = (
    "nose",
    "left_eye_inner", "left_eye", "left_eye_outer",
    "right_eye_inner", "right_eye", "right_eye_outer",
    "left_ear", "right_ear",
    "mouth_left", "mouth_right",
    "left_shoulder", "right_shoulder",
    "left_elbow", "right_elbow",
    "left_wrist", "right_wrist",
    "left_pinky", "right_pinky",
    "left_index", "right_index",
    "left_thumb", "right_thumb",
    "left_hip", "right_hip",
    "left_knee", "right_knee",
    "left_ankle", "right_ankle",
    "left_heel", "right_heel",
    "left_foot_index", "right_foot_index",
)

AXES = ("x", "y")


class ConstantChannelWarning(UserWarning):
    """A coordinate channel had zero variance and was centered only."""


class Landmark(NamedTuple):
    x: float
    y: float
    z: float | None = None
    visibility: float | None = None


@dataclass(frozen=True, eq=False)
class PoseSequence:
    """An ordered sequence of 33-landmark frames plus recording metadata.

    Arrays are stored read-only: ``xy`` has shape (frames, 33, 2) and must
    be finite; ``z`` and ``visibility`` have shape (frames, 33) with NaN
    marking absent values. At least two frames are required. ``notes``
    records processing remarks (e.g. degenerate channels hit during
    normalization).
    """

    xy: np.ndarray
    z: np.ndarray | None = None
    visibility: np.ndarray | None = None
    fps: float = 30.0
    label: str | None = None
    source: str | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        xy = np.asarray(self.xy, dtype=float)
        if xy.ndim != 3 or xy.shape[1] != LANDMARK_COUNT or xy.shape[2] != 2:
            raise ValueError(
                f"xy must have shape (frames, {LANDMARK_COUNT}, 2), got {xy.shape}"
            )
        if xy.shape[0] < 2:
            raise ValueError(f"a sequence needs at least 2 frames, got {xy.shape[0]}")
        if not np.isfinite(xy).all():
            raise ValueError("x/y coordinates contain non-finite entries")
        if not self.fps > 0:
            raise ValueError(f"fps must be positive, got {self.fps}")

        frames = xy.shape[0]
        z = self.z
        vis = self.visibility
        z = np.full((frames, LANDMARK_COUNT), np.nan) if z is None else np.asarray(z, dtype=float)
        vis = np.full((frames, LANDMARK_COUNT), np.nan) if vis is None else np.asarray(vis, dtype=float)
        for name, arr in (("z", z), ("visibility", vis)):
            if arr.shape != (frames, LANDMARK_COUNT):
                raise ValueError(
                    f"{name} must have shape ({frames}, {LANDMARK_COUNT}), got {arr.shape}"
                )
        with np.errstate(invalid="ignore"):
            if np.nanmin(vis, initial=0.0) < 0.0 or np.nanmax(vis, initial=1.0) > 1.0:
                raise ValueError("visibility values must lie in [0, 1]")

        xy, z, vis = xy.copy(), z.copy(), vis.copy()
        for arr in (xy, z, vis):
            arr.setflags(write=False)
        object.__setattr__(self, "xy", xy)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "visibility", vis)
        object.__setattr__(self, "notes", tuple(self.notes))

    def __len__(self) -> int:
        return self.xy.shape[0]

    def frame(self, i: int) -> tuple[Landmark, ...]:
        """The i-th frame as a tuple of 33 landmarks (None for absent z/vis)."""
        out = []
        for l in range(LANDMARK_COUNT):
            zv = float(self.z[i, l])
            vv = float(self.visibility[i, l])
            out.append(
                Landmark(
                    x=float(self.xy[i, l, 0]),
                    y=float(self.xy[i, l, 1]),
                    z=None if np.isnan(zv) else zv,
                    visibility=None if np.isnan(vv) else vv,
                )
            )
        return tuple(out)

    def iter_frames(self) -> Iterator[tuple[Landmark, ...]]:
        for i in range(len(self)):
            yield self.frame(i)


@dataclass(frozen=True)
class LimbGroupMap:
    """Named, disjoint groups of landmark indices."""

    groups: tuple[tuple[str, tuple[int, ...]], ...]

    def __post_init__(self):
        norm = tuple((str(n), tuple(int(i) for i in idx)) for n, idx in self.groups)
        object.__setattr__(self, "groups", norm)
        if not norm:
            raise ValueError("group map must contain at least one group")
        seen: set[int] = set()
        names: set[str] = set()
        for name, idx in norm:
            if name in names:
                raise ValueError(f"duplicate group name {name!r}")
            names.add(name)
            if not idx:
                raise ValueError(f"group {name!r} is empty")
            for i in idx:
                if not 0 <= i < LANDMARK_COUNT:
                    raise ValueError(f"group {name!r}: landmark index {i} out of range")
                if i in seen:
                    raise ValueError(f"landmark index {i} appears in two groups")
                seen.add(i)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.groups)

    def indices(self, name: str) -> tuple[int, ...]:
        for gname, idx in self.groups:
            if gname == name:
                return idx
        raise ValueError(f"unknown group name {name!r}")


#: Default six-group partition of the 33 landmarks into limbs.
DEFAULT_LIMB_GROUPS = LimbGroupMap(
    (
        ("head", tuple(range(11))),
        ("torso", (11, 12, 23, 24)),
        ("left_arm", (13, 15, 17, 19, 21)),
        ("right_arm", (14, 16, 18, 20, 22)),
        ("left_leg", (25, 27, 29, 31)),
        ("right_leg", (26, 28, 30, 32)),
    )
)


def z_normalize(seq: PoseSequence) -> PoseSequence:
    """Standardize every landmark/axis channel over the time dimension.

    Each of the 66 x/y channels is independently centered on its mean and
    divided by its population standard deviation, computed across all
    frames of this sequence. A channel with zero variance is centered only
    (divided by 1); each such channel is listed in the result's ``notes``
    and a :class:`ConstantChannelWarning` is emitted. z and visibility
    pass through unchanged.
    """
    mean = seq.xy.mean(axis=0)
    std = seq.xy.std(axis=0)  # population std (divisor = frame count)
    constant = std == 0.0
    out = (seq.xy - mean) / np.where(constant, 1.0, std)

    new_notes: list[str] = []
    if constant.any():
        for l, a in zip(*np.nonzero(constant)):
            new_notes.append(
                f"constant channel centered only: {LANDMARK_NAMES[l]}.{AXES[a]}"
            )
        warnings.warn(
            f"{len(new_notes)} zero-variance channel(s) centered without scaling",
            ConstantChannelWarning,
            stacklevel=2,
        )
    return PoseSequence(
        xy=out,
        z=seq.z,
        visibility=seq.visibility,
        fps=seq.fps,
        label=seq.label,
        source=seq.source,
        notes=seq.notes + tuple(new_notes),
    )


def _axis_columns(axes) -> list[int]:
    axes = set(axes)
    bad = axes - set(AXES)
    if bad:
        raise ValueError(f"unknown axes {sorted(bad)!r}; expected subset of {AXES}")
    if not axes:
        raise ValueError("axes must be non-empty")
    return [k for k, a in enumerate(AXES) if a in axes]


def flatten(seq: PoseSequence, axes=AXES) -> MultiSeries:
    """Flatten a sequence to a DTW matrix, landmark-major and axis-minor.

    With both axes the columns are (landmark 0 x, landmark 0 y,
    landmark 1 x, ...), 66 channels total; this column order is part of
    the on-disk format contract.
    """
    cols = _axis_columns(axes)
    mat = seq.xy[:, :, cols].reshape(len(seq), LANDMARK_COUNT * len(cols))
    return MultiSeries(mat)


def select_group(
    m: MultiSeries,
    group: str,
    axis: str,
    group_map: LimbGroupMap = DEFAULT_LIMB_GROUPS,
) -> MultiSeries:
    """Extract one limb group's channels from a 66-column flattened matrix.

    Args:
        m: matrix produced by :func:`flatten` with both axes.
        group: group name present in ``group_map``.
        axis: "x", "y" or "both".

    Returns:
        The sub-matrix with the group's channels, ``t_l`` columns for a
        single axis and ``2 * t_l`` for both.
    """
    if m.dims != 2 * LANDMARK_COUNT:
        raise ValueError(
            f"expected a {2 * LANDMARK_COUNT}-channel flattened matrix, got {m.dims}"
        )
    idx = group_map.indices(group)
    if axis == "x":
        cols = [2 * i for i in idx]
    elif axis == "y":
        cols = [2 * i + 1 for i in idx]
    elif axis == "both":
        cols = [c for i in idx for c in (2 * i, 2 * i + 1)]
    else:
        raise ValueError(f"axis must be 'x', 'y' or 'both', got {axis!r}")
    return MultiSeries(m.values[:, cols])
