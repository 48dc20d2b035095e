"""Parametric stick-figure squat generator for 33-landmark sequences.

The forward model is a frontal-view 2D skeleton driven by a knee-angle
sweep: straight legs at the clip boundaries, maximum bend at the middle
frame. Hip height follows from the two-segment leg chain (thigh and shank
of equal length), so the prescribed knee angle is realized exactly. On top
of the chain the model layers the small, exercise-locked motions that give
every channel a deterministic component and make form errors visible as
channel-shape changes (plain amplitude changes are erased downstream by
per-channel standardization):

  - a whole-body lateral sway, attenuated at the feet;
  - forward torso pitch that rises steeply early in the descent and
    saturates near full depth, shortening the projected torso and neck;
  - face features offset along the pitched head axis, each with its own
    protrusion, so head channels are not all copies of one curve;
  - a knee wobble on the ascent (shank rotation about the ankle), whose
    amplitude grows with stance width.

Projection-rigid segments: shank (knee-ankle), foot, arm segments,
shoulder and hip widths. Thigh and torso lengths vary in projection by
design (pitch and wobble are out-of-plane effects seen by the camera).

Generation is pure: equal parameters (including the seed) produce
bit-identical sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .pose import LANDMARK_COUNT, LANDMARK_NAMES, PoseSequence

__all__ = ["SquatParams", "generate_squat", "generate_cohort", "resample", "PRESETS"]

# Skeleton proportions (body units; ground at y=0, y up).
_SHOULDER_HALF = 0.20
_HIP_HALF = 0.15
_LEG_SEGMENT = 0.45  # thigh and shank
_TORSO_LEN = 0.55  # hip center -> shoulder center
_NECK_LEN = 0.16  # shoulder center -> head center
_ANKLE_H = 0.09
_FOOT_Y = 0.03
_HEEL_DX = 0.06  # inward of the ankle
_TOE_DX = 0.10  # outward of the ankle

_ARM_DX = 0.02  # arm hangs slightly outside the shoulder
_ELBOW_DROP = 0.30
_WRIST_DROP = 0.56

# Exercise-locked motion constants.
_SWAY_AMP = 0.050
_FOOT_SWAY_FRAC = 0.45
_COMPRESS = 0.012  # feet sink into the shoes while loaded
_PITCH_MAX = 0.70  # rad, at full depth
_PITCH_SHARP = 2.4  # tanh saturation: lean happens early in the descent
_LOOK_AMP = 1.00  # rad, gaze compensation (head tilts back near the bottom)
_LOOK_THRESH = 0.55  # knee-bend fraction where the gaze throw engages
_LOOK_WIDTH = 0.25
_WOBBLE_BASE = 0.02  # rad, knee wobble at nominal stance
_WOBBLE_GAIN = 2.00  # rad per unit of stance excess
_YAW_GAIN = 0.5

# Pixel projection of the body frame (1920x1080-style camera).
_PX_SCALE = 400.0
_PX_CX = 960.0
_PX_GROUND_Y = 1020.0

# Face feature placement: (x offset, y offset, protrusion toward camera).
_FACE = {
    "nose": (0.0, 0.020, 0.105),
    "eye_inner": (0.022, 0.045, 0.060),
    "eye": (0.038, 0.047, 0.055),
    "eye_outer": (0.054, 0.045, 0.050),
    "ear": (0.078, 0.028, 0.004),
    "mouth": (0.026, -0.025, 0.085),
}

_IDX = {name: i for i, name in enumerate(LANDMARK_NAMES)}


@dataclass(frozen=True)
class SquatParams:
    """Squat generator knobs.

    depth 1.0 is a full squat (minimum knee angle 90 degrees); the minimum
    knee angle is ``180 - depth * 90`` degrees, hit exactly at the middle
    frame when ``duration_frames`` is odd. stance_width multiplies the
    shoulder-width foot separation; 1.0 is correct form. jitter_std is the
    per-landmark Gaussian noise in body units. camera_yaw (degrees) skews
    the horizontal scale of the two body sides.
    """

    depth: float = 1.0
    stance_width: float = 1.0
    duration_frames: int = 61
    jitter_std: float = 0.001
    seed: int = 0
    camera_yaw: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.depth <= 1.0:
            raise ValueError(f"depth must be in (0, 1], got {self.depth}")
        if self.stance_width < 1.0:
            raise ValueError(f"stance_width must be >= 1, got {self.stance_width}")
        if self.duration_frames < 10:
            raise ValueError(f"duration_frames must be >= 10, got {self.duration_frames}")
        if self.jitter_std < 0.0:
            raise ValueError(f"jitter_std must be >= 0, got {self.jitter_std}")


#: CLI preset parameter overrides.
PRESETS = {
    "correct": {},
    "mistake1": {"stance_width": 1.6},
    "mistake2": {"depth": 0.5},
}


def _face_landmark(side: str, key: str):
    if key == "nose":
        return _IDX["nose"]
    if key == "mouth":
        return _IDX[f"mouth_{side}"]
    return _IDX[f"{side}_{key}"]


def generate_squat(params: SquatParams, *, fps: float = 30.0, label: str | None = None) -> PoseSequence:
    """Render one squat execution as a 33-landmark pixel-coordinate clip."""
    p = params
    frames = p.duration_frames
    tau = np.linspace(0.0, 1.0, frames)
    bend = np.sin(np.pi * tau) ** 2
    knee_angle = np.pi - (np.pi / 2.0) * p.depth * bend  # interior, radians
    chain_span = 2.0 * _LEG_SEGMENT * np.sin(knee_angle / 2.0)  # hip joint <-> ankle
    splay = _LEG_SEGMENT * np.cos(knee_angle / 2.0)  # knee offset off the chain line

    sway = _SWAY_AMP * np.sin(2.0 * np.pi * tau)
    foot_sway = _FOOT_SWAY_FRAC * sway
    pitch = _PITCH_MAX * np.tanh(_PITCH_SHARP * p.depth * bend) / math.tanh(_PITCH_SHARP)
    cos_pitch = np.cos(pitch)
    # Ascent-only envelope: zero through the descent and in a window after
    # the bottom frame, so the minimum knee angle stays exact.
    ascent_env = bend * np.clip((tau - 0.56) / 0.22, 0.0, 1.0)
    wobble = (_WOBBLE_BASE + _WOBBLE_GAIN * max(0.0, p.stance_width - 1.0)) * ascent_env
    # Gaze compensation: past a knee-bend threshold the head tilts back to
    # keep looking ahead, so shallow executions miss this feature entirely.
    gaze = np.clip((p.depth * bend - _LOOK_THRESH) / _LOOK_WIDTH, 0.0, 1.0)
    gaze = gaze * gaze * (3.0 - 2.0 * gaze)
    head_pitch = pitch - _LOOK_AMP * gaze
    cos_head, sin_head = np.cos(head_pitch), np.sin(head_pitch)

    ankle_x_off = p.stance_width * _SHOULDER_HALF

    x = np.zeros((frames, LANDMARK_COUNT))
    y = np.zeros((frames, LANDMARK_COUNT))

    def put(idx: int, xs, ys) -> None:
        x[:, idx] = xs
        y[:, idx] = ys

    compression = _COMPRESS * bend
    hip_center_y = np.zeros(frames)
    for side, sgn in (("left", 1.0), ("right", -1.0)):
        ankle_x = sgn * ankle_x_off + foot_sway
        ankle_y = _ANKLE_H - compression
        hip_x = sgn * _HIP_HALF + sway
        dx = hip_x - ankle_x
        hip_y = ankle_y + np.sqrt(chain_span**2 - dx**2)

        # Knee from the two-segment chain: perpendicular offset from the
        # hip-ankle midpoint, pointing outward.
        ux, uy = dx / chain_span, (hip_y - ankle_y) / chain_span
        nx, ny = uy, -ux
        flip = np.where(nx * sgn < 0, -1.0, 1.0)
        knee_x = (hip_x + ankle_x) / 2.0 + splay * nx * flip
        knee_y = (hip_y + ankle_y) / 2.0 + splay * ny * flip

        # Inward wobble on the ascent: rotate the shank about the ankle,
        # preserving the projected knee-ankle length exactly.
        rot = -sgn * wobble
        cr, sr = np.cos(rot), np.sin(rot)
        rel_x, rel_y = knee_x - ankle_x, knee_y - ankle_y
        knee_x = ankle_x + rel_x * cr - rel_y * sr
        knee_y = ankle_y + rel_x * sr + rel_y * cr

        put(_IDX[f"{side}_hip"], hip_x, hip_y)
        put(_IDX[f"{side}_knee"], knee_x, knee_y)
        put(_IDX[f"{side}_ankle"], ankle_x, ankle_y)
        put(_IDX[f"{side}_heel"], sgn * (ankle_x_off - _HEEL_DX) + foot_sway, _FOOT_Y - compression)
        put(_IDX[f"{side}_foot_index"], sgn * (ankle_x_off + _TOE_DX) + foot_sway, _FOOT_Y - compression)
        hip_center_y += hip_y / 2.0

    shoulder_y = hip_center_y + _TORSO_LEN * cos_pitch
    head_center_y = shoulder_y + _NECK_LEN * cos_head

    for side, sgn in (("left", 1.0), ("right", -1.0)):
        shoulder_x = sgn * _SHOULDER_HALF + sway
        put(_IDX[f"{side}_shoulder"], shoulder_x, shoulder_y)

        arm_x = sgn * (_SHOULDER_HALF + _ARM_DX) + sway
        put(_IDX[f"{side}_elbow"], arm_x, shoulder_y - _ELBOW_DROP)
        wrist_y = shoulder_y - _WRIST_DROP
        put(_IDX[f"{side}_wrist"], arm_x + sgn * 0.01, wrist_y)
        put(_IDX[f"{side}_pinky"], arm_x + sgn * 0.015, wrist_y - 0.085)
        put(_IDX[f"{side}_index"], arm_x + sgn * 0.025, wrist_y - 0.090)
        put(_IDX[f"{side}_thumb"], arm_x - sgn * 0.010, wrist_y - 0.065)

        for key in ("eye_inner", "eye", "eye_outer", "ear", "mouth"):
            fdx, fdy, prot = _FACE[key]
            put(
                _face_landmark(side, key),
                sgn * fdx + sway,
                head_center_y + fdy * cos_head - prot * sin_head,
            )
    fdx, fdy, prot = _FACE["nose"]
    put(_IDX["nose"], sway, head_center_y + fdy * cos_head - prot * sin_head)

    if p.jitter_std > 0.0:
        rng = np.random.default_rng(p.seed)
        x += rng.normal(0.0, p.jitter_std, (frames, LANDMARK_COUNT))
        y += rng.normal(0.0, p.jitter_std, (frames, LANDMARK_COUNT))

    if p.camera_yaw != 0.0:
        skew = _YAW_GAIN * math.sin(math.radians(p.camera_yaw))
        side_scale = np.ones(LANDMARK_COUNT)
        for i, name in enumerate(LANDMARK_NAMES):
            if name.startswith("left_") or name == "mouth_left":
                side_scale[i] = 1.0 + skew
            elif name.startswith("right_") or name == "mouth_right":
                side_scale[i] = 1.0 - skew
        x = x * side_scale[np.newaxis, :]

    xy = np.stack([_PX_CX + _PX_SCALE * x, _PX_GROUND_Y - _PX_SCALE * y], axis=-1)
    visibility = np.ones((frames, LANDMARK_COUNT))
    return PoseSequence(xy=xy, visibility=visibility, fps=fps, label=label)


def generate_cohort(
    base: SquatParams,
    n: int,
    seed_stride: int = 1,
    *,
    speed_variation: float = 0.15,
    fps: float = 30.0,
    label: str | None = None,
) -> list[PoseSequence]:
    """Generate ``n`` clips differing only by seed.

    Each clip gets jitter from its own seed plus a seed-derived random
    tempo within ``1 +/- speed_variation``, realized by evaluating the
    motion on a correspondingly resampled frame grid. ``seed_stride=0``
    reproduces the identical clip ``n`` times.
    """
    if n < 1:
        raise ValueError(f"cohort size must be >= 1, got {n}")
    if not 0.0 <= speed_variation < 1.0:
        raise ValueError(f"speed_variation must be in [0, 1), got {speed_variation}")
    clips = []
    for i in range(n):
        seed_i = base.seed + i * seed_stride
        factor_rng = np.random.default_rng((seed_i, 0x7E11))
        factor = 1.0 + factor_rng.uniform(-speed_variation, speed_variation)
        frames_i = max(10, round(base.duration_frames * factor))
        clips.append(
            generate_squat(
                replace(base, seed=seed_i, duration_frames=frames_i),
                fps=fps,
                label=label,
            )
        )
    return clips


def resample(seq: PoseSequence, factor: float) -> PoseSequence:
    """Time-warp a sequence by linear resampling of its frame grid.

    ``factor > 1`` slows the clip down (more frames), ``factor < 1``
    speeds it up. x/y are interpolated linearly; z and visibility take the
    nearest source frame so absent values stay absent.
    """
    if not factor > 0:
        raise ValueError(f"resample factor must be positive, got {factor}")
    frames = len(seq)
    new_frames = max(2, round(frames * factor))
    positions = np.linspace(0.0, frames - 1.0, new_frames)
    old = np.arange(frames, dtype=float)

    flat = seq.xy.reshape(frames, -1)
    out = np.empty((new_frames, flat.shape[1]))
    for c in range(flat.shape[1]):
        out[:, c] = np.interp(positions, old, flat[:, c])
    nearest = np.rint(positions).astype(int)
    return PoseSequence(
        xy=out.reshape(new_frames, LANDMARK_COUNT, 2),
        z=seq.z[nearest],
        visibility=seq.visibility[nearest],
        fps=seq.fps,
        label=seq.label,
        source=seq.source,
        notes=seq.notes,
    )
