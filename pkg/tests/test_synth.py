import numpy as np
import pytest

from mnmdtw.pose import LANDMARK_NAMES
from mnmdtw.synth import PRESETS, SquatParams, generate_cohort, generate_squat, resample

IDX = {name: i for i, name in enumerate(LANDMARK_NAMES)}


def knee_angles_deg(seq, side):
    hip = seq.xy[:, IDX[f"{side}_hip"]]
    knee = seq.xy[:, IDX[f"{side}_knee"]]
    ankle = seq.xy[:, IDX[f"{side}_ankle"]]
    v1, v2 = hip - knee, ankle - knee
    cos = (v1 * v2).sum(axis=1) / (
        np.linalg.norm(v1, axis=1) * np.linalg.norm(v2, axis=1)
    )
    return np.degrees(np.arccos(np.clip(cos, -1.0, 1.0)))


def segment_lengths(seq, a, b):
    return np.linalg.norm(seq.xy[:, IDX[a]] - seq.xy[:, IDX[b]], axis=1)


class TestSquatParams:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"depth": 0.0},
            {"depth": 1.2},
            {"stance_width": 0.9},
            {"duration_frames": 9},
            {"jitter_std": -0.1},
        ],
    )
    def test_invalid_params(self, kwargs):
        with pytest.raises(ValueError):
            SquatParams(**kwargs)

    def test_presets(self):
        assert PRESETS["mistake1"] == {"stance_width": 1.6}
        assert PRESETS["mistake2"] == {"depth": 0.5}
        assert PRESETS["correct"] == {}


class TestKinematics:
    def test_full_depth_min_knee_angle(self):
        seq = generate_squat(SquatParams(depth=1.0, jitter_std=0.0))
        for side in ("left", "right"):
            assert abs(knee_angles_deg(seq, side).min() - 90.0) < 1e-6

    def test_half_depth_min_knee_angle_and_head_travel(self):
        full = generate_squat(SquatParams(depth=1.0, jitter_std=0.0))
        half = generate_squat(SquatParams(depth=0.5, jitter_std=0.0))
        assert abs(knee_angles_deg(half, "left").min() - 135.0) < 1e-6
        travel = lambda s: np.ptp(s.xy[:, IDX["nose"], 1])
        assert travel(half) < travel(full)

    def test_stance_sets_ankle_to_shoulder_ratio(self):
        seq = generate_squat(SquatParams(stance_width=1.6, jitter_std=0.0))
        ankle_sep = seq.xy[:, IDX["left_ankle"], 0] - seq.xy[:, IDX["right_ankle"], 0]
        shoulder_sep = (
            seq.xy[:, IDX["left_shoulder"], 0] - seq.xy[:, IDX["right_shoulder"], 0]
        )
        assert np.abs(ankle_sep / shoulder_sep - 1.6).max() < 1e-6

    def test_rigid_segments_constant(self):
        # Shank, foot and arm segments plus the shoulder width stay rigid in
        # the camera plane; thigh and torso vary by design (pitch/wobble).
        seq = generate_squat(SquatParams(stance_width=1.6, jitter_std=0.0))
        for a, b in [
            ("left_knee", "left_ankle"),
            ("right_knee", "right_ankle"),
            ("left_ankle", "left_heel"),
            ("left_heel", "left_foot_index"),
            ("left_shoulder", "right_shoulder"),
            ("left_elbow", "left_wrist"),
            ("right_shoulder", "right_elbow"),
        ]:
            lengths = segment_lengths(seq, a, b)
            assert np.ptp(lengths) < 1e-6, (a, b)

    def test_hip_width_constant_in_x(self):
        seq = generate_squat(SquatParams(jitter_std=0.0))
        sep = seq.xy[:, IDX["left_hip"], 0] - seq.xy[:, IDX["right_hip"], 0]
        assert np.ptp(sep) < 1e-9

    def test_yaw_scales_sides_asymmetrically(self):
        flat = generate_squat(SquatParams(jitter_std=0.0))
        yawed = generate_squat(SquatParams(jitter_std=0.0, camera_yaw=20.0))
        mid = 960.0
        left_spread = np.abs(yawed.xy[:, IDX["left_wrist"], 0] - mid)
        right_spread = np.abs(yawed.xy[:, IDX["right_wrist"], 0] - mid)
        base_left = np.abs(flat.xy[:, IDX["left_wrist"], 0] - mid)
        base_right = np.abs(flat.xy[:, IDX["right_wrist"], 0] - mid)
        assert np.all(left_spread > base_left)
        assert np.all(right_spread < base_right)

    def test_visibility_filled(self):
        seq = generate_squat(SquatParams())
        assert np.all(seq.visibility == 1.0)
        assert np.isnan(seq.z).all()


class TestDeterminism:
    def test_equal_params_equal_output(self):
        a = generate_squat(SquatParams(seed=5))
        b = generate_squat(SquatParams(seed=5))
        assert np.array_equal(a.xy, b.xy)

    def test_zero_stride_cohort_identical(self):
        clips = generate_cohort(SquatParams(seed=9), 5, seed_stride=0)
        assert all(np.array_equal(clips[0].xy, c.xy) for c in clips[1:])

    def test_distinct_seeds_pairwise_unequal(self):
        clips = generate_cohort(SquatParams(seed=9), 5, seed_stride=1)
        for i in range(len(clips)):
            for j in range(i + 1, len(clips)):
                same = len(clips[i]) == len(clips[j]) and np.array_equal(
                    clips[i].xy, clips[j].xy
                )
                assert not same, (i, j)

    def test_cohort_varies_tempo(self):
        clips = generate_cohort(SquatParams(seed=1, duration_frames=61), 8)
        lengths = {len(c) for c in clips}
        assert len(lengths) > 1
        assert all(abs(len(c) - 61) <= 10 for c in clips)

    def test_cohort_size_validation(self):
        with pytest.raises(ValueError):
            generate_cohort(SquatParams(), 0)


class TestResample:
    def test_lengths(self):
        seq = generate_squat(SquatParams(seed=2))
        assert len(resample(seq, 1.15)) == round(61 * 1.15)
        assert len(resample(seq, 0.85)) == round(61 * 0.85)

    def test_unit_factor_is_identity(self):
        seq = generate_squat(SquatParams(seed=2))
        out = resample(seq, 1.0)
        assert np.allclose(out.xy, seq.xy, atol=1e-12)

    def test_invalid_factor(self):
        with pytest.raises(ValueError):
            resample(generate_squat(SquatParams()), 0.0)

    def test_preserves_absent_z(self):
        out = resample(generate_squat(SquatParams(seed=3)), 1.1)
        assert np.isnan(out.z).all()


class TestMonotoneErrorResponse:
    def test_left_leg_x_raw_increases_with_stance(self):
        from mnmdtw.pipeline import _raw_scores
        from mnmdtw.pose import DEFAULT_LIMB_GROUPS, z_normalize

        gold = z_normalize(generate_squat(SquatParams(jitter_std=0.0)))
        raws = []
        for stance in (1.0, 1.2, 1.4, 1.6):
            clip = generate_squat(SquatParams(stance_width=stance, jitter_std=0.0))
            raw = _raw_scores(z_normalize(clip), gold, DEFAULT_LIMB_GROUPS)
            raws.append(raw[("left_leg", "x")])
        assert all(a < b for a, b in zip(raws, raws[1:])), raws
